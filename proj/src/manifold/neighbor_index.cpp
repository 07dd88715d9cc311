#include "textsignal/manifold/neighbor_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "textsignal/error.hpp"

namespace tsig::manifold {

namespace {

constexpr std::size_t kNoExclude = std::numeric_limits<std::size_t>::max();
constexpr std::uint32_t kLeafSize = 16;

// Max-heap ordering on (distance^2, index): the lexicographically largest
// candidate sits on top and is evicted first, which makes the final k-set
// identical to a sorted exhaustive scan, ties included.
struct HeapLess {
    bool operator()(const Neighbor& a, const Neighbor& b) const {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.index < b.index;
    }
};

void heap_offer(std::vector<Neighbor>& heap, std::size_t k, std::size_t idx, double d2) {
    Neighbor cand{idx, d2};
    if (heap.size() < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end(), HeapLess{});
    } else if (HeapLess{}(cand, heap.front())) {
        std::pop_heap(heap.begin(), heap.end(), HeapLess{});
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end(), HeapLess{});
    }
}

std::int64_t pack_cell(std::int64_t cx, std::int64_t cy) {
    return (cx << 32) | (cy & 0xffffffffLL);
}

}  // namespace

NeighborIndex NeighborIndex::build(PointMatrix pts) {
    NeighborIndex index;
    index.pts_ = std::move(pts);
    if (index.pts_.n == 0) return index;
    if (index.pts_.dim == 0) throw Error(ErrorKind::parameter, "neighbor index needs dim >= 1");

    if (index.pts_.dim == 2) {
        index.use_grid_ = true;
        index.build_grid();
    } else {
        index.order_.resize(index.pts_.n);
        for (std::uint32_t i = 0; i < index.pts_.n; ++i) index.order_[i] = i;
        index.root_ = index.build_kd(0, static_cast<std::uint32_t>(index.pts_.n));
    }
    return index;
}

// ---------------------------------------------------------------------------
// 2D uniform grid

std::int64_t NeighborIndex::cell_of(double v, int axis) const {
    return static_cast<std::int64_t>(std::floor((v - grid_min_[axis]) / cell_size_));
}

void NeighborIndex::build_grid() {
    double lo[2] = {pts_.row(0)[0], pts_.row(0)[1]};
    double hi[2] = {lo[0], lo[1]};
    for (std::size_t i = 1; i < pts_.n; ++i) {
        auto p = pts_.row(i);
        for (int a = 0; a < 2; ++a) {
            lo[a] = std::min(lo[a], p[a]);
            hi[a] = std::max(hi[a], p[a]);
        }
    }
    grid_min_[0] = lo[0];
    grid_min_[1] = lo[1];
    double extent = std::max(hi[0] - lo[0], hi[1] - lo[1]);
    double cells_per_axis = std::max(1.0, std::floor(std::sqrt(static_cast<double>(pts_.n))));
    cell_size_ = extent > 0.0 ? extent / cells_per_axis : 1.0;

    for (std::size_t i = 0; i < pts_.n; ++i) {
        auto p = pts_.row(i);
        std::int64_t cx = cell_of(p[0], 0);
        std::int64_t cy = cell_of(p[1], 1);
        grid_span_[0] = std::max(grid_span_[0], cx);
        grid_span_[1] = std::max(grid_span_[1], cy);
        cells_[pack_cell(cx, cy)].push_back(static_cast<std::uint32_t>(i));
    }
}

void NeighborIndex::grid_knn(std::span<const double> q, std::size_t k, std::size_t exclude,
                             std::vector<Neighbor>& heap) const {
    std::int64_t qcx = cell_of(q[0], 0);
    std::int64_t qcy = cell_of(q[1], 1);
    std::int64_t ring_max = std::max({qcx, grid_span_[0] - qcx, qcy, grid_span_[1] - qcy,
                                      std::int64_t{0}});

    auto scan_cell = [&](std::int64_t cx, std::int64_t cy) {
        if (cx < 0 || cy < 0 || cx > grid_span_[0] || cy > grid_span_[1]) return;
        auto it = cells_.find(pack_cell(cx, cy));
        if (it == cells_.end()) return;
        for (std::uint32_t idx : it->second) {
            if (idx == exclude) continue;
            heap_offer(heap, k, idx, squared_distance(q, pts_.row(idx)));
        }
    };

    for (std::int64_t ring = 0; ring <= ring_max; ++ring) {
        if (heap.size() == k && ring > 0) {
            double bound = static_cast<double>(ring - 1) * cell_size_;
            if (bound * bound > heap.front().dist) break;
        }
        if (ring == 0) {
            scan_cell(qcx, qcy);
            continue;
        }
        for (std::int64_t cx = qcx - ring; cx <= qcx + ring; ++cx) {
            scan_cell(cx, qcy - ring);
            scan_cell(cx, qcy + ring);
        }
        for (std::int64_t cy = qcy - ring + 1; cy <= qcy + ring - 1; ++cy) {
            scan_cell(qcx - ring, cy);
            scan_cell(qcx + ring, cy);
        }
    }
}

void NeighborIndex::grid_radius(std::span<const double> q, double r, bool strict,
                                std::vector<std::size_t>& out) const {
    double r2 = r * r;
    std::int64_t cx0 = std::max<std::int64_t>(0, cell_of(q[0] - r, 0));
    std::int64_t cx1 = std::min(grid_span_[0], cell_of(q[0] + r, 0));
    std::int64_t cy0 = std::max<std::int64_t>(0, cell_of(q[1] - r, 1));
    std::int64_t cy1 = std::min(grid_span_[1], cell_of(q[1] + r, 1));
    for (std::int64_t cx = cx0; cx <= cx1; ++cx) {
        for (std::int64_t cy = cy0; cy <= cy1; ++cy) {
            auto it = cells_.find(pack_cell(cx, cy));
            if (it == cells_.end()) continue;
            for (std::uint32_t idx : it->second) {
                double d2 = squared_distance(q, pts_.row(idx));
                if (strict ? d2 < r2 : d2 <= r2) out.push_back(idx);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// k-d tree

std::int32_t NeighborIndex::build_kd(std::uint32_t begin, std::uint32_t end) {
    KdNode node;
    node.begin = begin;
    node.end = end;

    if (end - begin > kLeafSize) {
        std::size_t dim = pts_.dim;
        std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
        std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
        for (std::uint32_t i = begin; i < end; ++i) {
            auto p = pts_.row(order_[i]);
            for (std::size_t a = 0; a < dim; ++a) {
                lo[a] = std::min(lo[a], p[a]);
                hi[a] = std::max(hi[a], p[a]);
            }
        }
        int axis = 0;
        double best_extent = -1.0;
        for (std::size_t a = 0; a < dim; ++a) {
            if (hi[a] - lo[a] > best_extent) {
                best_extent = hi[a] - lo[a];
                axis = static_cast<int>(a);
            }
        }
        if (best_extent > 0.0) {
            std::uint32_t mid = begin + (end - begin) / 2;
            std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                             [&](std::uint32_t a, std::uint32_t b) {
                                 return pts_.row(a)[axis] < pts_.row(b)[axis];
                             });
            node.axis = axis;
            node.split = pts_.row(order_[mid])[axis];
            std::int32_t id = static_cast<std::int32_t>(nodes_.size());
            nodes_.push_back(node);
            std::int32_t left = build_kd(begin, mid);
            std::int32_t right = build_kd(mid, end);
            nodes_[id].left = left;
            nodes_[id].right = right;
            return id;
        }
        // zero extent on every axis: all points identical, keep as leaf
    }
    std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(node);
    return id;
}

void NeighborIndex::kd_knn(std::int32_t node_id, std::span<const double> q, std::size_t k,
                           std::size_t exclude, std::vector<Neighbor>& heap) const {
    const KdNode& node = nodes_[node_id];
    if (node.axis < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            std::uint32_t idx = order_[i];
            if (idx == exclude) continue;
            heap_offer(heap, k, idx, squared_distance(q, pts_.row(idx)));
        }
        return;
    }
    double gap = q[node.axis] - node.split;
    std::int32_t near = gap <= 0.0 ? node.left : node.right;
    std::int32_t far = gap <= 0.0 ? node.right : node.left;
    kd_knn(near, q, k, exclude, heap);
    // <= keeps ties reachable: a far-side point at exactly the current worst
    // distance but smaller index must still be able to displace it.
    if (heap.size() < k || gap * gap <= heap.front().dist) {
        kd_knn(far, q, k, exclude, heap);
    }
}

void NeighborIndex::kd_radius(std::int32_t node_id, std::span<const double> q, double r2,
                              bool strict, std::vector<std::size_t>& out) const {
    const KdNode& node = nodes_[node_id];
    if (node.axis < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            std::uint32_t idx = order_[i];
            double d2 = squared_distance(q, pts_.row(idx));
            if (strict ? d2 < r2 : d2 <= r2) out.push_back(idx);
        }
        return;
    }
    double gap = q[node.axis] - node.split;
    std::int32_t near = gap <= 0.0 ? node.left : node.right;
    std::int32_t far = gap <= 0.0 ? node.right : node.left;
    kd_radius(near, q, r2, strict, out);
    if (gap * gap <= r2) kd_radius(far, q, r2, strict, out);
}

// ---------------------------------------------------------------------------
// public queries

std::vector<Neighbor> NeighborIndex::knn_impl(std::span<const double> query, std::size_t k,
                                              std::size_t exclude) const {
    if (pts_.n == 0) throw Error(ErrorKind::parameter, "neighbor index is empty");
    if (k == 0) throw Error(ErrorKind::parameter, "k must be positive");
    if (query.size() != pts_.dim) throw Error(ErrorKind::parameter, "query dimension mismatch");

    std::vector<Neighbor> heap;
    heap.reserve(std::min(k, pts_.n));
    if (use_grid_) {
        grid_knn(query, k, exclude, heap);
    } else {
        kd_knn(root_, query, k, exclude, heap);
    }
    std::sort(heap.begin(), heap.end(), HeapLess{});
    for (auto& nb : heap) nb.dist = std::sqrt(nb.dist);
    return heap;
}

std::vector<Neighbor> NeighborIndex::knn_point(std::span<const double> query, std::size_t k) const {
    return knn_impl(query, k, kNoExclude);
}

std::vector<Neighbor> NeighborIndex::knn_member(std::size_t i, std::size_t k) const {
    if (i >= pts_.n) throw Error(ErrorKind::parameter, "member index out of range");
    return knn_impl(pts_.row(i), k, i);
}

void NeighborIndex::radius_impl(std::span<const double> query, double r, bool strict,
                                std::vector<std::size_t>& out) const {
    if (pts_.n == 0) throw Error(ErrorKind::parameter, "neighbor index is empty");
    if (r < 0.0) throw Error(ErrorKind::parameter, "radius must be nonnegative");
    if (query.size() != pts_.dim) throw Error(ErrorKind::parameter, "query dimension mismatch");
    if (use_grid_) {
        grid_radius(query, r, strict, out);
    } else {
        kd_radius(root_, query, r * r, strict, out);
    }
    std::sort(out.begin(), out.end());
}

std::vector<std::size_t> NeighborIndex::radius_point(std::span<const double> query, double r,
                                                     bool strict) const {
    std::vector<std::size_t> out;
    radius_impl(query, r, strict, out);
    return out;
}

std::vector<std::size_t> NeighborIndex::radius_member(std::size_t i, double r, bool strict,
                                                      bool include_self) const {
    if (i >= pts_.n) throw Error(ErrorKind::parameter, "member index out of range");
    std::vector<std::size_t> out;
    radius_impl(pts_.row(i), r, strict, out);
    if (!include_self) {
        out.erase(std::remove(out.begin(), out.end(), i), out.end());
    }
    return out;
}

}  // namespace tsig::manifold
