#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "textsignal/core/points.hpp"

namespace tsig::manifold {

struct Neighbor {
    std::size_t index = 0;
    double dist = 0.0;

    bool operator==(const Neighbor&) const = default;
};

// Exact nearest-neighbor index: uniform grid hashing for 2D point sets,
// k-d tree for anything else. Results are fully deterministic; equal
// distances are ordered by ascending point index.
class NeighborIndex {
public:
    static NeighborIndex build(PointMatrix pts);

    std::size_t size() const { return pts_.n; }
    std::size_t dim() const { return pts_.dim; }
    const PointMatrix& points() const { return pts_; }

    // k nearest to an arbitrary query location; exactly min(k, N) results.
    std::vector<Neighbor> knn_point(std::span<const double> query, std::size_t k) const;

    // k nearest to member i, excluding i itself; min(k, N-1) results.
    std::vector<Neighbor> knn_member(std::size_t i, std::size_t k) const;

    // All members within radius r of the query (strict: d < r, else d <= r),
    // sorted by ascending index.
    std::vector<std::size_t> radius_point(std::span<const double> query, double r, bool strict) const;
    std::vector<std::size_t> radius_member(std::size_t i, double r, bool strict,
                                           bool include_self) const;

private:
    std::vector<Neighbor> knn_impl(std::span<const double> query, std::size_t k,
                                   std::size_t exclude) const;
    void radius_impl(std::span<const double> query, double r, bool strict,
                     std::vector<std::size_t>& out) const;

    // grid (2D)
    std::int64_t cell_of(double v, int axis) const;
    void build_grid();
    void grid_knn(std::span<const double> q, std::size_t k, std::size_t exclude,
                  std::vector<Neighbor>& heap) const;
    void grid_radius(std::span<const double> q, double r, bool strict,
                     std::vector<std::size_t>& out) const;

    // k-d tree (any dimension)
    struct KdNode {
        int axis = -1;         // -1 marks a leaf
        double split = 0.0;
        std::int32_t left = -1, right = -1;
        std::uint32_t begin = 0, end = 0;  // leaf range into order_
    };
    std::int32_t build_kd(std::uint32_t begin, std::uint32_t end);
    void kd_knn(std::int32_t node, std::span<const double> q, std::size_t k, std::size_t exclude,
                std::vector<Neighbor>& heap) const;
    void kd_radius(std::int32_t node, std::span<const double> q, double r2, bool strict,
                   std::vector<std::size_t>& out) const;

    PointMatrix pts_;
    bool use_grid_ = false;

    double grid_min_[2] = {0.0, 0.0};
    double cell_size_ = 1.0;
    std::int64_t grid_span_[2] = {0, 0};  // max valid cell index per axis
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells_;

    std::vector<KdNode> nodes_;
    std::vector<std::uint32_t> order_;
    std::int32_t root_ = -1;
};

}  // namespace tsig::manifold
