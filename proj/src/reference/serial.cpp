#include "textsignal/reference/serial.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace tsig::ref {

std::vector<manifold::Neighbor> brute_knn(const PointMatrix& points, std::span<const double> query,
                                          std::size_t k, std::optional<std::size_t> exclude) {
    std::vector<manifold::Neighbor> all;
    all.reserve(points.n);
    for (std::size_t i = 0; i < points.n; ++i) {
        if (exclude && *exclude == i) continue;
        all.push_back({i, std::sqrt(squared_distance(query, points.row(i)))});
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.index < b.index;
    });
    if (all.size() > k) all.resize(k);
    return all;
}

std::vector<std::pair<std::size_t, std::size_t>> brute_eps_edges(const PointMatrix& points,
                                                                 double eps) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    double eps2 = eps * eps;
    for (std::size_t i = 0; i < points.n; ++i) {
        for (std::size_t j = i + 1; j < points.n; ++j) {
            if (squared_distance(points.row(i), points.row(j)) < eps2) {
                edges.emplace_back(i, j);
            }
        }
    }
    return edges;
}

std::vector<std::size_t> bfs_components(const PointMatrix& points, double eps) {
    double eps2 = eps * eps;
    std::vector<std::size_t> component(points.n, points.n);
    for (std::size_t start = 0; start < points.n; ++start) {
        if (component[start] != points.n) continue;
        component[start] = start;
        std::deque<std::size_t> queue{start};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v = 0; v < points.n; ++v) {
                if (component[v] != points.n) continue;
                if (squared_distance(points.row(u), points.row(v)) < eps2) {
                    component[v] = start;
                    queue.push_back(v);
                }
            }
        }
    }
    return component;
}

std::vector<char> dbscan_members(const PointMatrix& points, double eps, int min_pts) {
    double eps2 = eps * eps;
    std::vector<char> core(points.n, 0);
    for (std::size_t i = 0; i < points.n; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < points.n; ++j) {
            if (squared_distance(points.row(i), points.row(j)) <= eps2) ++count;
        }
        core[i] = count >= static_cast<std::size_t>(min_pts);
    }
    std::vector<char> member(points.n, 0);
    for (std::size_t i = 0; i < points.n; ++i) {
        if (core[i]) {
            member[i] = 1;
            continue;
        }
        for (std::size_t j = 0; j < points.n; ++j) {
            if (core[j] && squared_distance(points.row(i), points.row(j)) <= eps2) {
                member[i] = 1;
                break;
            }
        }
    }
    return member;
}

std::vector<int> nearest_centroids(const PointMatrix& centroids, const PointMatrix& points) {
    std::vector<int> assign(points.n, 0);
    for (std::size_t i = 0; i < points.n; ++i) {
        double best = squared_distance(points.row(i), centroids.row(0));
        int arg = 0;
        for (std::size_t j = 1; j < centroids.n; ++j) {
            double d2 = squared_distance(points.row(i), centroids.row(j));
            if (d2 < best) {
                best = d2;
                arg = static_cast<int>(j);
            }
        }
        assign[i] = arg;
    }
    return assign;
}

namespace {

double series_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double series_sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<char> global_pass(const PointMatrix& y2, std::span<const char> core_member,
                              double sigma_mult, std::vector<double>* distances) {
    double cx = 0.0, cy = 0.0;
    std::size_t n_core = 0;
    for (std::size_t i = 0; i < y2.n; ++i) {
        if (core_member[i]) {
            cx += y2.row(i)[0];
            cy += y2.row(i)[1];
            ++n_core;
        }
    }
    cx /= static_cast<double>(n_core);
    cy /= static_cast<double>(n_core);

    std::vector<double> d(y2.n);
    for (std::size_t i = 0; i < y2.n; ++i) {
        double dx = y2.row(i)[0] - cx;
        double dy = y2.row(i)[1] - cy;
        d[i] = std::sqrt(dx * dx + dy * dy);
    }
    double mu = series_mean(d);
    double cut = mu + sigma_mult * series_sample_std(d, mu);
    std::vector<char> pass(y2.n);
    for (std::size_t i = 0; i < y2.n; ++i) pass[i] = d[i] <= cut;
    if (distances) *distances = std::move(d);
    return pass;
}

std::vector<char> local_pass(const PointMatrix& y2, std::span<const int> region_ids,
                             double sigma_mult, std::span<const char> g_pass,
                             std::vector<double>* distances) {
    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < y2.n; ++i) members[region_ids[i]].push_back(i);

    std::vector<char> pass(y2.n, 1);
    std::vector<double> d(y2.n, 0.0);
    for (const auto& [region, idxs] : members) {
        std::vector<std::size_t> pop;
        if (!g_pass.empty()) {
            for (std::size_t i : idxs) {
                if (g_pass[i]) pop.push_back(i);
            }
            if (pop.empty()) pop = idxs;
        } else {
            pop = idxs;
        }
        double cx = 0.0, cy = 0.0;
        for (std::size_t i : pop) {
            cx += y2.row(i)[0];
            cy += y2.row(i)[1];
        }
        cx /= static_cast<double>(pop.size());
        cy /= static_cast<double>(pop.size());
        for (std::size_t i : idxs) {
            double dx = y2.row(i)[0] - cx;
            double dy = y2.row(i)[1] - cy;
            d[i] = std::sqrt(dx * dx + dy * dy);
        }
        if (pop.size() <= 2) continue;
        std::vector<double> pop_d;
        for (std::size_t i : pop) pop_d.push_back(d[i]);
        double mu = series_mean(pop_d);
        double cut = mu + sigma_mult * series_sample_std(pop_d, mu);
        for (std::size_t i : idxs) pass[i] = d[i] <= cut;
    }
    if (distances) *distances = std::move(d);
    return pass;
}

std::vector<char> structural_pass(const PointMatrix& y2, std::span<const std::string> doc_ids,
                                  std::span<const char> survivor, double eps) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < y2.n; ++i) {
        if (survivor[i]) keep.push_back(i);
    }
    PointMatrix sub(keep.size(), y2.dim);
    for (std::size_t s = 0; s < keep.size(); ++s) {
        auto src = y2.row(keep[s]);
        std::copy(src.begin(), src.end(), sub.row(s).begin());
    }
    auto component = bfs_components(sub, eps);

    std::map<std::size_t, std::pair<std::size_t, std::string>> comps;
    for (std::size_t s = 0; s < keep.size(); ++s) {
        auto& entry = comps[component[s]];
        entry.first += 1;
        const std::string& id = doc_ids[keep[s]];
        if (entry.second.empty() || id < entry.second) entry.second = id;
    }
    std::size_t winner = 0;
    std::size_t winner_size = 0;
    std::string winner_id;
    for (const auto& [root, entry] : comps) {
        if (entry.first > winner_size || (entry.first == winner_size && entry.second < winner_id)) {
            winner = root;
            winner_size = entry.first;
            winner_id = entry.second;
        }
    }
    std::vector<char> pass(y2.n, 0);
    for (std::size_t s = 0; s < keep.size(); ++s) pass[keep[s]] = component[s] == winner;
    return pass;
}

}  // namespace tsig::ref
