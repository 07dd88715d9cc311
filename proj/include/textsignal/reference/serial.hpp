#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "textsignal/core/points.hpp"
#include "textsignal/manifold/neighbor_index.hpp"

// Serial brute-force counterparts of the indexed/parallel kernels. They are
// deliberately written as plain O(N^2) loops with no spatial index, no
// union-find, and no OpenMP, so tests can hold the fast paths against an
// independent implementation. The benchmark target compares the two.

namespace tsig::ref {

// Exhaustive k-nearest-neighbor scan, sorted by (distance, index).
std::vector<manifold::Neighbor> brute_knn(const PointMatrix& points, std::span<const double> query,
                                          std::size_t k,
                                          std::optional<std::size_t> exclude = std::nullopt);

// Edge sets of the eps-graph (strict d < eps) by full pair enumeration.
std::vector<std::pair<std::size_t, std::size_t>> brute_eps_edges(const PointMatrix& points,
                                                                 double eps);

// Connected components of the eps-graph via breadth-first search; returns
// the smallest contained index as the component id of every point.
std::vector<std::size_t> bfs_components(const PointMatrix& points, double eps);

// Member/noise bipartition by the textbook density-reachability definition.
std::vector<char> dbscan_members(const PointMatrix& points, double eps, int min_pts);

// Serial argmin-distance assignment.
std::vector<int> nearest_centroids(const PointMatrix& centroids, const PointMatrix& points);

// Scalar recomputations of the cascade passes.
std::vector<char> global_pass(const PointMatrix& y2, std::span<const char> core_member,
                              double sigma_mult, std::vector<double>* distances = nullptr);
std::vector<char> local_pass(const PointMatrix& y2, std::span<const int> region_ids,
                             double sigma_mult, std::span<const char> g_pass = {},
                             std::vector<double>* distances = nullptr);
std::vector<char> structural_pass(const PointMatrix& y2, std::span<const std::string> doc_ids,
                                  std::span<const char> survivor, double eps);

}  // namespace tsig::ref
