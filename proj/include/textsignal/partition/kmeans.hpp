#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "textsignal/core/points.hpp"
#include "textsignal/core/types.hpp"

namespace tsig::partition {

struct KMeansModel {
    int k = 0;
    std::uint64_t seed = 0;
    std::size_t dim = 0;
    PointMatrix centroids;  // k x dim
    double inertia = 0.0;
    int iterations_run = 0;
    std::vector<double> inertia_history;  // one entry per assignment pass
    std::vector<int> training_assignment;

    bool operator==(const KMeansModel&) const = default;
};

// Lloyd iterations with k-means++ seeding. Deterministic for a given seed;
// empty clusters are reseeded to the point farthest from its centroid.
KMeansModel kmeans_fit(const PointMatrix& points, int k, std::uint64_t seed, int max_iter = 300,
                       double tol = 1e-4);

// Independent fits with seeds seed+0 .. seed+restarts-1; lowest inertia wins.
KMeansModel kmeans_fit_best(const PointMatrix& points, int k, std::uint64_t seed, int restarts,
                            int max_iter = 300, double tol = 1e-4);

// Nearest-centroid ids, ties broken toward the lowest region id.
std::vector<int> nearest_centroids(const PointMatrix& centroids, const PointMatrix& points);

std::vector<RegionAssignment> kmeans_assign(const KMeansModel& model, const PointMatrix& points,
                                            std::span<const std::string> doc_ids);

}  // namespace tsig::partition
