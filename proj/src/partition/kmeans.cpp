#include "textsignal/partition/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "textsignal/error.hpp"
#include "textsignal/util/hash.hpp"

namespace tsig::partition {

namespace {

// Squared distance of every point to its nearest of the chosen centroids,
// refreshed incrementally as k-means++ adds centroids.
void refresh_min_d2(const PointMatrix& pts, std::span<const double> new_centroid,
                    std::vector<double>& min_d2) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(pts.n); ++i) {
        double d2 = squared_distance(pts.row(i), new_centroid);
        if (d2 < min_d2[i]) min_d2[i] = d2;
    }
}

PointMatrix init_plus_plus(const PointMatrix& pts, int k, std::uint64_t seed) {
    util::SplitMix64 rng(util::mix64(seed ^ 0x6b6d65616e732b2bULL));
    PointMatrix centroids(k, pts.dim);
    std::vector<char> chosen(pts.n, 0);

    std::size_t first = static_cast<std::size_t>(rng.next_below(pts.n));
    auto row0 = pts.row(first);
    std::copy(row0.begin(), row0.end(), centroids.row(0).begin());
    chosen[first] = 1;

    std::vector<double> min_d2(pts.n, std::numeric_limits<double>::infinity());
    refresh_min_d2(pts, centroids.row(0), min_d2);

    for (int j = 1; j < k; ++j) {
        double total = 0.0;
        for (std::size_t i = 0; i < pts.n; ++i) total += min_d2[i];

        std::size_t pick = pts.n;
        if (total > 0.0) {
            double u = rng.next_unit() * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < pts.n; ++i) {
                cum += min_d2[i];
                if (cum > u) {
                    pick = i;
                    break;
                }
            }
            if (pick == pts.n) {  // numeric tail: fall back to the last positive mass
                for (std::size_t i = pts.n; i-- > 0;) {
                    if (min_d2[i] > 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
        }
        if (pick == pts.n) {  // all remaining mass zero: duplicates of chosen points
            for (std::size_t i = 0; i < pts.n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
            if (pick == pts.n) pick = 0;
        }
        chosen[pick] = 1;
        auto src = pts.row(pick);
        std::copy(src.begin(), src.end(), centroids.row(j).begin());
        refresh_min_d2(pts, centroids.row(j), min_d2);
    }
    return centroids;
}

double assignment_pass(const PointMatrix& pts, const PointMatrix& centroids,
                       std::vector<int>& assign) {
    std::vector<double> best_d2(pts.n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(pts.n); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t j = 0; j < centroids.n; ++j) {
            double d2 = squared_distance(pts.row(i), centroids.row(j));
            if (d2 < best) {
                best = d2;
                arg = static_cast<int>(j);
            }
        }
        assign[i] = arg;
        best_d2[i] = best;
    }
    double inertia = 0.0;  // serial fold keeps the sum bit-stable
    for (double d : best_d2) inertia += d;
    return inertia;
}

}  // namespace

std::vector<int> nearest_centroids(const PointMatrix& centroids, const PointMatrix& points) {
    if (centroids.dim != points.dim) {
        throw Error(ErrorKind::parameter, "point dimension " + std::to_string(points.dim) +
                                              " does not match centroid dimension " +
                                              std::to_string(centroids.dim));
    }
    std::vector<int> assign(points.n, 0);
    assignment_pass(points, centroids, assign);
    return assign;
}

KMeansModel kmeans_fit(const PointMatrix& points, int k, std::uint64_t seed, int max_iter,
                       double tol) {
    if (k <= 0) throw Error(ErrorKind::parameter, "K must be positive");
    if (points.n < static_cast<std::size_t>(k)) {
        throw Error(ErrorKind::parameter, "need at least K=" + std::to_string(k) + " points, got " +
                                              std::to_string(points.n));
    }
    if (max_iter < 1) throw Error(ErrorKind::parameter, "max_iter must be >= 1");
    for (double v : points.data) {
        if (!std::isfinite(v)) throw Error(ErrorKind::data, "non-finite training point");
    }

    KMeansModel model;
    model.k = k;
    model.seed = seed;
    model.dim = points.dim;
    model.centroids = init_plus_plus(points, k, seed);
    model.training_assignment.assign(points.n, 0);

    double inertia = assignment_pass(points, model.centroids, model.training_assignment);
    model.inertia_history.push_back(inertia);

    std::vector<double> sums(static_cast<std::size_t>(k) * points.dim);
    std::vector<std::size_t> counts(k);
    for (int iter = 1; iter <= max_iter; ++iter) {
        // update step
        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < points.n; ++i) {
            int c = model.training_assignment[i];
            auto p = points.row(i);
            for (std::size_t d = 0; d < points.dim; ++d) sums[c * points.dim + d] += p[d];
            ++counts[c];
        }
        PointMatrix updated(k, points.dim);
        for (int j = 0; j < k; ++j) {
            if (counts[j] > 0) {
                for (std::size_t d = 0; d < points.dim; ++d) {
                    updated.row(j)[d] = sums[j * points.dim + d] / static_cast<double>(counts[j]);
                }
            } else {
                std::copy(model.centroids.row(j).begin(), model.centroids.row(j).end(),
                          updated.row(j).begin());
            }
        }

        // reseed empty clusters to the currently worst-fit points
        std::vector<char> used(points.n, 0);
        for (int j = 0; j < k; ++j) {
            if (counts[j] > 0) continue;
            double worst = -1.0;
            std::size_t arg = points.n;
            for (std::size_t i = 0; i < points.n; ++i) {
                if (used[i]) continue;
                double d2 = squared_distance(points.row(i), updated.row(model.training_assignment[i]));
                if (d2 > worst) {
                    worst = d2;
                    arg = i;
                }
            }
            if (arg < points.n) {
                used[arg] = 1;
                auto src = points.row(arg);
                std::copy(src.begin(), src.end(), updated.row(j).begin());
            }
        }

        double shift = 0.0;
        for (int j = 0; j < k; ++j) {
            shift = std::max(shift, std::sqrt(squared_distance(model.centroids.row(j), updated.row(j))));
        }
        model.centroids = std::move(updated);

        inertia = assignment_pass(points, model.centroids, model.training_assignment);
        model.inertia_history.push_back(inertia);
        model.iterations_run = iter;
        if (shift < tol) break;
    }

    model.inertia = inertia;
    return model;
}

KMeansModel kmeans_fit_best(const PointMatrix& points, int k, std::uint64_t seed, int restarts,
                            int max_iter, double tol) {
    if (restarts < 1) throw Error(ErrorKind::parameter, "restarts must be >= 1");
    KMeansModel best;
    for (int r = 0; r < restarts; ++r) {
        KMeansModel m = kmeans_fit(points, k, seed + static_cast<std::uint64_t>(r), max_iter, tol);
        if (r == 0 || m.inertia < best.inertia) best = std::move(m);
    }
    return best;
}

std::vector<RegionAssignment> kmeans_assign(const KMeansModel& model, const PointMatrix& points,
                                            std::span<const std::string> doc_ids) {
    if (doc_ids.size() != points.n) {
        throw Error(ErrorKind::parameter, "doc_ids and points disagree on count");
    }
    auto ids = nearest_centroids(model.centroids, points);
    std::vector<RegionAssignment> out;
    out.reserve(points.n);
    for (std::size_t i = 0; i < points.n; ++i) {
        out.push_back({doc_ids[i], ids[i], false});
    }
    return out;
}

}  // namespace tsig::partition
