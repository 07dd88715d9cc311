#include "textsignal/manifold/twonn.hpp"

#include <cmath>

#include "textsignal/error.hpp"
#include "textsignal/manifold/neighbor_index.hpp"

namespace tsig::manifold {

double twonn_from_ratios(std::span<const double> mu) {
    if (mu.empty()) throw Error(ErrorKind::data, "no neighbor ratios");
    double log_sum = 0.0;
    for (double m : mu) {
        if (!(m >= 1.0)) throw Error(ErrorKind::data, "neighbor ratio below 1");
        log_sum += std::log(m);
    }
    if (log_sum <= 0.0) {
        throw Error(ErrorKind::data, "degenerate neighbor ratios (all points equidistant)");
    }
    return static_cast<double>(mu.size()) / log_sum;
}

TwoNNResult twonn_estimate(const PointMatrix& points) {
    if (points.n < 10) {
        throw Error(ErrorKind::data, "TwoNN needs at least 10 points, got " + std::to_string(points.n));
    }
    auto index = NeighborIndex::build(points);

    std::vector<double> ratios(points.n, -1.0);  // -1 marks a dropped point
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < static_cast<long>(points.n); ++i) {
        auto nn = index.knn_member(static_cast<std::size_t>(i), 2);
        if (nn.size() == 2 && nn[0].dist > 0.0) {
            ratios[i] = nn[1].dist / nn[0].dist;
        }
    }

    TwoNNResult result;
    result.mu.reserve(points.n);
    for (double r : ratios) {
        if (r < 0.0) {
            ++result.dropped;
        } else {
            result.mu.push_back(r);
        }
    }
    result.used = result.mu.size();
    if (result.used < 10) {
        throw Error(ErrorKind::data, "TwoNN has only " + std::to_string(result.used) +
                                         " usable points after duplicate filtering");
    }
    result.dimension = twonn_from_ratios(result.mu);
    return result;
}

}  // namespace tsig::manifold
