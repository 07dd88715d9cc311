#pragma once

#include <span>
#include <vector>

#include "textsignal/core/points.hpp"

namespace tsig::manifold {

struct TwoNNResult {
    double dimension = 0.0;
    std::vector<double> mu;   // r2/r1 per retained point, in point order
    std::size_t used = 0;     // points contributing to the estimate
    std::size_t dropped = 0;  // duplicates (first-neighbor distance zero)
};

// Maximum-likelihood intrinsic-dimension estimate from the ratio of each
// point's second to first nearest-neighbor distance:
//   d = N' / sum_i ln(r_{i,2} / r_{i,1})
// Points whose nearest neighbor coincides with them are dropped.
TwoNNResult twonn_estimate(const PointMatrix& points);

double twonn_from_ratios(std::span<const double> mu);

}  // namespace tsig::manifold
