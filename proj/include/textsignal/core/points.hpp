#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tsig {

// Dense row-major matrix of point coordinates. The workhorse container for
// every geometric kernel; rows are documents, columns are coordinates.
struct PointMatrix {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<double> data;  // n * dim, row-major

    PointMatrix() = default;
    PointMatrix(std::size_t n_, std::size_t dim_) : n(n_), dim(dim_), data(n_ * dim_, 0.0) {}

    std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
    std::span<double> row(std::size_t i) { return {data.data() + i * dim, dim}; }

    bool operator==(const PointMatrix&) const = default;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

}  // namespace tsig
