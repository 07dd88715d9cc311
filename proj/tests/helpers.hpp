#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "textsignal/core/points.hpp"
#include "textsignal/core/types.hpp"
#include "textsignal/util/hash.hpp"

namespace tsig::test {

inline DocumentRecord make_doc(std::string id, std::string title = "title",
                               std::string description = "description") {
    DocumentRecord d;
    d.doc_id = std::move(id);
    d.title = std::move(title);
    d.description = std::move(description);
    return d;
}

inline std::vector<std::string> index_ids(std::size_t n, const std::string& prefix = "doc-") {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%06zu", i);
        ids.push_back(prefix + buf);
    }
    return ids;
}

inline PointMatrix uniform_box(std::size_t n, std::size_t dim, util::SplitMix64& rng,
                               double lo = 0.0, double hi = 1.0) {
    PointMatrix pts(n, dim);
    for (double& v : pts.data) v = rng.next_uniform(lo, hi);
    return pts;
}

inline PointMatrix gaussian_blob(std::size_t n, std::size_t dim, const std::vector<double>& center,
                                 double stddev, util::SplitMix64& rng) {
    PointMatrix pts(n, dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            pts.row(i)[d] = center[d] + stddev * rng.next_gaussian();
        }
    }
    return pts;
}

inline PointMatrix concat_points(const std::vector<PointMatrix>& parts) {
    PointMatrix out;
    out.dim = parts.empty() ? 0 : parts.front().dim;
    for (const auto& p : parts) {
        out.n += p.n;
        out.data.insert(out.data.end(), p.data.begin(), p.data.end());
    }
    return out;
}

// Adjusted Rand index between two labelings.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    auto comb2 = [](double x) { return x * (x - 1.0) / 2.0; };
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> row, col;
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1.0;
        row[a[i]] += 1.0;
        col[b[i]] += 1.0;
    }
    double sum_joint = 0.0, sum_row = 0.0, sum_col = 0.0;
    for (const auto& [k, v] : joint) sum_joint += comb2(v);
    for (const auto& [k, v] : row) sum_row += comb2(v);
    for (const auto& [k, v] : col) sum_col += comb2(v);
    double total = comb2(static_cast<double>(a.size()));
    double expected = sum_row * sum_col / total;
    double max_index = (sum_row + sum_col) / 2.0;
    if (max_index == expected) return 1.0;
    return (sum_joint - expected) / (max_index - expected);
}

}  // namespace tsig::test
