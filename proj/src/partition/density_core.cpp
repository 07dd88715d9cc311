#include "textsignal/partition/density_core.hpp"

#include "textsignal/error.hpp"
#include "textsignal/manifold/neighbor_index.hpp"

namespace tsig::partition {

std::vector<char> density_core_flags(const PointMatrix& points, double eps, int min_pts) {
    if (eps <= 0.0) throw Error(ErrorKind::parameter, "eps must be > 0");
    if (min_pts < 1) throw Error(ErrorKind::parameter, "min_pts must be >= 1");
    if (points.n == 0) return {};

    auto index = manifold::NeighborIndex::build(points);

    std::vector<char> core(points.n, 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < static_cast<long>(points.n); ++i) {
        auto nbs = index.radius_member(static_cast<std::size_t>(i), eps, false, true);
        core[i] = nbs.size() >= static_cast<std::size_t>(min_pts);
    }

    std::vector<char> member = core;
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < static_cast<long>(points.n); ++i) {
        if (member[i]) continue;
        for (std::size_t nb : index.radius_member(static_cast<std::size_t>(i), eps, false, false)) {
            if (core[nb]) {
                member[i] = 1;
                break;
            }
        }
    }
    return member;
}

std::vector<DensityCoreLabel> density_core_label(const PointMatrix& points,
                                                 std::span<const std::string> doc_ids, double eps,
                                                 int min_pts) {
    if (doc_ids.size() != points.n) {
        throw Error(ErrorKind::parameter, "doc_ids and points disagree on count");
    }
    auto member = density_core_flags(points, eps, min_pts);
    std::vector<DensityCoreLabel> out;
    out.reserve(points.n);
    for (std::size_t i = 0; i < points.n; ++i) {
        out.push_back({doc_ids[i], member[i] != 0});
    }
    return out;
}

}  // namespace tsig::partition
