#pragma once

#include <span>
#include <string>
#include <vector>

#include "textsignal/core/points.hpp"

namespace tsig::partition {

struct DensityCoreLabel {
    std::string doc_id;
    bool is_core_member = false;  // false = density noise

    bool operator==(const DensityCoreLabel&) const = default;
};

// DBSCAN-style member/noise bipartition over the 2D topography. A point is
// a member iff it is density-reachable: either a core point (at least
// min_pts neighbors within eps, itself included) or within eps of one.
// Cluster identities are irrelevant downstream, so none are produced.
std::vector<DensityCoreLabel> density_core_label(const PointMatrix& points,
                                                 std::span<const std::string> doc_ids, double eps,
                                                 int min_pts);

// Flag-only variant used by the cascade.
std::vector<char> density_core_flags(const PointMatrix& points, double eps, int min_pts);

}  // namespace tsig::partition
