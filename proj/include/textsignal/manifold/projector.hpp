#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "textsignal/core/points.hpp"
#include "textsignal/core/types.hpp"

namespace tsig::manifold {

enum class ProjectorKind { external_file, reference_reducer };

// How to obtain the low-dimensional coordinates. external_file loads a
// precomputed projection (e.g. a UMAP run done elsewhere) keyed by doc_id;
// reference_reducer is the built-in deterministic fallback: centering plus
// a top-k variance-maximizing orthogonal linear projection.
struct ProjectorSpec {
    ProjectorKind kind = ProjectorKind::reference_reducer;
    int target_dims = 2;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    std::string file;  // external_file source path

    void validate() const;
};

// One projection axis for a corpus: doc ids plus an n x dims matrix.
struct Projection {
    std::size_t dims = 0;
    std::vector<std::string> doc_ids;
    PointMatrix points;

    bool operator==(const Projection&) const = default;
};

Projection project(const std::vector<EmbeddingVector>& embeddings, const ProjectorSpec& spec);

// Joins the structural (5D) and visual (2D) projections into per-document
// points; every doc must be present in both.
std::vector<ProjectedPoint> merge_projections(const Projection& z5, const Projection& y2);

}  // namespace tsig::manifold
