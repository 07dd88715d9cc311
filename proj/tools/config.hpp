#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "textsignal/cascade/cascade.hpp"
#include "textsignal/gateway/gateway.hpp"

namespace tsig::cli {

// Everything tunable from the config file or --set overrides, with the
// defaults the pipeline ships with.
struct PipelineConfig {
    gateway::BackendConfig backend;

    std::string projector_kind = "reference_reducer";  // or external_file
    std::uint64_t projector_seed = 0;
    std::string projector_file5;
    std::string projector_file2;

    bool twonn_enabled = true;
    std::size_t twonn_sample = 5000;
    std::uint64_t twonn_seed = 0;

    int kmeans_k = 15;
    std::uint64_t kmeans_seed = 0;
    int kmeans_max_iter = 300;
    double kmeans_tol = 1e-4;
    int kmeans_restarts = 1;

    double density_eps = 0.5;
    int density_min_pts = 15;

    cascade::CascadeConfig cascade;
    std::size_t region_survivor_threshold = 20;

    double profile_z_cut = 3.0;
    double histogram_bin_width = 0.05;
    std::string centrality_anchor = gateway::kDefaultCentralityAnchor;
    std::string dictionary_path;  // empty: use <work>/dictionary.json or the built-in
};

// Key=value config file: one `key = value` pair per line, `#` comments.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies file values then overrides (later wins); unknown keys are errors.
PipelineConfig resolve_config(const std::map<std::string, std::string>& file_values,
                              const std::map<std::string, std::string>& overrides);

}  // namespace tsig::cli
