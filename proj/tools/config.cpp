#include "config.hpp"

#include <cstdlib>

#include "textsignal/error.hpp"
#include "textsignal/io/csv.hpp"
#include "textsignal/io/fsutil.hpp"

namespace tsig::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string v) {
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                          (v.front() == '\'' && v.back() == '\''))) {
        return v.substr(1, v.size() - 2);
    }
    return v;
}

bool parse_flag(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw Error(ErrorKind::config, "bad boolean for '" + key + "': " + v);
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::map<std::string, std::string> values;
    std::size_t line_no = 0;
    for (const auto& raw : io::split_lines(io::read_file(path))) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::config,
                        path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        auto key = trim(line.substr(0, eq));
        auto value = unquote(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw Error(ErrorKind::config, path + ":" + std::to_string(line_no) + ": empty key");
        }
        values[key] = value;
    }
    return values;
}

PipelineConfig resolve_config(const std::map<std::string, std::string>& file_values,
                              const std::map<std::string, std::string>& overrides) {
    PipelineConfig cfg;
    if (const char* env_url = std::getenv("TEXTSIGNAL_BACKEND_URL")) {
        cfg.backend.base_url = env_url;
    }

    auto apply = [&cfg](const std::string& key, const std::string& v) {
        if (key == "backend.kind") {
            if (v == "mock") cfg.backend.kind = gateway::BackendKind::mock;
            else if (v == "remote") cfg.backend.kind = gateway::BackendKind::remote;
            else throw Error(ErrorKind::config, "backend.kind must be mock or remote");
        } else if (key == "backend.base_url") {
            cfg.backend.base_url = v;
        } else if (key == "backend.model") {
            cfg.backend.model_name = v;
        } else if (key == "backend.batch_size") {
            cfg.backend.batch_size = static_cast<int>(io::parse_long(v));
        } else if (key == "backend.timeout_ms") {
            cfg.backend.timeout = std::chrono::milliseconds(io::parse_long(v));
        } else if (key == "backend.retry_max") {
            cfg.backend.retry_max = static_cast<int>(io::parse_long(v));
        } else if (key == "backend.max_inflight") {
            cfg.backend.max_inflight = static_cast<int>(io::parse_long(v));
        } else if (key == "backend.seed") {
            cfg.backend.seed = static_cast<std::uint64_t>(io::parse_long(v));
        } else if (key == "backend.dim") {
            cfg.backend.mock_dim = static_cast<std::size_t>(io::parse_long(v));
        } else if (key == "projector.kind") {
            if (v != "reference_reducer" && v != "external_file") {
                throw Error(ErrorKind::config, "projector.kind must be reference_reducer or external_file");
            }
            cfg.projector_kind = v;
        } else if (key == "projector.seed") {
            cfg.projector_seed = static_cast<std::uint64_t>(io::parse_long(v));
        } else if (key == "projector.file5") {
            cfg.projector_file5 = v;
        } else if (key == "projector.file2") {
            cfg.projector_file2 = v;
        } else if (key == "twonn.enabled") {
            cfg.twonn_enabled = parse_flag(key, v);
        } else if (key == "twonn.sample") {
            cfg.twonn_sample = static_cast<std::size_t>(io::parse_long(v));
        } else if (key == "twonn.seed") {
            cfg.twonn_seed = static_cast<std::uint64_t>(io::parse_long(v));
        } else if (key == "kmeans.k") {
            cfg.kmeans_k = static_cast<int>(io::parse_long(v));
        } else if (key == "kmeans.seed") {
            cfg.kmeans_seed = static_cast<std::uint64_t>(io::parse_long(v));
        } else if (key == "kmeans.max_iter") {
            cfg.kmeans_max_iter = static_cast<int>(io::parse_long(v));
        } else if (key == "kmeans.tol") {
            cfg.kmeans_tol = io::parse_double(v);
        } else if (key == "kmeans.restarts") {
            cfg.kmeans_restarts = static_cast<int>(io::parse_long(v));
        } else if (key == "density.eps") {
            cfg.density_eps = io::parse_double(v);
        } else if (key == "density.min_pts") {
            cfg.density_min_pts = static_cast<int>(io::parse_long(v));
        } else if (key == "cascade.global_sigma") {
            cfg.cascade.global_sigma = io::parse_double(v);
        } else if (key == "cascade.local_sigma") {
            cfg.cascade.local_sigma = io::parse_double(v);
        } else if (key == "cascade.eps_kmeans_graph") {
            cfg.cascade.eps_kmeans_graph = io::parse_double(v);
        } else if (key == "cascade.eps_density_graph") {
            cfg.cascade.eps_density_graph = io::parse_double(v);
        } else if (key == "cascade.local_stats_population") {
            if (v == "full_region") {
                cfg.cascade.local_stats_population = cascade::LocalStatsPopulation::full_region;
            } else if (v == "g_survivors") {
                cfg.cascade.local_stats_population = cascade::LocalStatsPopulation::g_survivors;
            } else {
                throw Error(ErrorKind::config,
                            "cascade.local_stats_population must be full_region or g_survivors");
            }
        } else if (key == "region.survivor_threshold") {
            cfg.region_survivor_threshold = static_cast<std::size_t>(io::parse_long(v));
        } else if (key == "profile.z_cut") {
            cfg.profile_z_cut = io::parse_double(v);
        } else if (key == "profile.bin_width") {
            cfg.histogram_bin_width = io::parse_double(v);
        } else if (key == "centrality.anchor") {
            cfg.centrality_anchor = v;
        } else if (key == "dictionary.path") {
            cfg.dictionary_path = v;
        } else {
            throw Error(ErrorKind::config, "unknown config key '" + key + "'");
        }
    };

    for (const auto& [k, v] : file_values) apply(k, v);
    for (const auto& [k, v] : overrides) apply(k, v);
    return cfg;
}

}  // namespace tsig::cli
