#include "textsignal/io/serde.hpp"

#include <nlohmann/json.hpp>

#include "textsignal/error.hpp"

using nlohmann::json;

namespace tsig::io {

namespace {

json parse_or_throw(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorKind::ingestion, std::string("malformed JSON in ") + what);
    return j;
}

}  // namespace

std::string dictionary_to_json(const PositionalDictionary& dict) {
    json dims = json::array();
    for (const auto& d : dict.dimensions) {
        dims.push_back({{"dim_id", d.dim_id},
                        {"name", d.name},
                        {"low_pole", d.low_pole},
                        {"high_pole", d.high_pole},
                        {"band_names", d.band_names}});
    }
    json j = {{"dict_id", dict.dict_id}, {"dimensions", dims}};
    if (dict.centrality_target) j["centrality_target"] = *dict.centrality_target;
    return j.dump(2) + "\n";
}

PositionalDictionary dictionary_from_json(const std::string& text) {
    json j = parse_or_throw(text, "dictionary");
    PositionalDictionary dict;
    try {
        dict.dict_id = j.at("dict_id").get<std::string>();
        for (const auto& d : j.at("dimensions")) {
            SemanticDimension dim;
            dim.dim_id = d.at("dim_id").get<std::string>();
            dim.name = d.value("name", dim.dim_id);
            dim.low_pole = d.at("low_pole").get<std::string>();
            dim.high_pole = d.at("high_pole").get<std::string>();
            auto bands = d.at("band_names");
            if (!bands.is_array() || bands.size() != 4) {
                throw Error(ErrorKind::validation,
                            "dimension '" + dim.dim_id + "' needs exactly 4 band names");
            }
            for (int b = 0; b < 4; ++b) dim.band_names[b] = bands[b].get<std::string>();
            dict.dimensions.push_back(std::move(dim));
        }
        if (j.contains("centrality_target") && !j["centrality_target"].is_null()) {
            dict.centrality_target = j["centrality_target"].get<std::string>();
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ingestion, std::string("bad dictionary JSON: ") + e.what());
    }
    dict.validate();
    return dict;
}

std::string kmeans_to_json(const partition::KMeansModel& model) {
    json centroids = json::array();
    for (std::size_t j = 0; j < model.centroids.n; ++j) {
        json row = json::array();
        for (double v : model.centroids.row(j)) row.push_back(v);
        centroids.push_back(std::move(row));
    }
    json j = {{"K", model.k},
              {"seed", model.seed},
              {"dim", model.dim},
              {"centroids", centroids},
              {"inertia", model.inertia},
              {"iterations_run", model.iterations_run}};
    return j.dump(2) + "\n";
}

partition::KMeansModel kmeans_from_json(const std::string& text) {
    json j = parse_or_throw(text, "k-means model");
    partition::KMeansModel model;
    try {
        model.k = j.at("K").get<int>();
        model.seed = j.at("seed").get<std::uint64_t>();
        model.dim = j.at("dim").get<std::size_t>();
        model.inertia = j.at("inertia").get<double>();
        model.iterations_run = j.at("iterations_run").get<int>();
        const auto& centroids = j.at("centroids");
        model.centroids = PointMatrix(centroids.size(), model.dim);
        for (std::size_t r = 0; r < centroids.size(); ++r) {
            if (centroids[r].size() != model.dim) {
                throw Error(ErrorKind::ingestion, "centroid row has wrong dimension");
            }
            for (std::size_t d = 0; d < model.dim; ++d) {
                model.centroids.row(r)[d] = centroids[r][d].get<double>();
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ingestion, std::string("bad k-means JSON: ") + e.what());
    }
    if (model.centroids.n != static_cast<std::size_t>(model.k)) {
        throw Error(ErrorKind::ingestion, "k-means model centroid count does not match K");
    }
    return model;
}

std::string cascade_report_to_json(const cascade::CascadeReport& report) {
    json survivors = json::object();
    for (const auto& [region, count] : report.per_region_survivors) {
        survivors[std::to_string(region)] = count;
    }
    json j = {{"n_total", report.n_total},
              {"n_global_outliers", report.n_global_outliers},
              {"n_local_mavericks", report.n_local_mavericks},
              {"n_structural_outliers", report.n_structural_outliers},
              {"n_unique_removed", report.n_unique_removed},
              {"removal_fraction", report.removal_fraction},
              {"per_region_survivors", survivors},
              {"density_diagnostic",
               {{"eps", report.density_diagnostic.eps},
                {"n_members", report.density_diagnostic.n_members},
                {"n_components", report.density_diagnostic.n_components},
                {"largest_component", report.density_diagnostic.largest_component}}}};
    return j.dump(2) + "\n";
}

cascade::CascadeReport cascade_report_from_json(const std::string& text) {
    json j = parse_or_throw(text, "cascade report");
    cascade::CascadeReport report;
    try {
        report.n_total = j.at("n_total").get<std::size_t>();
        report.n_global_outliers = j.at("n_global_outliers").get<std::size_t>();
        report.n_local_mavericks = j.at("n_local_mavericks").get<std::size_t>();
        report.n_structural_outliers = j.at("n_structural_outliers").get<std::size_t>();
        report.n_unique_removed = j.at("n_unique_removed").get<std::size_t>();
        report.removal_fraction = j.at("removal_fraction").get<double>();
        for (auto it = j.at("per_region_survivors").begin(); it != j.at("per_region_survivors").end();
             ++it) {
            report.per_region_survivors[std::stoi(it.key())] = it.value().get<std::size_t>();
        }
        const auto& d = j.at("density_diagnostic");
        report.density_diagnostic.eps = d.at("eps").get<double>();
        report.density_diagnostic.n_members = d.at("n_members").get<std::size_t>();
        report.density_diagnostic.n_components = d.at("n_components").get<std::size_t>();
        report.density_diagnostic.largest_component = d.at("largest_component").get<std::size_t>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ingestion, std::string("bad cascade report JSON: ") + e.what());
    }
    return report;
}

namespace {

json stats_to_json(const semantics::DimensionStats& st) {
    return {{"mean", st.mean},
            {"continuous_median", st.continuous_median},
            {"sample_std", st.sample_std},
            {"outlier_fraction", st.outlier_fraction}};
}

semantics::DimensionStats stats_from_json(const json& j) {
    semantics::DimensionStats st;
    st.mean = j.at("mean").get<double>();
    st.continuous_median = j.at("continuous_median").get<double>();
    st.sample_std = j.at("sample_std").get<double>();
    st.outlier_fraction = j.at("outlier_fraction").get<double>();
    return st;
}

}  // namespace

std::string profile_to_json(const semantics::CorpusProfile& profile) {
    json bands = json::object();
    for (const auto& [dim_id, fractions] : profile.band_fractions) bands[dim_id] = fractions;
    json stats = json::object();
    for (const auto& [dim_id, st] : profile.stats) stats[dim_id] = stats_to_json(st);
    json j = {{"dict_id", profile.dict_id},
              {"n_docs", profile.n_docs},
              {"population", profile.population},
              {"z_cut", profile.z_cut},
              {"band_fractions", bands},
              {"stats", stats}};
    if (profile.centrality_stats) j["centrality_stats"] = stats_to_json(*profile.centrality_stats);
    return j.dump(2) + "\n";
}

semantics::CorpusProfile profile_from_json(const std::string& text) {
    json j = parse_or_throw(text, "profile");
    semantics::CorpusProfile profile;
    try {
        profile.dict_id = j.at("dict_id").get<std::string>();
        profile.n_docs = j.at("n_docs").get<std::size_t>();
        profile.population = j.at("population").get<std::string>();
        profile.z_cut = j.at("z_cut").get<double>();
        for (auto it = j.at("band_fractions").begin(); it != j.at("band_fractions").end(); ++it) {
            std::array<double, 4> fr{};
            for (int b = 0; b < 4; ++b) fr[b] = it.value()[b].get<double>();
            profile.band_fractions[it.key()] = fr;
        }
        for (auto it = j.at("stats").begin(); it != j.at("stats").end(); ++it) {
            profile.stats[it.key()] = stats_from_json(it.value());
        }
        if (j.contains("centrality_stats")) {
            profile.centrality_stats = stats_from_json(j["centrality_stats"]);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ingestion, std::string("bad profile JSON: ") + e.what());
    }
    return profile;
}

std::string validation_to_json(const ValidationReport& report) {
    json j = {{"count", report.count},
              {"duplicate_ids", report.duplicate_ids},
              {"empty_text_ids", report.empty_text_ids},
              {"blank_id_count", report.blank_id_count},
              {"accepted", report.accepted()}};
    return j.dump(2) + "\n";
}

std::string twonn_to_json(const manifold::TwoNNResult& result) {
    json j = {{"dimension", result.dimension},
              {"used", result.used},
              {"dropped_duplicates", result.dropped}};
    return j.dump(2) + "\n";
}

std::string histogram_to_json(const semantics::CentralityHistogram& hist) {
    json freqs = json::object();
    for (const auto& [pop, f] : hist.frequencies) freqs[pop] = f;
    json counts = json::object();
    for (const auto& [pop, c] : hist.counts) counts[pop] = c;
    json j = {{"bin_width", hist.bin_width},
              {"n_bins", hist.n_bins},
              {"frequencies", freqs},
              {"counts", counts}};
    return j.dump(2) + "\n";
}

}  // namespace tsig::io
