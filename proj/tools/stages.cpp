#include "stages.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "manifest.hpp"
#include "textsignal/core/validate.hpp"
#include "textsignal/error.hpp"
#include "textsignal/gateway/gateway.hpp"
#include "textsignal/io/corpus_io.hpp"
#include "textsignal/io/csv.hpp"
#include "textsignal/io/embedding_cache.hpp"
#include "textsignal/io/fsutil.hpp"
#include "textsignal/io/serde.hpp"
#include "textsignal/io/svg_plot.hpp"
#include "textsignal/io/tables.hpp"
#include "textsignal/manifold/projector.hpp"
#include "textsignal/manifold/twonn.hpp"
#include "textsignal/partition/density_core.hpp"
#include "textsignal/partition/kmeans.hpp"
#include "textsignal/semantics/scoring.hpp"
#include "textsignal/semantics/text_stats.hpp"
#include "textsignal/util/hash.hpp"

namespace tsig::cli {

namespace {

std::string work_file(const StageContext& ctx, const char* name) {
    return (ctx.work / name).string();
}

std::vector<DocumentRecord> load_work_corpus(const StageContext& ctx) {
    return io::load_corpus(work_file(ctx, "corpus.jsonl"));
}

io::ProjectionTable load_projection_table(const StageContext& ctx, const char* name,
                                          std::size_t dims) {
    auto table = io::parse_projection_csv(io::read_file(work_file(ctx, name)));
    if (table.dims != dims) {
        throw Error(ErrorKind::ingestion, std::string(name) + " holds " + std::to_string(table.dims) +
                                              "D coordinates, expected " + std::to_string(dims) + "D");
    }
    return table;
}

PositionalDictionary load_dictionary(const StageContext& ctx) {
    if (!ctx.cfg.dictionary_path.empty()) {
        return io::dictionary_from_json(io::read_file(ctx.cfg.dictionary_path));
    }
    auto work_dict = work_file(ctx, "dictionary.json");
    if (std::filesystem::exists(work_dict)) {
        return io::dictionary_from_json(io::read_file(work_dict));
    }
    return default_dictionary();
}

gateway::BackendConfig backend_config(const StageContext& ctx) {
    auto cfg = ctx.cfg.backend;
    cfg.validate();
    return cfg;
}

}  // namespace

void run_ingest(const StageContext& ctx, const std::string& input_path) {
    std::filesystem::create_directories(ctx.work);
    auto docs = io::parse_corpus_jsonl(io::read_file(input_path));
    auto report = validate_corpus(docs);
    io::atomic_write_file(work_file(ctx, "validation.json"), io::validation_to_json(report));
    if (!report.accepted()) {
        std::string what = "corpus rejected:";
        if (!report.duplicate_ids.empty()) {
            what += " " + std::to_string(report.duplicate_ids.size()) + " duplicate ids (first '" +
                    report.duplicate_ids.front() + "')";
        }
        if (!report.empty_text_ids.empty()) {
            what += " " + std::to_string(report.empty_text_ids.size()) + " empty-text docs";
        }
        if (report.blank_id_count > 0) {
            what += " " + std::to_string(report.blank_id_count) + " blank ids";
        }
        throw Error(ErrorKind::validation, what + "; see validation.json");
    }
    io::save_corpus(work_file(ctx, "corpus.jsonl"), docs);

    Manifest manifest(ctx.work);
    manifest.record("ingest", {std::filesystem::absolute(input_path).string()},
                    {"corpus.jsonl", "validation.json"}, {{"count", std::to_string(docs.size())}});
    std::printf("ingest: %zu documents accepted\n", docs.size());
}

void run_embed(const StageContext& ctx) {
    Manifest manifest(ctx.work);
    manifest.check_inputs("embed", {"corpus.jsonl"}, ctx.force);
    auto docs = load_work_corpus(ctx);
    auto cfg = backend_config(ctx);

    auto store = std::make_shared<gateway::EmbeddingStore>();
    auto cache_path = work_file(ctx, "embeddings.tsig");
    if (io::embedding_cache_exists(cache_path)) {
        for (const auto& row : io::read_embedding_cache(cache_path)) {
            store->put(row.doc_id(), cfg.model_name, row.values());
        }
    }

    gateway::Gateway gw(cfg, store);
    auto embeddings = gw.embed_batch(docs);
    io::write_embedding_cache(cache_path, embeddings);

    manifest.record("embed", {"corpus.jsonl"}, {"embeddings.tsig", "embeddings.tsig.index.json"},
                    {{"model", cfg.model_name},
                     {"dim", std::to_string(embeddings.front().dim())},
                     {"backend_calls", std::to_string(gw.backend_calls())}});
    std::printf("embed: %zu vectors (dim %zu), %zu backend calls\n", embeddings.size(),
                embeddings.front().dim(), gw.backend_calls());
}

void run_score(const StageContext& ctx) {
    Manifest manifest(ctx.work);
    manifest.check_inputs("score", {"corpus.jsonl"}, ctx.force);
    auto docs = load_work_corpus(ctx);
    auto dict = load_dictionary(ctx);
    dict.validate();
    io::atomic_write_file(work_file(ctx, "dictionary.json"), io::dictionary_to_json(dict));

    auto store = std::make_shared<gateway::ScoreStore>();
    auto cache_path = work_file(ctx, "logscores.csv");
    if (std::filesystem::exists(cache_path)) {
        for (const auto& row : io::parse_logscore_csv(io::read_file(cache_path))) {
            store->put(row.doc_id, row.dict_id, row.dim_id, row.lambda_low, row.lambda_high);
        }
    }

    gateway::Gateway gw(backend_config(ctx), nullptr);
    semantics::Scorer scorer(gw, store, ctx.cfg.centrality_anchor);
    auto scores = scorer.score_corpus(docs, dict);

    std::vector<io::LogScoreRow> rows;
    for (const auto& [key, value] : store->snapshot()) {
        rows.push_back({std::get<1>(key), std::get<2>(key), std::get<0>(key), value.first,
                        value.second});
    }
    io::atomic_write_file(cache_path, io::render_logscore_csv(rows));
    io::atomic_write_file(work_file(ctx, "scores.csv"), io::render_scores_csv(scores, dict));

    manifest.record("score", {"corpus.jsonl"}, {"dictionary.json", "logscores.csv", "scores.csv"},
                    {{"dict_id", dict.dict_id},
                     {"dimensions", std::to_string(dict.dimensions.size())},
                     {"backend_calls", std::to_string(gw.backend_calls())}});
    std::printf("score: %zu documents x %zu dimensions, %zu backend calls\n", scores.size(),
                dict.dimensions.size(), gw.backend_calls());
}

void run_project(const StageContext& ctx) {
    Manifest manifest(ctx.work);
    manifest.check_inputs("project", {"embeddings.tsig"}, ctx.force);
    auto embeddings = io::read_embedding_cache(work_file(ctx, "embeddings.tsig"));
    if (embeddings.empty()) throw Error(ErrorKind::data, "embedding cache is empty");

    auto spec_for = [&](int dims) {
        manifold::ProjectorSpec spec;
        spec.kind = ctx.cfg.projector_kind == "external_file"
                        ? manifold::ProjectorKind::external_file
                        : manifold::ProjectorKind::reference_reducer;
        spec.target_dims = dims;
        spec.seed = ctx.cfg.projector_seed;
        spec.file = dims == 5 ? ctx.cfg.projector_file5 : ctx.cfg.projector_file2;
        return spec;
    };

    auto z5 = manifold::project(embeddings, spec_for(5));
    auto y2 = manifold::project(embeddings, spec_for(2));
    io::atomic_write_file(work_file(ctx, "proj5.csv"),
                          io::render_projection_csv({z5.dims, z5.doc_ids, z5.points}));
    io::atomic_write_file(work_file(ctx, "proj2.csv"),
                          io::render_projection_csv({y2.dims, y2.doc_ids, y2.points}));

    std::vector<std::string> outputs{"proj5.csv", "proj2.csv"};
    if (ctx.cfg.twonn_enabled) {
        std::size_t n = embeddings.size();
        std::size_t sample = std::min(ctx.cfg.twonn_sample, n);
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        util::SplitMix64 rng(util::mix64(ctx.cfg.twonn_seed ^ 0x74776f6e6eULL));
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.next_below(i)]);

        PointMatrix pts(sample, embeddings.front().dim());
        for (std::size_t s = 0; s < sample; ++s) {
            const auto& values = embeddings[order[s]].values();
            for (std::size_t d = 0; d < values.size(); ++d) {
                pts.row(s)[d] = static_cast<double>(values[d]);
            }
        }
        auto twonn = manifold::twonn_estimate(pts);
        io::atomic_write_file(work_file(ctx, "twonn.json"), io::twonn_to_json(twonn));
        outputs.push_back("twonn.json");
        std::printf("project: intrinsic dimension ~ %.3f (sample %zu, %zu duplicates dropped)\n",
                    twonn.dimension, sample, twonn.dropped);
    }

    manifest.record("project", {"embeddings.tsig"}, outputs,
                    {{"kind", ctx.cfg.projector_kind},
                     {"seed", std::to_string(ctx.cfg.projector_seed)}});
    std::printf("project: %zu points into 5D and 2D\n", embeddings.size());
}

void run_partition(const StageContext& ctx) {
    Manifest manifest(ctx.work);
    manifest.check_inputs("partition", {"proj5.csv", "proj2.csv"}, ctx.force);
    auto z5 = load_projection_table(ctx, "proj5.csv", 5);
    auto y2 = load_projection_table(ctx, "proj2.csv", 2);

    auto model = partition::kmeans_fit_best(z5.points, ctx.cfg.kmeans_k, ctx.cfg.kmeans_seed,
                                            ctx.cfg.kmeans_restarts, ctx.cfg.kmeans_max_iter,
                                            ctx.cfg.kmeans_tol);
    io::atomic_write_file(work_file(ctx, "kmeans.json"), io::kmeans_to_json(model));

    auto regions = partition::kmeans_assign(model, z5.points, z5.doc_ids);
    auto density = partition::density_core_label(y2.points, y2.doc_ids, ctx.cfg.density_eps,
                                                 ctx.cfg.density_min_pts);
    std::unordered_map<std::string, bool> core_of;
    for (const auto& label : density) core_of[label.doc_id] = label.is_core_member;
    std::size_t n_core = 0;
    for (auto& r : regions) {
        auto it = core_of.find(r.doc_id);
        if (it == core_of.end()) {
            throw Error(ErrorKind::data, "doc '" + r.doc_id + "' missing from the 2D projection");
        }
        r.density_core = it->second;
        n_core += r.density_core ? 1 : 0;
    }
    io::atomic_write_file(work_file(ctx, "regions.csv"), io::render_regions_csv(regions));

    manifest.record("partition", {"proj5.csv", "proj2.csv"}, {"kmeans.json", "regions.csv"},
                    {{"k", std::to_string(ctx.cfg.kmeans_k)},
                     {"seed", std::to_string(ctx.cfg.kmeans_seed)},
                     {"density_eps", io::format_double(ctx.cfg.density_eps)},
                     {"density_min_pts", std::to_string(ctx.cfg.density_min_pts)}});
    std::printf("partition: K=%d, inertia %.4f, %d iterations; density core %zu/%zu\n", model.k,
                model.inertia, model.iterations_run, n_core, regions.size());
}

void run_prune(const StageContext& ctx) {
    Manifest manifest(ctx.work);
    manifest.check_inputs("prune", {"proj2.csv", "regions.csv"}, ctx.force);
    auto y2 = load_projection_table(ctx, "proj2.csv", 2);
    auto regions = io::parse_regions_csv(io::read_file(work_file(ctx, "regions.csv")));

    std::unordered_map<std::string, const RegionAssignment*> region_of;
    for (const auto& r : regions) region_of[r.doc_id] = &r;
    std::vector<int> region_ids(y2.doc_ids.size());
    std::vector<char> core(y2.doc_ids.size());
    for (std::size_t i = 0; i < y2.doc_ids.size(); ++i) {
        auto it = region_of.find(y2.doc_ids[i]);
        if (it == region_of.end()) {
            throw Error(ErrorKind::data, "doc '" + y2.doc_ids[i] + "' has no region assignment");
        }
        region_ids[i] = it->second->region_id;
        core[i] = it->second->density_core;
    }

    auto [verdicts, report] = cascade::run_cascade(y2.doc_ids, y2.points, core, region_ids,
                                                   ctx.cfg.cascade);
    io::atomic_write_file(work_file(ctx, "verdicts.csv"), io::render_verdicts_csv(verdicts));
    io::atomic_write_file(work_file(ctx, "cascade_report.json"), io::cascade_report_to_json(report));

    manifest.record("prune", {"proj2.csv", "regions.csv"},
                    {"verdicts.csv", "cascade_report.json"},
                    {{"global_sigma", io::format_double(ctx.cfg.cascade.global_sigma)},
                     {"local_sigma", io::format_double(ctx.cfg.cascade.local_sigma)},
                     {"eps_kmeans_graph", io::format_double(ctx.cfg.cascade.eps_kmeans_graph)}});
    std::printf("prune: %zu global outliers, %zu local mavericks, %zu structural outliers; "
                "%zu unique removed of %zu (%.1f%%)\n",
                report.n_global_outliers, report.n_local_mavericks, report.n_structural_outliers,
                report.n_unique_removed, report.n_total, report.removal_fraction * 100.0);
    for (const auto& [region, survivors] : report.per_region_survivors) {
        if (survivors < ctx.cfg.region_survivor_threshold) {
            std::printf("prune: region %d is below the survivor threshold (%zu < %zu)\n", region,
                        survivors, ctx.cfg.region_survivor_threshold);
        }
    }
}

void run_profile(const StageContext& ctx, const std::string& population) {
    Manifest manifest(ctx.work);
    manifest.check_inputs("profile", {"scores.csv", "dictionary.json"}, ctx.force);
    auto scores = io::parse_scores_csv(io::read_file(work_file(ctx, "scores.csv")));
    auto dict = io::dictionary_from_json(io::read_file(work_file(ctx, "dictionary.json")));

    bool want_all = population == "all" || population == "both";
    bool want_retained = population == "retained_only" || population == "both";
    if (!want_all && !want_retained) {
        throw Error(ErrorKind::parameter,
                    "population must be one of: all, retained_only, both (got '" + population + "')");
    }

    std::vector<std::string> inputs{"scores.csv", "dictionary.json"};
    std::vector<std::string> outputs;
    std::vector<FilterVerdict> verdicts;
    if (want_retained || std::filesystem::exists(work_file(ctx, "verdicts.csv"))) {
        manifest.check_inputs("profile", {"verdicts.csv"}, ctx.force);
        inputs.push_back("verdicts.csv");
        verdicts = io::parse_verdicts_csv(io::read_file(work_file(ctx, "verdicts.csv")));
    }

    if (want_all) {
        auto profile = semantics::band_profile(scores, dict, "all", ctx.cfg.profile_z_cut);
        io::atomic_write_file(work_file(ctx, "profile_all.json"), io::profile_to_json(profile));
        io::atomic_write_file(work_file(ctx, "profile_all.md"),
                              semantics::render_profile_markdown(profile, dict));
        outputs.push_back("profile_all.json");
        outputs.push_back("profile_all.md");
    }
    if (want_retained) {
        std::unordered_map<std::string, bool> retained;
        for (const auto& v : verdicts) retained[v.doc_id] = v.retained;
        std::vector<ScoreVector> kept;
        for (const auto& sv : scores) {
            auto it = retained.find(sv.doc_id());
            if (it == retained.end()) {
                throw Error(ErrorKind::data, "doc '" + sv.doc_id() + "' has no cascade verdict");
            }
            if (it->second) kept.push_back(sv);
        }
        auto profile = semantics::band_profile(kept, dict, "retained_only", ctx.cfg.profile_z_cut);
        io::atomic_write_file(work_file(ctx, "profile_retained.json"), io::profile_to_json(profile));
        io::atomic_write_file(work_file(ctx, "profile_retained.md"),
                              semantics::render_profile_markdown(profile, dict));
        outputs.push_back("profile_retained.json");
        outputs.push_back("profile_retained.md");
    }

    bool has_centrality = !scores.empty() && scores.front().centrality().has_value();
    if (has_centrality) {
        std::set<std::string> pops{"all"};
        if (!verdicts.empty()) {
            pops.insert("outliers_removed");
            pops.insert("noise_removed");
        }
        auto hist = semantics::centrality_histogram(scores, ctx.cfg.histogram_bin_width, pops,
                                                    verdicts);
        io::atomic_write_file(work_file(ctx, "centrality_hist.json"), io::histogram_to_json(hist));
        outputs.push_back("centrality_hist.json");
    }

    // corpus text statistics ride along with the profiles
    manifest.check_inputs("profile", {"corpus.jsonl"}, ctx.force);
    inputs.push_back("corpus.jsonl");
    auto docs = load_work_corpus(ctx);
    std::vector<std::string> patterns{"inteligência artificial", "aiact"};
    auto text_stats = semantics::describe_text_stats(docs, patterns);
    std::printf("profile: chars mean %.1f median %.1f std %.1f; mentions mean %.2f median %.1f std %.2f\n",
                text_stats.char_count.mean, text_stats.char_count.median,
                text_stats.char_count.sample_std, text_stats.mention_count.mean,
                text_stats.mention_count.median, text_stats.mention_count.sample_std);

    manifest.record("profile", inputs, outputs, {{"population", population}});
    std::printf("profile: wrote %zu artifacts\n", outputs.size());
}

void run_map(const StageContext& ctx, const std::string& color_by) {
    Manifest manifest(ctx.work);
    manifest.check_inputs("map", {"proj2.csv", "regions.csv", "verdicts.csv", "scores.csv",
                                  "dictionary.json"},
                          ctx.force);
    auto y2 = load_projection_table(ctx, "proj2.csv", 2);
    auto regions = io::parse_regions_csv(io::read_file(work_file(ctx, "regions.csv")));
    auto verdicts = io::parse_verdicts_csv(io::read_file(work_file(ctx, "verdicts.csv")));
    auto scores = io::parse_scores_csv(io::read_file(work_file(ctx, "scores.csv")));
    auto dict = io::dictionary_from_json(io::read_file(work_file(ctx, "dictionary.json")));

    bool color_region = color_by == "region";
    bool color_retained = color_by == "retained";
    if (!color_region && !color_retained && dict.find(color_by) == nullptr) {
        std::string valid = "region, retained";
        for (const auto& dim : dict.dimensions) valid += ", " + dim.dim_id;
        throw Error(ErrorKind::parameter, "unknown color-by '" + color_by + "' (valid: " + valid + ")");
    }

    std::unordered_map<std::string, const RegionAssignment*> region_of;
    for (const auto& r : regions) region_of[r.doc_id] = &r;
    std::unordered_map<std::string, const FilterVerdict*> verdict_of;
    for (const auto& v : verdicts) verdict_of[v.doc_id] = &v;
    std::unordered_map<std::string, const ScoreVector*> score_of;
    for (const auto& s : scores) score_of[s.doc_id()] = &s;

    std::vector<int> region_ids;
    std::vector<bool> retained;
    std::vector<ScoreVector> row_scores;
    std::vector<std::string> fills;
    for (const auto& id : y2.doc_ids) {
        auto r = region_of.find(id);
        auto v = verdict_of.find(id);
        auto s = score_of.find(id);
        if (r == region_of.end() || v == verdict_of.end() || s == score_of.end()) {
            throw Error(ErrorKind::data, "doc '" + id + "' is missing from an upstream stage output");
        }
        region_ids.push_back(r->second->region_id);
        retained.push_back(v->second->retained);
        row_scores.push_back(*s->second);
        if (color_region) {
            fills.push_back(io::categorical_color(r->second->region_id));
        } else if (color_retained) {
            fills.push_back(v->second->retained ? "#4e79a7" : "#d0d0d0");
        } else {
            fills.push_back(io::score_color(s->second->score(color_by)));
        }
    }

    io::atomic_write_file(work_file(ctx, "map.csv"),
                          io::render_map_csv(y2.doc_ids, y2.points, region_ids, retained,
                                             row_scores, dict));

    std::vector<io::LegendEntry> legend;
    if (color_region) {
        std::set<int> seen(region_ids.begin(), region_ids.end());
        for (int region : seen) {
            legend.push_back({"region " + std::to_string(region), io::categorical_color(region)});
        }
    } else if (color_retained) {
        legend.push_back({"retained", "#4e79a7"});
        legend.push_back({"removed", "#d0d0d0"});
    } else {
        const auto* dim = dict.find(color_by);
        legend.push_back({dim->low_pole, io::score_color(0.0)});
        legend.push_back({dim->high_pole, io::score_color(1.0)});
    }
    io::SvgOptions opts;
    opts.title = "semantic topography (" + color_by + ")";
    io::atomic_write_file(work_file(ctx, "map.svg"),
                          io::render_scatter_svg(y2.points, fills, legend, opts));

    manifest.record("map",
                    {"proj2.csv", "regions.csv", "verdicts.csv", "scores.csv", "dictionary.json"},
                    {"map.csv", "map.svg"}, {{"color_by", color_by}});
    std::printf("map: %zu points, colored by %s\n", y2.doc_ids.size(), color_by.c_str());
}

}  // namespace tsig::cli
