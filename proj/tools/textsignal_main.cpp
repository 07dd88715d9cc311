#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "demo.hpp"
#include "stages.hpp"
#include "textsignal/error.hpp"

using namespace tsig;

namespace {

struct CommonArgs {
    std::string work = "work";
    std::string config_file;
    std::vector<std::string> sets;
    bool force = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--work", args.work, "Work directory holding stage artifacts");
    cmd->add_option("--config", args.config_file, "key = value configuration file");
    cmd->add_option("--set", args.sets, "Override a config key, e.g. --set kmeans.k=12");
    cmd->add_flag("--force", args.force, "Skip stale-checksum verification of stage inputs");
}

cli::StageContext make_context(const CommonArgs& args) {
    std::map<std::string, std::string> file_values;
    if (!args.config_file.empty()) {
        file_values = cli::parse_config_file(args.config_file);
    }
    std::map<std::string, std::string> overrides;
    for (const auto& entry : args.sets) {
        auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::parameter, "--set expects key=value, got '" + entry + "'");
        }
        overrides[entry.substr(0, eq)] = entry.substr(eq + 1);
    }
    cli::StageContext ctx;
    ctx.work = args.work;
    ctx.cfg = cli::resolve_config(file_values, overrides);
    ctx.force = args.force;
    return ctx;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"textsignal: corpus-to-signal semantic mapping pipeline"};
    app.require_subcommand(1);

    // demo
    auto* demo = app.add_subcommand("demo", "Generate the bundled synthetic corpus and its config");
    std::string demo_out = "demo";
    std::size_t demo_docs = 11922;
    std::uint64_t demo_seed = 7;
    std::size_t demo_dim = 64;
    demo->add_option("--out", demo_out, "Output directory");
    demo->add_option("--docs", demo_docs, "Number of documents");
    demo->add_option("--seed", demo_seed, "Deterministic seed");
    demo->add_option("--dim", demo_dim, "Mock embedding dimension");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Validate a JSONL corpus into the work directory");
    CommonArgs ingest_args;
    std::string ingest_input;
    add_common(ingest, ingest_args);
    ingest->add_option("--input", ingest_input, "Corpus JSONL file")->required();

    auto* embed = app.add_subcommand("embed", "Obtain document embeddings through the backend");
    CommonArgs embed_args;
    add_common(embed, embed_args);

    auto* score = app.add_subcommand("score", "Score the corpus over the positional dictionary");
    CommonArgs score_args;
    add_common(score, score_args);

    auto* project = app.add_subcommand("project", "Project embeddings to 5D and 2D coordinates");
    CommonArgs project_args;
    std::string file5, file2;
    add_common(project, project_args);
    project->add_option("--file5", file5, "Precomputed 5D projection CSV");
    project->add_option("--file2", file2, "Precomputed 2D projection CSV");

    auto* partition = app.add_subcommand("partition", "K-Means regions and density-core labels");
    CommonArgs partition_args;
    add_common(partition, partition_args);

    auto* prune = app.add_subcommand("prune", "Run the three-pass anomaly cascade");
    CommonArgs prune_args;
    add_common(prune, prune_args);

    auto* profile = app.add_subcommand("profile", "Aggregate corpus profiles and histograms");
    CommonArgs profile_args;
    std::string population = "both";
    add_common(profile, profile_args);
    profile->add_option("--population", population, "all, retained_only, or both");

    auto* map_cmd = app.add_subcommand("map", "Export the final map CSV and SVG scatter");
    CommonArgs map_args;
    std::string color_by = "region";
    add_common(map_cmd, map_args);
    map_cmd->add_option("--color-by", color_by, "region, retained, or a dimension id");

    CLI11_PARSE(app, argc, argv);

    try {
        if (demo->parsed()) {
            cli::write_demo_bundle(demo_out, demo_docs, demo_seed, demo_dim);
            std::printf("demo: wrote corpus.jsonl, dictionary.json and demo.conf under %s\n",
                        demo_out.c_str());
        } else if (ingest->parsed()) {
            cli::run_ingest(make_context(ingest_args), ingest_input);
        } else if (embed->parsed()) {
            cli::run_embed(make_context(embed_args));
        } else if (score->parsed()) {
            cli::run_score(make_context(score_args));
        } else if (project->parsed()) {
            auto ctx = make_context(project_args);
            if (!file5.empty()) {
                ctx.cfg.projector_file5 = file5;
                ctx.cfg.projector_kind = "external_file";
            }
            if (!file2.empty()) {
                ctx.cfg.projector_file2 = file2;
                ctx.cfg.projector_kind = "external_file";
            }
            cli::run_project(ctx);
        } else if (partition->parsed()) {
            cli::run_partition(make_context(partition_args));
        } else if (prune->parsed()) {
            cli::run_prune(make_context(prune_args));
        } else if (profile->parsed()) {
            cli::run_profile(make_context(profile_args), population);
        } else if (map_cmd->parsed()) {
            cli::run_map(make_context(map_args), color_by);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error (%s): %s\n", error_kind_name(e.kind()), e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
