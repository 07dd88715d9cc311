#include "manifest.hpp"

#include <nlohmann/json.hpp>

#include "textsignal/error.hpp"
#include "textsignal/io/fsutil.hpp"

using nlohmann::json;

namespace tsig::cli {

std::string producing_stage(const std::string& name) {
    static const std::map<std::string, std::string> producers = {
        {"corpus.jsonl", "ingest"},
        {"validation.json", "ingest"},
        {"dictionary.json", "score"},
        {"embeddings.tsig", "embed"},
        {"embeddings.tsig.index.json", "embed"},
        {"logscores.csv", "score"},
        {"scores.csv", "score"},
        {"proj5.csv", "project"},
        {"proj2.csv", "project"},
        {"twonn.json", "project"},
        {"kmeans.json", "partition"},
        {"regions.csv", "partition"},
        {"verdicts.csv", "prune"},
        {"cascade_report.json", "prune"},
    };
    auto it = producers.find(name);
    return it == producers.end() ? "" : it->second;
}

Manifest::Manifest(std::filesystem::path work_dir) : work_dir_(std::move(work_dir)) { load(); }

std::filesystem::path Manifest::resolve(const std::string& name) const {
    std::filesystem::path p(name);
    return p.is_absolute() ? p : work_dir_ / p;
}

void Manifest::load() {
    auto path = work_dir_ / "manifest.json";
    if (!std::filesystem::exists(path)) return;
    json j = json::parse(io::read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorKind::ingestion, "malformed manifest at '" + path.string() + "'");
    }
    if (!j.contains("stages")) return;
    for (auto it = j["stages"].begin(); it != j["stages"].end(); ++it) {
        StageEntry entry;
        for (auto f = it.value()["inputs"].begin(); f != it.value()["inputs"].end(); ++f) {
            entry.inputs[f.key()] = f.value().get<std::string>();
        }
        for (auto f = it.value()["outputs"].begin(); f != it.value()["outputs"].end(); ++f) {
            entry.outputs[f.key()] = f.value().get<std::string>();
        }
        if (it.value().contains("params")) {
            for (auto f = it.value()["params"].begin(); f != it.value()["params"].end(); ++f) {
                entry.params[f.key()] = f.value().get<std::string>();
            }
        }
        stages_[it.key()] = std::move(entry);
    }
}

std::string Manifest::current_checksum(const std::string& name) const {
    return io::checksum_file(resolve(name));
}

void Manifest::check_inputs(const std::string& stage, const std::vector<std::string>& paths,
                            bool force) const {
    for (const auto& name : paths) {
        auto path = resolve(name);
        if (!std::filesystem::exists(path)) {
            auto producer = producing_stage(name);
            std::string hint = producer.empty() ? "" : "; run the '" + producer + "' stage first";
            throw Error(ErrorKind::config,
                        "stage '" + stage + "' needs missing input '" + name + "'" + hint);
        }
        if (force) continue;
        // find the recorded checksum from whichever stage produced it
        for (const auto& [other, entry] : stages_) {
            auto it = entry.outputs.find(name);
            if (it == entry.outputs.end()) continue;
            if (it->second != current_checksum(name)) {
                throw Error(ErrorKind::config,
                            "input '" + name + "' no longer matches the checksum recorded by stage '" +
                                other + "'; rerun that stage or pass --force");
            }
        }
    }
}

void Manifest::record(const std::string& stage, const std::vector<std::string>& inputs,
                      const std::vector<std::string>& outputs,
                      const std::map<std::string, std::string>& params) {
    StageEntry entry;
    for (const auto& name : inputs) entry.inputs[name] = current_checksum(name);
    for (const auto& name : outputs) entry.outputs[name] = current_checksum(name);
    entry.params = params;
    stages_[stage] = std::move(entry);

    json j;
    j["tool_version"] = kToolVersion;
    json stages = json::object();
    for (const auto& [name, e] : stages_) {
        stages[name] = {{"inputs", e.inputs}, {"outputs", e.outputs}, {"params", e.params}};
    }
    j["stages"] = stages;
    io::atomic_write_file(work_dir_ / "manifest.json", j.dump(2) + "\n");
}

}  // namespace tsig::cli
