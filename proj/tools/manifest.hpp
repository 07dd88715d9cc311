#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace tsig::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Checksum chain over stage artifacts in a work directory. Each stage
// records the checksums of the inputs it consumed and the outputs it wrote;
// a dependent stage refuses to run when an input no longer matches the
// checksum its producer recorded, unless forced.
class Manifest {
public:
    explicit Manifest(std::filesystem::path work_dir);

    // Verifies inputs against the chain. `paths` are work-relative names or
    // absolute external paths. Throws when a file is missing (naming the
    // stage to run) or stale (unless force).
    void check_inputs(const std::string& stage, const std::vector<std::string>& paths,
                      bool force) const;

    // Records a completed stage and writes the manifest atomically.
    void record(const std::string& stage, const std::vector<std::string>& inputs,
                const std::vector<std::string>& outputs,
                const std::map<std::string, std::string>& params);

    std::filesystem::path resolve(const std::string& name) const;

private:
    void load();
    std::string current_checksum(const std::string& name) const;

    std::filesystem::path work_dir_;
    // stage -> {inputs{name:checksum}, outputs{name:checksum}, params}
    struct StageEntry {
        std::map<std::string, std::string> inputs;
        std::map<std::string, std::string> outputs;
        std::map<std::string, std::string> params;
    };
    std::map<std::string, StageEntry> stages_;
};

// Which stage produces a given work file; used for actionable errors.
std::string producing_stage(const std::string& name);

}  // namespace tsig::cli
