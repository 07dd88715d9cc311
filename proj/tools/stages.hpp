#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"

namespace tsig::cli {

struct StageContext {
    std::filesystem::path work;
    PipelineConfig cfg;
    bool force = false;
};

void run_ingest(const StageContext& ctx, const std::string& input_path);
void run_embed(const StageContext& ctx);
void run_score(const StageContext& ctx);
void run_project(const StageContext& ctx);
void run_partition(const StageContext& ctx);
void run_prune(const StageContext& ctx);
void run_profile(const StageContext& ctx, const std::string& population);
void run_map(const StageContext& ctx, const std::string& color_by);

}  // namespace tsig::cli
