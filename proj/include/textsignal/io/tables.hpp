#pragma once

#include <optional>
#include <string>
#include <vector>

#include "textsignal/core/points.hpp"
#include "textsignal/core/types.hpp"

namespace tsig::io {

// Projection file: CSV with header doc_id,c1,...,ck (k = 2 or 5), UTF-8,
// decimal point, LF line endings.
struct ProjectionTable {
    std::size_t dims = 0;
    std::vector<std::string> doc_ids;
    PointMatrix points;

    bool operator==(const ProjectionTable&) const = default;
};

std::string render_projection_csv(const ProjectionTable& table);
ProjectionTable parse_projection_csv(const std::string& text);

// Regions: doc_id,region_id,density_core (flags as 0/1).
std::string render_regions_csv(const std::vector<RegionAssignment>& rows);
std::vector<RegionAssignment> parse_regions_csv(const std::string& text);

// Verdicts: doc_id,d_global,d_local,g_pass,l_pass,r_pass,retained.
std::string render_verdicts_csv(const std::vector<FilterVerdict>& rows);
std::vector<FilterVerdict> parse_verdicts_csv(const std::string& text);

// Scores: doc_id,<dim_id...>,centrality; the centrality field is empty when
// no probe target is configured. Column order follows the dictionary.
std::string render_scores_csv(const std::vector<ScoreVector>& rows,
                              const PositionalDictionary& dict);
std::vector<ScoreVector> parse_scores_csv(const std::string& text);

// Pole log-score cache rows: dict_id,dim_id,doc_id,lambda_low,lambda_high.
struct LogScoreRow {
    std::string dict_id;
    std::string dim_id;
    std::string doc_id;
    double lambda_low = 0.0;
    double lambda_high = 0.0;

    bool operator==(const LogScoreRow&) const = default;
};

std::string render_logscore_csv(const std::vector<LogScoreRow>& rows);
std::vector<LogScoreRow> parse_logscore_csv(const std::string& text);

// Final map: doc_id,x,y,region_id,retained,<scores...>.
std::string render_map_csv(const std::vector<std::string>& doc_ids, const PointMatrix& y2,
                           const std::vector<int>& region_ids,
                           const std::vector<bool>& retained,
                           const std::vector<ScoreVector>& scores,
                           const PositionalDictionary& dict);

}  // namespace tsig::io
