#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "textsignal/core/points.hpp"
#include "textsignal/core/types.hpp"

namespace tsig::cascade {

enum class LocalStatsPopulation { full_region, g_survivors };

struct CascadeConfig {
    double global_sigma = 1.2;
    double local_sigma = 1.8;
    double eps_kmeans_graph = 1.2;   // authoritative for retention
    double eps_density_graph = 1.0;  // diagnostic only
    LocalStatsPopulation local_stats_population = LocalStatsPopulation::full_region;

    void validate() const;
};

struct GlobalFilterResult {
    std::vector<double> d_global;
    std::vector<char> g_pass;
    double centroid[2] = {0.0, 0.0};
    double mean = 0.0;
    double stddev = 0.0;  // sample std over all points
};

struct LocalFilterResult {
    std::vector<double> d_local;
    std::vector<char> l_pass;
};

// Size and makeup of the diagnostic component analysis run over the density
// core with eps_density_graph. Never affects retention.
struct DensityGraphDiagnostic {
    double eps = 0.0;
    std::size_t n_members = 0;
    std::size_t n_components = 0;
    std::size_t largest_component = 0;

    bool operator==(const DensityGraphDiagnostic&) const = default;
};

struct CascadeReport {
    std::size_t n_total = 0;
    std::size_t n_global_outliers = 0;
    std::size_t n_local_mavericks = 0;
    std::size_t n_structural_outliers = 0;
    std::size_t n_unique_removed = 0;
    double removal_fraction = 0.0;
    std::map<int, std::size_t> per_region_survivors;
    DensityGraphDiagnostic density_diagnostic;

    bool operator==(const CascadeReport&) const = default;
};

// Distance-to-continental-centroid pass. The centroid is anchored on the
// density core; the mean/std threshold is calibrated over every point.
GlobalFilterResult global_filter(const PointMatrix& y2, std::span<const char> core_member,
                                 double sigma_mult);

// Per-region distance pass. The population argument picks which documents
// feed the centroid and the mean/std (the literal per-region definition, or
// only the global-pass survivors); verdicts are produced for every member
// either way. Populations of two or fewer auto-pass.
LocalFilterResult local_filter(const PointMatrix& y2, std::span<const int> region_ids,
                               double sigma_mult, LocalStatsPopulation population,
                               std::span<const char> g_pass = {});

// Largest-connected-component pass over the eps-graph (strict d < eps) of
// the surviving documents. Non-survivors get r_pass = false. Equal-sized
// largest components tie-break toward the one containing the smallest
// doc_id.
std::vector<char> structural_filter(const PointMatrix& y2, std::span<const std::string> doc_ids,
                                    std::span<const char> survivor, double eps);

// Component id per point of the eps-graph over all rows (strict d < eps).
std::vector<std::size_t> eps_graph_components(const PointMatrix& points, double eps);

std::pair<std::vector<FilterVerdict>, CascadeReport> run_cascade(
    std::span<const std::string> doc_ids, const PointMatrix& y2, std::span<const char> core_member,
    std::span<const int> region_ids, const CascadeConfig& cfg);

}  // namespace tsig::cascade
