#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "textsignal/core/types.hpp"

namespace tsig::semantics {

// Fixed quartile bands over [0,1]: [0,.25] (.25,.50] (.50,.75] (.75,1].
// Scores exactly on an edge belong to the lower band.
int band_of(double score);

inline constexpr std::array<double, 5> kBandEdges = {0.0, 0.25, 0.50, 0.75, 1.0};

struct DimensionStats {
    double mean = 0.0;
    double continuous_median = 0.0;
    double sample_std = 0.0;
    double outlier_fraction = 0.0;  // |z| > z_cut

    bool operator==(const DimensionStats&) const = default;
};

struct CorpusProfile {
    std::string dict_id;
    std::size_t n_docs = 0;
    std::string population;  // "all" or "retained_only"
    double z_cut = 3.0;
    std::map<std::string, std::array<double, 4>> band_fractions;
    std::map<std::string, DimensionStats> stats;
    std::optional<DimensionStats> centrality_stats;

    bool operator==(const CorpusProfile&) const = default;
};

CorpusProfile band_profile(std::span<const ScoreVector> scores, const PositionalDictionary& dict,
                           std::string population_label = "all", double z_cut = 3.0);

// Markdown rendering of a profile, one dimension per block: band names,
// occupancy percentages, and the descriptive statistics.
std::string render_profile_markdown(const CorpusProfile& profile, const PositionalDictionary& dict);

// Relative-frequency histogram of centrality scores with bins
// [k*w, (k+1)*w). Recognized populations: "all" (every document),
// "outliers_removed" (G and L survivors), "noise_removed" (fully retained).
struct CentralityHistogram {
    double bin_width = 0.05;
    std::size_t n_bins = 0;
    std::map<std::string, std::vector<double>> frequencies;
    std::map<std::string, std::size_t> counts;

    bool operator==(const CentralityHistogram&) const = default;
};

CentralityHistogram centrality_histogram(std::span<const ScoreVector> scores, double bin_width,
                                         const std::set<std::string>& populations,
                                         std::span<const FilterVerdict> verdicts = {});

// Descriptive helpers shared across the profilers.
double mean_of(std::span<const double> values);
double continuous_median(std::vector<double> values);
double sample_std(std::span<const double> values, double mean);

}  // namespace tsig::semantics
