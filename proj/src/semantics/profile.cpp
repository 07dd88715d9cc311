#include "textsignal/semantics/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "textsignal/error.hpp"

namespace tsig::semantics {

int band_of(double score) {
    if (!(score >= 0.0 && score <= 1.0)) {
        throw Error(ErrorKind::parameter, "score outside [0,1]");
    }
    if (score <= 0.25) return 0;
    if (score <= 0.50) return 1;
    if (score <= 0.75) return 2;
    return 3;
}

double mean_of(std::span<const double> values) {
    double s = 0.0;
    for (double v : values) s += v;
    return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

double continuous_median(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorKind::data, "median of empty series");
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double sample_std(std::span<const double> values, double mean) {
    if (values.size() < 2) return 0.0;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

namespace {

DimensionStats describe_series(std::span<const double> values, double z_cut) {
    DimensionStats st;
    st.mean = mean_of(values);
    st.continuous_median = continuous_median({values.begin(), values.end()});
    st.sample_std = sample_std(values, st.mean);
    if (st.sample_std > 0.0) {
        std::size_t outliers = 0;
        for (double v : values) {
            if (std::abs((v - st.mean) / st.sample_std) > z_cut) ++outliers;
        }
        st.outlier_fraction = static_cast<double>(outliers) / static_cast<double>(values.size());
    }
    return st;
}

// floor with a small snap toward the next integer, so mathematically exact
// bin boundaries (0.7 / 0.05 and friends) land where the edge rule says
// despite binary rounding.
std::size_t snapped_floor(double t) {
    double f = std::floor(t);
    if (t - f > 1.0 - 1e-9) f += 1.0;
    return static_cast<std::size_t>(f);
}

}  // namespace

CorpusProfile band_profile(std::span<const ScoreVector> scores, const PositionalDictionary& dict,
                           std::string population_label, double z_cut) {
    if (scores.empty()) throw Error(ErrorKind::data, "no scores to profile");
    dict.validate();
    if (z_cut <= 0.0) throw Error(ErrorKind::parameter, "z_cut must be positive");

    CorpusProfile profile;
    profile.dict_id = dict.dict_id;
    profile.n_docs = scores.size();
    profile.population = std::move(population_label);
    profile.z_cut = z_cut;

    for (const auto& dim : dict.dimensions) {
        std::array<std::size_t, 4> counts{};
        std::vector<double> series;
        series.reserve(scores.size());
        for (const auto& sv : scores) {
            double s = sv.score(dim.dim_id);
            ++counts[band_of(s)];
            series.push_back(s);
        }
        std::array<double, 4> fractions{};
        for (int b = 0; b < 4; ++b) {
            fractions[b] = static_cast<double>(counts[b]) / static_cast<double>(scores.size());
        }
        profile.band_fractions[dim.dim_id] = fractions;
        profile.stats[dim.dim_id] = describe_series(series, z_cut);
    }

    std::vector<double> centrality;
    centrality.reserve(scores.size());
    for (const auto& sv : scores) {
        if (sv.centrality()) centrality.push_back(*sv.centrality());
    }
    if (centrality.size() == scores.size() && !centrality.empty()) {
        profile.centrality_stats = describe_series(centrality, z_cut);
    }
    return profile;
}

std::string render_profile_markdown(const CorpusProfile& profile,
                                    const PositionalDictionary& dict) {
    std::string out;
    out += "# Corpus profile (" + profile.population + ", n=" + std::to_string(profile.n_docs) + ")\n\n";
    out += "| Dimension | Q1 | Q2 | Q3 | Q4 |\n";
    out += "|---|---|---|---|---|\n";
    char buf[64];
    for (const auto& dim : dict.dimensions) {
        auto fit = profile.band_fractions.find(dim.dim_id);
        if (fit == profile.band_fractions.end()) continue;
        out += "| **" + dim.name + "** |";
        for (int b = 0; b < 4; ++b) {
            out += " " + dim.band_names[b] + " |";
        }
        out += "\n| |";
        for (int b = 0; b < 4; ++b) {
            std::snprintf(buf, sizeof(buf), " %.0f%% |", fit->second[b] * 100.0);
            out += buf;
        }
        out += "\n";
    }
    out += "\n| Dimension | mean | median | std | outlier share |\n|---|---|---|---|---|\n";
    for (const auto& dim : dict.dimensions) {
        auto sit = profile.stats.find(dim.dim_id);
        if (sit == profile.stats.end()) continue;
        std::snprintf(buf, sizeof(buf), "| %s | %.4f | %.4f | %.4f | %.4f |\n", dim.name.c_str(),
                      sit->second.mean, sit->second.continuous_median, sit->second.sample_std,
                      sit->second.outlier_fraction);
        out += buf;
    }
    if (profile.centrality_stats) {
        std::snprintf(buf, sizeof(buf), "| centrality | %.4f | %.4f | %.4f | %.4f |\n",
                      profile.centrality_stats->mean, profile.centrality_stats->continuous_median,
                      profile.centrality_stats->sample_std,
                      profile.centrality_stats->outlier_fraction);
        out += buf;
    }
    return out;
}

CentralityHistogram centrality_histogram(std::span<const ScoreVector> scores, double bin_width,
                                         const std::set<std::string>& populations,
                                         std::span<const FilterVerdict> verdicts) {
    if (!(bin_width > 0.0 && bin_width <= 1.0)) {
        throw Error(ErrorKind::parameter, "bin_width must be in (0,1]");
    }
    if (scores.empty()) throw Error(ErrorKind::data, "no scores");
    if (populations.empty()) throw Error(ErrorKind::parameter, "no populations requested");
    for (const auto& sv : scores) {
        if (!sv.centrality()) {
            throw Error(ErrorKind::data, "document '" + sv.doc_id() + "' has no centrality score");
        }
    }
    bool needs_verdicts = false;
    for (const auto& pop : populations) {
        if (pop != "all" && pop != "outliers_removed" && pop != "noise_removed") {
            throw Error(ErrorKind::parameter,
                        "unknown population '" + pop +
                            "' (valid: all, outliers_removed, noise_removed)");
        }
        if (pop != "all") needs_verdicts = true;
    }
    std::unordered_map<std::string, const FilterVerdict*> verdict_of;
    if (needs_verdicts) {
        if (verdicts.empty()) {
            throw Error(ErrorKind::parameter, "filtered populations need the cascade verdicts");
        }
        for (const auto& v : verdicts) verdict_of[v.doc_id] = &v;
    }

    CentralityHistogram hist;
    hist.bin_width = bin_width;
    hist.n_bins = snapped_floor(1.0 / bin_width) + 1;

    for (const auto& pop : populations) {
        std::vector<double> freq(hist.n_bins, 0.0);
        std::size_t count = 0;
        for (const auto& sv : scores) {
            if (pop != "all") {
                auto it = verdict_of.find(sv.doc_id());
                if (it == verdict_of.end()) {
                    throw Error(ErrorKind::data, "no verdict for document '" + sv.doc_id() + "'");
                }
                const FilterVerdict& v = *it->second;
                bool keep = pop == "outliers_removed" ? (v.g_pass && v.l_pass) : v.retained;
                if (!keep) continue;
            }
            std::size_t bin = std::min(snapped_floor(*sv.centrality() / bin_width), hist.n_bins - 1);
            freq[bin] += 1.0;
            ++count;
        }
        if (count > 0) {
            for (double& f : freq) f /= static_cast<double>(count);
        }
        hist.frequencies[pop] = std::move(freq);
        hist.counts[pop] = count;
    }
    return hist;
}

}  // namespace tsig::semantics
