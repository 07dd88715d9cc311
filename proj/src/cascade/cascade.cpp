#include "textsignal/cascade/cascade.hpp"

#include <algorithm>
#include <cmath>

#include "textsignal/cascade/union_find.hpp"
#include "textsignal/error.hpp"
#include "textsignal/manifold/neighbor_index.hpp"

namespace tsig::cascade {

namespace {

double sample_std(std::span<const double> values, double mean) {
    if (values.size() < 2) return 0.0;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double mean_of(std::span<const double> values) {
    double s = 0.0;
    for (double v : values) s += v;
    return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

}  // namespace

void CascadeConfig::validate() const {
    if (global_sigma <= 0.0 || local_sigma <= 0.0 || eps_kmeans_graph <= 0.0 ||
        eps_density_graph <= 0.0) {
        throw Error(ErrorKind::config, "cascade thresholds must be positive");
    }
}

GlobalFilterResult global_filter(const PointMatrix& y2, std::span<const char> core_member,
                                 double sigma_mult) {
    if (y2.dim != 2) throw Error(ErrorKind::parameter, "global filter expects 2D points");
    if (core_member.size() != y2.n) {
        throw Error(ErrorKind::parameter, "core flags and points disagree on count");
    }

    GlobalFilterResult res;
    std::size_t n_core = 0;
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < y2.n; ++i) {
        if (!core_member[i]) continue;
        cx += y2.row(i)[0];
        cy += y2.row(i)[1];
        ++n_core;
    }
    if (n_core == 0) {
        throw Error(ErrorKind::config,
                    "density core is empty; loosen the density parameters (eps / min_pts) so the "
                    "global centroid has an anchor");
    }
    res.centroid[0] = cx / static_cast<double>(n_core);
    res.centroid[1] = cy / static_cast<double>(n_core);

    res.d_global.resize(y2.n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(y2.n); ++i) {
        double dx = y2.row(i)[0] - res.centroid[0];
        double dy = y2.row(i)[1] - res.centroid[1];
        res.d_global[i] = std::sqrt(dx * dx + dy * dy);
    }

    res.mean = mean_of(res.d_global);
    res.stddev = sample_std(res.d_global, res.mean);
    double cut = res.mean + sigma_mult * res.stddev;

    res.g_pass.resize(y2.n);
    for (std::size_t i = 0; i < y2.n; ++i) res.g_pass[i] = res.d_global[i] <= cut;
    return res;
}

LocalFilterResult local_filter(const PointMatrix& y2, std::span<const int> region_ids,
                               double sigma_mult, LocalStatsPopulation population,
                               std::span<const char> g_pass) {
    if (y2.dim != 2) throw Error(ErrorKind::parameter, "local filter expects 2D points");
    if (region_ids.size() != y2.n) {
        throw Error(ErrorKind::parameter, "region ids and points disagree on count");
    }
    if (population == LocalStatsPopulation::g_survivors && g_pass.size() != y2.n) {
        throw Error(ErrorKind::parameter, "g_survivors population needs the global-pass flags");
    }

    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < y2.n; ++i) members[region_ids[i]].push_back(i);

    LocalFilterResult res;
    res.d_local.assign(y2.n, 0.0);
    res.l_pass.assign(y2.n, 1);

    for (const auto& [region, idxs] : members) {
        std::vector<std::size_t> pop;
        if (population == LocalStatsPopulation::g_survivors) {
            for (std::size_t i : idxs) {
                if (g_pass[i]) pop.push_back(i);
            }
            if (pop.empty()) pop = idxs;  // no survivors: fall back to the full region
        } else {
            pop = idxs;
        }

        double cx = 0.0, cy = 0.0;
        for (std::size_t i : pop) {
            cx += y2.row(i)[0];
            cy += y2.row(i)[1];
        }
        cx /= static_cast<double>(pop.size());
        cy /= static_cast<double>(pop.size());

        for (std::size_t i : idxs) {
            double dx = y2.row(i)[0] - cx;
            double dy = y2.row(i)[1] - cy;
            res.d_local[i] = std::sqrt(dx * dx + dy * dy);
        }

        if (pop.size() <= 2) continue;  // std degenerate: the whole region auto-passes

        std::vector<double> pop_d;
        pop_d.reserve(pop.size());
        for (std::size_t i : pop) pop_d.push_back(res.d_local[i]);
        double mu = mean_of(pop_d);
        double cut = mu + sigma_mult * sample_std(pop_d, mu);
        for (std::size_t i : idxs) res.l_pass[i] = res.d_local[i] <= cut;
    }
    return res;
}

std::vector<std::size_t> eps_graph_components(const PointMatrix& points, double eps) {
    if (eps <= 0.0) throw Error(ErrorKind::parameter, "eps must be > 0");
    auto index = manifold::NeighborIndex::build(points);
    UnionFind uf(points.n);
    for (std::size_t i = 0; i < points.n; ++i) {
        for (std::size_t j : index.radius_member(i, eps, true, false)) {
            if (j > i) uf.merge(i, j);
        }
    }
    std::vector<std::size_t> component(points.n);
    for (std::size_t i = 0; i < points.n; ++i) component[i] = uf.find(i);
    return component;
}

std::vector<char> structural_filter(const PointMatrix& y2, std::span<const std::string> doc_ids,
                                    std::span<const char> survivor, double eps) {
    if (doc_ids.size() != y2.n || survivor.size() != y2.n) {
        throw Error(ErrorKind::parameter, "structural filter inputs disagree on count");
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < y2.n; ++i) {
        if (survivor[i]) keep.push_back(i);
    }
    if (keep.empty()) {
        throw Error(ErrorKind::config, "no documents survive G and L; nothing to build the graph on");
    }

    PointMatrix sub(keep.size(), 2);
    for (std::size_t s = 0; s < keep.size(); ++s) {
        auto src = y2.row(keep[s]);
        std::copy(src.begin(), src.end(), sub.row(s).begin());
    }
    auto component = eps_graph_components(sub, eps);

    // Rank components by size, ties toward the smallest contained doc_id.
    std::map<std::size_t, std::pair<std::size_t, std::string>> comps;  // root -> (size, min id)
    for (std::size_t s = 0; s < keep.size(); ++s) {
        auto& entry = comps[component[s]];
        entry.first += 1;
        const std::string& id = doc_ids[keep[s]];
        if (entry.second.empty() || id < entry.second) entry.second = id;
    }
    std::size_t winner_root = 0;
    std::size_t winner_size = 0;
    std::string winner_id;
    for (const auto& [root, entry] : comps) {
        if (entry.first > winner_size ||
            (entry.first == winner_size && entry.second < winner_id)) {
            winner_root = root;
            winner_size = entry.first;
            winner_id = entry.second;
        }
    }

    std::vector<char> r_pass(y2.n, 0);
    for (std::size_t s = 0; s < keep.size(); ++s) {
        r_pass[keep[s]] = component[s] == winner_root;
    }
    return r_pass;
}

std::pair<std::vector<FilterVerdict>, CascadeReport> run_cascade(
    std::span<const std::string> doc_ids, const PointMatrix& y2, std::span<const char> core_member,
    std::span<const int> region_ids, const CascadeConfig& cfg) {
    cfg.validate();
    if (doc_ids.size() != y2.n || core_member.size() != y2.n || region_ids.size() != y2.n) {
        throw Error(ErrorKind::parameter, "cascade inputs disagree on count");
    }

    auto g = global_filter(y2, core_member, cfg.global_sigma);
    auto l = local_filter(y2, region_ids, cfg.local_sigma, cfg.local_stats_population, g.g_pass);

    std::vector<char> survivor(y2.n, 0);
    std::size_t n_survivors = 0;
    for (std::size_t i = 0; i < y2.n; ++i) {
        survivor[i] = g.g_pass[i] && l.l_pass[i];
        n_survivors += survivor[i] ? 1 : 0;
    }
    std::vector<char> r_pass(y2.n, 0);
    if (n_survivors > 0) {
        r_pass = structural_filter(y2, doc_ids, survivor, cfg.eps_kmeans_graph);
    }

    std::vector<FilterVerdict> verdicts;
    verdicts.reserve(y2.n);
    CascadeReport report;
    report.n_total = y2.n;
    for (std::size_t i = 0; i < y2.n; ++i) {
        verdicts.emplace_back(doc_ids[i], g.d_global[i], l.d_local[i], g.g_pass[i] != 0,
                              l.l_pass[i] != 0, r_pass[i] != 0);
        const auto& v = verdicts.back();
        if (!v.g_pass) ++report.n_global_outliers;
        if (!v.l_pass) ++report.n_local_mavericks;
        if (survivor[i] && !v.r_pass) ++report.n_structural_outliers;
        if (!v.retained) ++report.n_unique_removed;
        if (v.retained) ++report.per_region_survivors[region_ids[i]];
    }
    report.removal_fraction =
        report.n_total == 0 ? 0.0
                            : static_cast<double>(report.n_unique_removed) /
                                  static_cast<double>(report.n_total);

    // Diagnostic component analysis of the density core; reported, never used
    // for retention.
    std::vector<std::size_t> core_rows;
    for (std::size_t i = 0; i < y2.n; ++i) {
        if (core_member[i]) core_rows.push_back(i);
    }
    report.density_diagnostic.eps = cfg.eps_density_graph;
    report.density_diagnostic.n_members = core_rows.size();
    if (!core_rows.empty()) {
        PointMatrix sub(core_rows.size(), 2);
        for (std::size_t s = 0; s < core_rows.size(); ++s) {
            auto src = y2.row(core_rows[s]);
            std::copy(src.begin(), src.end(), sub.row(s).begin());
        }
        auto comp = eps_graph_components(sub, cfg.eps_density_graph);
        std::map<std::size_t, std::size_t> sizes;
        for (std::size_t root : comp) ++sizes[root];
        report.density_diagnostic.n_components = sizes.size();
        for (const auto& [root, size] : sizes) {
            report.density_diagnostic.largest_component =
                std::max(report.density_diagnostic.largest_component, size);
        }
    }

    return {std::move(verdicts), report};
}

}  // namespace tsig::cascade
