#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "textsignal/cascade/cascade.hpp"
#include "textsignal/error.hpp"
#include "textsignal/reference/serial.hpp"

using namespace tsig;
using cascade::CascadeConfig;
using cascade::global_filter;
using cascade::local_filter;
using cascade::LocalStatsPopulation;
using cascade::run_cascade;
using cascade::structural_filter;

namespace {

std::vector<char> flags(std::size_t n, char value = 1) { return std::vector<char>(n, value); }

struct Scene {
    PointMatrix pts;
    std::vector<std::string> ids;
    std::vector<char> core;
    std::vector<int> regions;
};

// blob(s) + scatter + island mixtures used by the oracle-equivalence tests
Scene random_scene(util::SplitMix64& rng, std::size_t max_n = 400) {
    Scene scene;
    std::size_t n_blobs = 1 + rng.next_below(3);
    std::vector<PointMatrix> parts;
    for (std::size_t b = 0; b < n_blobs; ++b) {
        std::vector<double> center{rng.next_uniform(-5.0, 5.0), rng.next_uniform(-5.0, 5.0)};
        parts.push_back(test::gaussian_blob(30 + rng.next_below(max_n / (n_blobs + 1)), 2, center,
                                            rng.next_uniform(0.2, 1.0), rng));
    }
    parts.push_back(test::uniform_box(10 + rng.next_below(40), 2, rng, -12.0, 12.0));  // scatter
    std::vector<double> island_center{rng.next_uniform(15.0, 25.0), rng.next_uniform(15.0, 25.0)};
    parts.push_back(test::gaussian_blob(5 + rng.next_below(15), 2, island_center, 0.3, rng));
    scene.pts = test::concat_points(parts);
    scene.ids = test::index_ids(scene.pts.n);
    scene.core.resize(scene.pts.n);
    scene.regions.resize(scene.pts.n);
    for (std::size_t i = 0; i < scene.pts.n; ++i) {
        scene.core[i] = rng.next_unit() < 0.8;  // arbitrary core set: filters must not care
        scene.regions[i] = static_cast<int>(rng.next_below(4));
    }
    if (std::count(scene.core.begin(), scene.core.end(), 1) == 0) scene.core[0] = 1;
    return scene;
}

}  // namespace

TEST_SUITE("cascade") {

TEST_CASE("far points fail the global filter, disc points pass") {
    util::SplitMix64 rng(1);
    PointMatrix pts(105, 2);
    for (std::size_t i = 0; i < 100; ++i) {  // unit disc
        double r = std::sqrt(rng.next_unit());
        double a = rng.next_uniform(0.0, 2.0 * std::numbers::pi);
        pts.row(i)[0] = r * std::cos(a);
        pts.row(i)[1] = r * std::sin(a);
    }
    for (std::size_t i = 100; i < 105; ++i) {  // radius-50 ring
        double a = rng.next_uniform(0.0, 2.0 * std::numbers::pi);
        pts.row(i)[0] = 50.0 * std::cos(a);
        pts.row(i)[1] = 50.0 * std::sin(a);
    }
    std::vector<char> core = flags(105, 0);
    for (std::size_t i = 0; i < 100; ++i) core[i] = 1;

    auto res = global_filter(pts, core, 1.2);
    for (std::size_t i = 100; i < 105; ++i) CHECK_FALSE(res.g_pass[i]);
    std::size_t disc_pass = 0;
    for (std::size_t i = 0; i < 100; ++i) disc_pass += res.g_pass[i] ? 1 : 0;
    CHECK(disc_pass == 100);

    // scalar reference recomputation must agree on every flag and distance
    std::vector<double> ref_d;
    auto ref_pass = ref::global_pass(pts, core, 1.2, &ref_d);
    CHECK(res.g_pass == ref_pass);
    for (std::size_t i = 0; i < pts.n; ++i) CHECK(res.d_global[i] == ref_d[i]);
}

TEST_CASE("identical points all pass the global filter with zero deviation") {
    PointMatrix pts(20, 2);
    for (std::size_t i = 0; i < pts.n; ++i) {
        pts.row(i)[0] = 3.0;
        pts.row(i)[1] = -1.0;
    }
    auto res = global_filter(pts, flags(20), 1.2);
    CHECK(res.stddev == 0.0);
    for (std::size_t i = 0; i < pts.n; ++i) {
        CHECK(res.d_global[i] == 0.0);
        CHECK(res.g_pass[i]);
    }
}

TEST_CASE("a single point anchored on itself passes") {
    PointMatrix pts(1, 2);
    pts.row(0)[0] = 7.0;
    auto res = global_filter(pts, flags(1), 1.2);
    CHECK(res.d_global[0] == 0.0);
    CHECK(res.g_pass[0]);
}

TEST_CASE("an empty density core is a configuration error") {
    PointMatrix pts(5, 2);
    try {
        global_filter(pts, flags(5, 0), 1.2);
        FAIL("expected a config error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::config);
        CHECK(std::string(e.what()).find("density") != std::string::npos);
    }
}

TEST_CASE("a member far from its tight region fails the local filter") {
    util::SplitMix64 rng(2);
    auto blob = test::gaussian_blob(50, 2, {0.0, 0.0}, 0.2, rng);
    PointMatrix pts = blob;
    pts.n += 1;
    pts.data.push_back(40.0);
    pts.data.push_back(0.0);
    std::vector<int> regions(51, 0);

    auto res = local_filter(pts, regions, 1.8, LocalStatsPopulation::full_region);
    CHECK_FALSE(res.l_pass[50]);
    std::size_t passing = 0;
    for (std::size_t i = 0; i < 50; ++i) passing += res.l_pass[i] ? 1 : 0;
    CHECK(passing == 50);

    auto ref_pass = ref::local_pass(pts, regions, 1.8);
    CHECK(res.l_pass == ref_pass);
}

TEST_CASE("tiny regions auto-pass the local filter") {
    PointMatrix pts(3, 2);
    pts.row(0)[0] = 0.0;
    pts.row(1)[0] = 100.0;
    pts.row(2)[0] = 205.0;
    std::vector<int> regions{0, 1, 1};
    auto res = local_filter(pts, regions, 1.8, LocalStatsPopulation::full_region);
    CHECK(res.l_pass[0]);  // one-member region
    CHECK(res.l_pass[1]);  // two-member region
    CHECK(res.l_pass[2]);
    CHECK(res.d_local[0] == 0.0);
}

TEST_CASE("the local filter is translation invariant") {
    util::SplitMix64 rng(3);
    auto region_a = test::gaussian_blob(60, 2, {0.0, 0.0}, 0.5, rng);
    PointMatrix region_b = region_a;
    for (std::size_t i = 0; i < region_b.n; ++i) region_b.row(i)[0] += 100.0;
    auto pts = test::concat_points({region_a, region_b});
    std::vector<int> regions(120, 0);
    std::fill(regions.begin() + 60, regions.end(), 1);

    auto res = local_filter(pts, regions, 1.8, LocalStatsPopulation::full_region);
    for (std::size_t i = 0; i < 60; ++i) CHECK(res.l_pass[i] == res.l_pass[60 + i]);
}

TEST_CASE("the g_survivors population toggle changes only the calibration set") {
    util::SplitMix64 rng(4);
    auto pts = test::uniform_box(100, 2, rng);
    std::vector<int> regions(100, 0);
    std::vector<char> g(100, 1);
    for (std::size_t i = 0; i < 20; ++i) g[i] = 0;

    auto full = local_filter(pts, regions, 1.8, LocalStatsPopulation::full_region, g);
    auto survivors = local_filter(pts, regions, 1.8, LocalStatsPopulation::g_survivors, g);
    CHECK(full.l_pass == ref::local_pass(pts, regions, 1.8));
    CHECK(survivors.l_pass == ref::local_pass(pts, regions, 1.8, g));
}

TEST_CASE("the larger chain survives the structural filter, the smaller is removed") {
    PointMatrix pts(14, 2);
    for (int i = 0; i < 10; ++i) pts.row(i)[0] = 0.5 * i;  // chain A
    for (int i = 0; i < 4; ++i) {                          // chain B, 5 units below
        pts.row(10 + i)[0] = 0.5 * i;
        pts.row(10 + i)[1] = -5.0;
    }
    auto ids = test::index_ids(14);
    auto r = structural_filter(pts, ids, flags(14), 1.2);
    for (int i = 0; i < 10; ++i) CHECK(r[i]);
    for (int i = 10; i < 14; ++i) CHECK_FALSE(r[i]);
    CHECK(r == ref::structural_pass(pts, ids, flags(14), 1.2));
}

TEST_CASE("points sharing a hub form one retained component") {
    PointMatrix pts(9, 2);
    for (int i = 1; i < 9; ++i) {  // all within eps of the origin hub
        double a = 0.7 * i;
        pts.row(i)[0] = 0.9 * std::cos(a);
        pts.row(i)[1] = 0.9 * std::sin(a);
    }
    auto r = structural_filter(pts, test::index_ids(9), flags(9), 1.0);
    CHECK(std::count(r.begin(), r.end(), 1) == 9);
}

TEST_CASE("equal-sized components tie-break toward the smallest doc_id") {
    PointMatrix pts(4, 2);
    pts.row(1)[0] = 0.5;
    pts.row(2)[0] = 50.0;
    pts.row(3)[0] = 50.5;
    std::vector<std::string> ids{"m-3", "m-4", "a-1", "a-2"};  // right pair owns the smallest id
    auto r = structural_filter(pts, ids, flags(4), 1.0);
    CHECK_FALSE(r[0]);
    CHECK_FALSE(r[1]);
    CHECK(r[2]);
    CHECK(r[3]);
    CHECK(r == ref::structural_pass(pts, ids, flags(4), 1.0));
}

TEST_CASE("edges at exactly eps are not connected") {
    PointMatrix pts(3, 2);
    pts.row(1)[0] = 1.0;  // exactly eps away from point 0
    pts.row(2)[0] = 1.5;
    auto comp = cascade::eps_graph_components(pts, 1.0);
    CHECK(comp[0] != comp[1]);  // strict <: boundary pair stays apart
    CHECK(comp[1] == comp[2]);
}

TEST_CASE("structural filter on an empty survivor set is a configuration error") {
    PointMatrix pts(3, 2);
    CHECK_THROWS_AS(structural_filter(pts, test::index_ids(3), flags(3, 0), 1.0), Error);
}

TEST_CASE("cascade flags match the brute-force stage oracles on random scenes") {
    util::SplitMix64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        auto scene = random_scene(rng);
        CascadeConfig cfg;
        cfg.global_sigma = rng.next_uniform(0.5, 2.0);
        cfg.local_sigma = rng.next_uniform(1.0, 2.5);
        cfg.eps_kmeans_graph = rng.next_uniform(0.5, 2.0);
        auto [verdicts, report] = run_cascade(scene.ids, scene.pts, scene.core, scene.regions, cfg);

        auto g_ref = ref::global_pass(scene.pts, scene.core, cfg.global_sigma);
        auto l_ref = ref::local_pass(scene.pts, scene.regions, cfg.local_sigma);
        std::vector<char> survivors(scene.pts.n);
        for (std::size_t i = 0; i < scene.pts.n; ++i) survivors[i] = g_ref[i] && l_ref[i];
        auto r_ref = ref::structural_pass(scene.pts, scene.ids, survivors, cfg.eps_kmeans_graph);

        std::size_t g_fail = 0, l_fail = 0, r_fail = 0, removed = 0;
        for (std::size_t i = 0; i < scene.pts.n; ++i) {
            CHECK(verdicts[i].g_pass == (g_ref[i] != 0));
            CHECK(verdicts[i].l_pass == (l_ref[i] != 0));
            CHECK(verdicts[i].r_pass == (r_ref[i] != 0));
            CHECK(verdicts[i].retained == (verdicts[i].g_pass && verdicts[i].l_pass && verdicts[i].r_pass));
            g_fail += verdicts[i].g_pass ? 0 : 1;
            l_fail += verdicts[i].l_pass ? 0 : 1;
            r_fail += (survivors[i] && !verdicts[i].r_pass) ? 1 : 0;
            removed += verdicts[i].retained ? 0 : 1;
        }
        CHECK(report.n_global_outliers == g_fail);
        CHECK(report.n_local_mavericks == l_fail);
        CHECK(report.n_structural_outliers == r_fail);
        CHECK(report.n_unique_removed == removed);
        CHECK(report.n_unique_removed <=
              report.n_global_outliers + report.n_local_mavericks + report.n_structural_outliers);
        CHECK(report.removal_fraction ==
              doctest::Approx(static_cast<double>(removed) / static_cast<double>(scene.pts.n)));
    }
}

TEST_CASE("a clean ring scene removes nothing") {
    PointMatrix pts(60, 2);
    for (int i = 0; i < 60; ++i) {
        double a = 2.0 * std::numbers::pi * i / 60.0;
        pts.row(i)[0] = std::cos(a);
        pts.row(i)[1] = std::sin(a);
    }
    CascadeConfig cfg;
    auto [verdicts, report] = run_cascade(test::index_ids(60), pts, flags(60),
                                          std::vector<int>(60, 0), cfg);
    CHECK(report.n_unique_removed == 0);
    CHECK(report.removal_fraction == 0.0);
    CHECK(report.per_region_survivors.at(0) == 60);
}

TEST_CASE("raising the global sigma never shrinks the pass set") {
    util::SplitMix64 rng(6);
    auto scene = random_scene(rng);
    auto strict = global_filter(scene.pts, scene.core, 0.8);
    auto loose = global_filter(scene.pts, scene.core, 1.6);
    for (std::size_t i = 0; i < scene.pts.n; ++i) {
        if (strict.g_pass[i]) CHECK(loose.g_pass[i]);
    }
}

TEST_CASE("raising eps never shrinks the largest component") {
    util::SplitMix64 rng(7);
    auto scene = random_scene(rng);
    std::size_t prev = 0;
    for (double eps : {0.3, 0.6, 1.0, 1.5, 2.5}) {
        auto comp = cascade::eps_graph_components(scene.pts, eps);
        std::map<std::size_t, std::size_t> sizes;
        for (auto c : comp) ++sizes[c];
        std::size_t largest = 0;
        for (const auto& [root, size] : sizes) largest = std::max(largest, size);
        CHECK(largest >= prev);
        prev = largest;
    }
}

TEST_CASE("permuting documents permutes verdicts without changing them") {
    util::SplitMix64 rng(8);
    auto scene = random_scene(rng, 150);
    CascadeConfig cfg;
    auto [base, base_report] = run_cascade(scene.ids, scene.pts, scene.core, scene.regions, cfg);

    std::vector<std::size_t> perm(scene.pts.n);
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);

    Scene shuffled;
    shuffled.pts = PointMatrix(scene.pts.n, 2);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        auto src = scene.pts.row(perm[i]);
        std::copy(src.begin(), src.end(), shuffled.pts.row(i).begin());
        shuffled.ids.push_back(scene.ids[perm[i]]);
        shuffled.core.push_back(scene.core[perm[i]]);
        shuffled.regions.push_back(scene.regions[perm[i]]);
    }
    auto [got, got_report] = run_cascade(shuffled.ids, shuffled.pts, shuffled.core,
                                         shuffled.regions, cfg);
    // decisions must be identical; distances may wobble by summation-order ULPs
    for (std::size_t i = 0; i < perm.size(); ++i) {
        const auto& a = got[i];
        const auto& b = base[perm[i]];
        CHECK(a.doc_id == b.doc_id);
        CHECK(a.g_pass == b.g_pass);
        CHECK(a.l_pass == b.l_pass);
        CHECK(a.r_pass == b.r_pass);
        CHECK(a.retained == b.retained);
        CHECK(a.d_global == doctest::Approx(b.d_global).epsilon(1e-12));
        CHECK(a.d_local == doctest::Approx(b.d_local).epsilon(1e-12));
    }
    CHECK(got_report == base_report);
}

TEST_CASE("the density graph diagnostic never affects retention") {
    util::SplitMix64 rng(9);
    auto scene = random_scene(rng, 150);
    CascadeConfig a;
    a.eps_density_graph = 0.2;
    CascadeConfig b;
    b.eps_density_graph = 3.0;
    auto [va, ra] = run_cascade(scene.ids, scene.pts, scene.core, scene.regions, a);
    auto [vb, rb] = run_cascade(scene.ids, scene.pts, scene.core, scene.regions, b);
    CHECK(va == vb);
    CHECK(ra.density_diagnostic.n_components >= rb.density_diagnostic.n_components);
}

TEST_CASE("cascade config validation") {
    CascadeConfig cfg;
    cfg.global_sigma = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

}  // TEST_SUITE
