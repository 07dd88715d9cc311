#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "helpers.hpp"
#include "textsignal/error.hpp"
#include "textsignal/io/fsutil.hpp"
#include "textsignal/io/tables.hpp"
#include "textsignal/manifold/neighbor_index.hpp"
#include "textsignal/manifold/projector.hpp"
#include "textsignal/manifold/twonn.hpp"
#include "textsignal/reference/serial.hpp"

using namespace tsig;
using manifold::NeighborIndex;
using manifold::Projection;
using manifold::ProjectorKind;
using manifold::ProjectorSpec;

namespace {

std::vector<EmbeddingVector> embeddings_from(const PointMatrix& pts) {
    std::vector<EmbeddingVector> out;
    for (std::size_t i = 0; i < pts.n; ++i) {
        std::vector<float> v(pts.dim);
        for (std::size_t d = 0; d < pts.dim; ++d) v[d] = static_cast<float>(pts.row(i)[d]);
        out.emplace_back("doc-" + std::to_string(i), std::move(v));
    }
    return out;
}

double max_pairwise_distance_error(const Projection& proj, const PointMatrix& original,
                                   std::size_t pairs, util::SplitMix64& rng) {
    double worst = 0.0;
    for (std::size_t t = 0; t < pairs; ++t) {
        std::size_t i = static_cast<std::size_t>(rng.next_below(original.n));
        std::size_t j = static_cast<std::size_t>(rng.next_below(original.n));
        double d_orig = std::sqrt(squared_distance(original.row(i), original.row(j)));
        double d_proj = std::sqrt(squared_distance(proj.points.row(i), proj.points.row(j)));
        worst = std::max(worst, std::abs(d_orig - d_proj));
    }
    return worst;
}

// Points on a planted k-plane embedded in ambient_dim dimensions, via a
// random (seeded) orthonormal basis.
PointMatrix planted_plane(std::size_t n, std::size_t k, std::size_t ambient_dim,
                          util::SplitMix64& rng) {
    std::vector<std::vector<double>> basis;
    for (std::size_t b = 0; b < k; ++b) {
        std::vector<double> v(ambient_dim);
        for (auto& x : v) x = rng.next_gaussian();
        for (const auto& prev : basis) {
            double dot = 0.0;
            for (std::size_t d = 0; d < ambient_dim; ++d) dot += v[d] * prev[d];
            for (std::size_t d = 0; d < ambient_dim; ++d) v[d] -= dot * prev[d];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (auto& x : v) x /= norm;
        basis.push_back(std::move(v));
    }
    PointMatrix pts(n, ambient_dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t b = 0; b < k; ++b) {
            double coeff = rng.next_uniform(-5.0, 5.0);
            for (std::size_t d = 0; d < ambient_dim; ++d) pts.row(i)[d] += coeff * basis[b][d];
        }
    }
    return pts;
}

}  // namespace

TEST_SUITE("manifold") {

TEST_CASE("knn on three collinear points") {
    PointMatrix pts(3, 2);
    pts.row(1)[0] = 1.0;
    pts.row(2)[0] = 3.0;
    auto index = NeighborIndex::build(pts);
    auto nn = index.knn_member(0, 2);
    REQUIRE(nn.size() == 2);
    CHECK(nn[0].index == 1);
    CHECK(nn[0].dist == 1.0);
    CHECK(nn[1].index == 2);
    CHECK(nn[1].dist == 3.0);
}

TEST_CASE("knn parameter and contract edges") {
    PointMatrix pts(3, 2);
    pts.row(1)[0] = 1.0;
    pts.row(2)[1] = 2.0;
    auto index = NeighborIndex::build(pts);
    CHECK_THROWS_AS(index.knn_member(0, 0), Error);
    CHECK(index.knn_member(0, 10).size() == 2);  // k > N: all non-self members
    CHECK(index.knn_point(pts.row(0), 10).size() == 3);
    auto empty = NeighborIndex::build(PointMatrix(0, 2));
    double q[2] = {0.0, 0.0};
    CHECK_THROWS_AS(empty.knn_point({q, 2}, 1), Error);
}

TEST_CASE("index knn agrees exactly with the exhaustive scan (2D grid and 5D kd)") {
    util::SplitMix64 rng(101);
    for (std::size_t trial = 0; trial < 30; ++trial) {
        std::size_t dim = trial % 2 == 0 ? 2 : 5;
        std::size_t n = 20 + rng.next_below(480);
        auto pts = test::uniform_box(n, dim, rng, -5.0, 5.0);
        // duplicate some rows so ties and zero distances occur
        for (std::size_t d = 0; d < pts.dim; ++d) pts.row(n - 1)[d] = pts.row(0)[d];
        auto index = NeighborIndex::build(pts);

        std::size_t k = 1 + rng.next_below(12);
        std::size_t member = static_cast<std::size_t>(rng.next_below(n));
        CHECK(index.knn_member(member, k) == ref::brute_knn(pts, pts.row(member), k, member));

        std::vector<double> q(dim);
        for (auto& v : q) v = rng.next_uniform(-8.0, 8.0);
        CHECK(index.knn_point(q, k) == ref::brute_knn(pts, q, k));
    }
}

TEST_CASE("radius queries agree with brute-force edge enumeration under strict <") {
    util::SplitMix64 rng(202);
    for (std::size_t trial = 0; trial < 10; ++trial) {
        std::size_t n = 30 + rng.next_below(170);
        auto pts = test::uniform_box(n, 2, rng);
        auto index = NeighborIndex::build(pts);
        double eps = rng.next_uniform(0.05, 0.4);

        auto expected = ref::brute_eps_edges(pts, eps);
        std::vector<std::pair<std::size_t, std::size_t>> got;
        for (std::size_t i = 0; i < n; ++i) {
            for (auto j : index.radius_member(i, eps, true, false)) {
                if (j > i) got.emplace_back(i, j);
            }
        }
        CHECK(got == expected);
    }
}

TEST_CASE("twonn formula identity: all ratios equal to e give exactly 1") {
    std::vector<double> mu(50, std::exp(1.0));
    double sum = 0.0;
    for (double m : mu) sum += std::log(m);
    CHECK(manifold::twonn_from_ratios(mu) == 50.0 / sum);
    CHECK(manifold::twonn_from_ratios(mu) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("twonn estimate is invariant under isotropic scaling") {
    util::SplitMix64 rng(303);
    auto pts = test::uniform_box(400, 3, rng);
    auto base = manifold::twonn_estimate(pts);

    auto scaled = pts;
    for (auto& v : scaled.data) v *= 4.0;  // power of two: exact in binary
    CHECK(manifold::twonn_estimate(scaled).dimension == base.dimension);

    auto scaled2 = pts;
    for (auto& v : scaled2.data) v *= 3.7;
    CHECK(manifold::twonn_estimate(scaled2).dimension ==
          doctest::Approx(base.dimension).epsilon(1e-9));
}

TEST_CASE("twonn drops duplicates and errors when too few points survive") {
    util::SplitMix64 rng(404);
    auto pts = test::uniform_box(14, 3, rng);
    // two duplicated pairs -> four dropped points
    for (std::size_t d = 0; d < 3; ++d) {
        pts.row(1)[d] = pts.row(0)[d];
        pts.row(3)[d] = pts.row(2)[d];
    }
    auto res = manifold::twonn_estimate(pts);
    CHECK(res.dropped == 4);
    CHECK(res.used == 10);

    CHECK_THROWS_AS(manifold::twonn_estimate(test::uniform_box(9, 3, rng)), Error);

    auto all_same = PointMatrix(12, 3);
    CHECK_THROWS_AS(manifold::twonn_estimate(all_same), Error);
}

TEST_CASE("twonn recovers the generating dimension of planted samples") {
    util::SplitMix64 rng(505);
    auto cube = test::uniform_box(3000, 4, rng);
    double d4 = manifold::twonn_estimate(cube).dimension;
    CHECK(d4 > 3.5);
    CHECK(d4 < 4.5);

    PointMatrix segment(1000, 5);
    for (std::size_t i = 0; i < segment.n; ++i) segment.row(i)[2] = rng.next_unit();
    double d1 = manifold::twonn_estimate(segment).dimension;
    CHECK(d1 > 0.85);
    CHECK(d1 < 1.15);
}

TEST_CASE("reference reducer recovers a planted plane up to rotation") {
    util::SplitMix64 rng(606);
    auto pts = planted_plane(200, 2, 10, rng);
    ProjectorSpec spec;
    spec.kind = ProjectorKind::reference_reducer;
    spec.target_dims = 2;
    auto proj = manifold::project(embeddings_from(pts), spec);
    CHECK(max_pairwise_distance_error(proj, pts, 500, rng) < 1e-6);
}

TEST_CASE("reducer gram and iterative paths also preserve planted structure") {
    util::SplitMix64 rng(707);
    // D above the dense limit with few points: Gram path
    auto gram_pts = planted_plane(40, 2, 2100, rng);
    ProjectorSpec spec;
    spec.target_dims = 2;
    auto gram_proj = manifold::project(embeddings_from(gram_pts), spec);
    CHECK(max_pairwise_distance_error(gram_proj, gram_pts, 300, rng) < 1e-6);

    // both N and D above the dense limit: subspace iteration
    auto iter_pts = planted_plane(2100, 2, 2100, rng);
    spec.seed = 11;
    auto iter_proj = manifold::project(embeddings_from(iter_pts), spec);
    CHECK(max_pairwise_distance_error(iter_proj, iter_pts, 300, rng) < 1e-6);
}

TEST_CASE("reducer degenerate and error cases") {
    std::vector<EmbeddingVector> same;
    for (int i = 0; i < 5; ++i) {
        same.emplace_back("doc-" + std::to_string(i), std::vector<float>{1.0f, 2.0f, 3.0f});
    }
    ProjectorSpec spec;
    spec.target_dims = 2;
    auto proj = manifold::project(same, spec);
    for (std::size_t i = 0; i < proj.points.n; ++i) {
        CHECK(proj.points.row(i)[0] == proj.points.row(0)[0]);
        CHECK(proj.points.row(i)[1] == proj.points.row(0)[1]);
    }

    std::vector<EmbeddingVector> narrow{EmbeddingVector("a", {1.0f}), EmbeddingVector("b", {2.0f})};
    CHECK_THROWS_AS(manifold::project(narrow, spec), Error);

    spec.target_dims = 3;
    CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("external file projection is a pure key-join, bit-equal to the file") {
    auto dir = std::filesystem::temp_directory_path() / "tsig_proj";
    std::filesystem::create_directories(dir);
    auto path = (dir / "y2.csv").string();

    io::ProjectionTable table;
    table.dims = 2;
    table.doc_ids = {"doc-2", "doc-0", "doc-1"};  // deliberately shuffled
    table.points = PointMatrix(3, 2);
    util::SplitMix64 rng(808);
    for (auto& v : table.points.data) v = rng.next_uniform(-7.0, 7.0);
    io::atomic_write_file(path, io::render_projection_csv(table));

    std::vector<EmbeddingVector> embs;
    for (int i = 0; i < 3; ++i) {
        embs.emplace_back("doc-" + std::to_string(i), std::vector<float>{0.0f, 0.0f});
    }
    ProjectorSpec spec;
    spec.kind = ProjectorKind::external_file;
    spec.target_dims = 2;
    spec.file = path;
    auto proj = manifold::project(embs, spec);
    REQUIRE(proj.doc_ids == std::vector<std::string>{"doc-0", "doc-1", "doc-2"});
    CHECK(proj.points.row(0)[0] == table.points.row(1)[0]);
    CHECK(proj.points.row(1)[1] == table.points.row(2)[1]);
    CHECK(proj.points.row(2)[0] == table.points.row(0)[0]);

    embs.emplace_back("doc-9", std::vector<float>{0.0f, 0.0f});
    CHECK_THROWS_AS(manifold::project(embs, spec), Error);
}

TEST_CASE("merge_projections joins by doc_id and validates") {
    Projection z5{5, {"a", "b"}, PointMatrix(2, 5)};
    Projection y2{2, {"b", "a"}, PointMatrix(2, 2)};
    y2.points.row(0)[0] = 9.0;
    auto merged = manifold::merge_projections(z5, y2);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].doc_id == "a");
    CHECK(merged[0].y2[0] == 0.0);
    CHECK(merged[1].doc_id == "b");
    CHECK(merged[1].y2[0] == 9.0);

    Projection missing{2, {"a"}, PointMatrix(1, 2)};
    CHECK_THROWS_AS(manifold::merge_projections(z5, missing), Error);
}

}  // TEST_SUITE
