#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "textsignal/cascade/cascade.hpp"
#include "textsignal/error.hpp"
#include "textsignal/io/corpus_io.hpp"
#include "textsignal/io/csv.hpp"
#include "textsignal/io/embedding_cache.hpp"
#include "textsignal/io/fsutil.hpp"
#include "textsignal/io/serde.hpp"
#include "textsignal/io/svg_plot.hpp"
#include "textsignal/io/tables.hpp"
#include "textsignal/util/hash.hpp"

using namespace tsig;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
    auto dir = fs::temp_directory_path() / (std::string("tsig_io_") + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("double formatting round-trips exactly") {
    util::SplitMix64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        double v = (rng.next_unit() - 0.5) * std::pow(10.0, rng.next_uniform(-12.0, 12.0));
        CHECK(io::parse_double(io::format_double(v)) == v);
    }
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::parse_double("2.5") == 2.5);
    CHECK_THROWS_AS(io::parse_double("2.5x"), Error);
}

TEST_CASE("csv quoting survives commas, quotes and newlines") {
    std::string raw = "a,\"b\"\nc";
    auto line = io::csv_field(raw) + "," + io::csv_field("plain");
    auto fields = io::split_csv_line(line);
    REQUIRE(fields.size() == 2);
    CHECK(fields[0] == raw);
    CHECK(fields[1] == "plain");
}

TEST_CASE("corpus JSONL round-trip") {
    std::vector<DocumentRecord> docs{test::make_doc("a1", "Título açaí", "descrição ✓"),
                                     test::make_doc("a2")};
    docs[0].published_at = "2023-05-01";
    docs[0].lang = "pt";
    auto text = io::render_corpus_jsonl(docs);
    CHECK(io::parse_corpus_jsonl(text) == docs);
}

TEST_CASE("malformed corpus lines carry the line number") {
    std::string text = "{\"doc_id\":\"a1\",\"title\":\"t\",\"description\":\"d\"}\nnot json\n";
    CHECK_THROWS_WITH_AS(io::parse_corpus_jsonl(text), doctest::Contains("line 2"), Error);

    std::string missing = "{\"doc_id\":\"a1\",\"title\":\"t\",\"description\":\"d\"}\n{\"title\":\"t\"}\n";
    CHECK_THROWS_WITH_AS(io::parse_corpus_jsonl(missing), doctest::Contains("line 2"), Error);
}

TEST_CASE("embedding cache round-trips bit-exactly") {
    auto dir = temp_dir("cache");
    util::SplitMix64 rng(7);
    std::vector<EmbeddingVector> rows;
    for (int i = 0; i < 5; ++i) {
        std::vector<float> values(17);
        for (auto& v : values) v = static_cast<float>(rng.next_uniform(-3.0, 3.0));
        rows.emplace_back("doc-" + std::to_string(i), values);
    }
    auto path = (dir / "emb.tsig").string();
    io::write_embedding_cache(path, rows);
    CHECK(io::embedding_cache_exists(path));
    auto loaded = io::read_embedding_cache(path);
    CHECK(loaded == rows);
}

TEST_CASE("embedding cache rejects truncated files") {
    auto dir = temp_dir("cache_trunc");
    auto path = (dir / "emb.tsig").string();
    io::write_embedding_cache(path, {EmbeddingVector("a", {1.0f, 2.0f})});
    auto bytes = io::read_file(path);
    io::atomic_write_file(path, bytes.substr(0, bytes.size() - 3));
    CHECK_THROWS_AS(io::read_embedding_cache(path), Error);
}

TEST_CASE("projection csv round-trips bit-equal coordinates") {
    io::ProjectionTable table;
    table.dims = 5;
    table.doc_ids = {"a1", "a2,with comma"};
    table.points = PointMatrix(2, 5);
    util::SplitMix64 rng(3);
    for (auto& v : table.points.data) v = rng.next_uniform(-10.0, 10.0);
    auto text = io::render_projection_csv(table);
    CHECK(io::parse_projection_csv(text) == table);
    CHECK(text.find("doc_id,c1,c2,c3,c4,c5\n") == 0);
}

TEST_CASE("regions, verdicts, scores and logscore tables round-trip") {
    std::vector<RegionAssignment> regions{{"a1", 3, true}, {"a2", 0, false}};
    CHECK(io::parse_regions_csv(io::render_regions_csv(regions)) == regions);

    std::vector<FilterVerdict> verdicts{FilterVerdict("a1", 0.5, 1.25, true, true, false),
                                        FilterVerdict("a2", 0.0, 0.0, true, true, true)};
    CHECK(io::parse_verdicts_csv(io::render_verdicts_csv(verdicts)) == verdicts);

    auto dict = default_dictionary();
    std::map<std::string, double> s;
    for (const auto& dim : dict.dimensions) s[dim.dim_id] = 0.25;
    std::vector<ScoreVector> scores{ScoreVector("a1", s, 0.625), ScoreVector("a2", s)};
    CHECK(io::parse_scores_csv(io::render_scores_csv(scores, dict)) == scores);

    std::vector<io::LogScoreRow> logs{{"dict", "dim", "a1", -1.5, -0.25}};
    CHECK(io::parse_logscore_csv(io::render_logscore_csv(logs)) == logs);
}

TEST_CASE("dictionary, kmeans model, report and profile JSON round-trip") {
    auto dict = default_dictionary();
    CHECK(io::dictionary_from_json(io::dictionary_to_json(dict)) == dict);

    partition::KMeansModel model;
    model.k = 2;
    model.seed = 42;
    model.dim = 5;
    model.centroids = PointMatrix(2, 5);
    model.centroids.row(1)[4] = -1.25;
    model.inertia = 3.5;
    model.iterations_run = 7;
    auto loaded = io::kmeans_from_json(io::kmeans_to_json(model));
    CHECK(loaded.centroids == model.centroids);
    CHECK(loaded.inertia == model.inertia);
    CHECK(loaded.seed == model.seed);

    cascade::CascadeReport report;
    report.n_total = 10;
    report.n_global_outliers = 2;
    report.n_local_mavericks = 1;
    report.n_structural_outliers = 1;
    report.n_unique_removed = 3;
    report.removal_fraction = 0.3;
    report.per_region_survivors = {{0, 4}, {2, 3}};
    report.density_diagnostic = {1.0, 8, 2, 6};
    CHECK(io::cascade_report_from_json(io::cascade_report_to_json(report)) == report);

    semantics::CorpusProfile profile;
    profile.dict_id = "d";
    profile.n_docs = 4;
    profile.population = "all";
    profile.band_fractions["dim"] = {0.25, 0.25, 0.25, 0.25};
    profile.stats["dim"] = {0.5, 0.45, 0.1, 0.0};
    profile.centrality_stats = semantics::DimensionStats{0.7, 0.7, 0.05, 0.0};
    CHECK(io::profile_from_json(io::profile_to_json(profile)) == profile);
}

TEST_CASE("checksums match the FNV-1a reference vector and detect edits") {
    CHECK(io::checksum_hex("abc") == "e71fa2190541574b");
    CHECK(io::checksum_hex("abd") != io::checksum_hex("abc"));
}

TEST_CASE("atomic write leaves no temp file behind") {
    auto dir = temp_dir("atomic");
    auto path = dir / "out.txt";
    io::atomic_write_file(path, "hello");
    CHECK(io::read_file(path) == "hello");
    CHECK_FALSE(fs::exists(dir / "out.txt.tmp"));
}

TEST_CASE("svg scatter renders one circle per point") {
    PointMatrix pts(4, 2);
    util::SplitMix64 rng(5);
    for (auto& v : pts.data) v = rng.next_unit();
    std::vector<std::string> fills(4, "#4e79a7");
    auto svg = io::render_scatter_svg(pts, fills, {{"class a", "#4e79a7"}}, {});
    CHECK(count_occurrences(svg, "<circle") == 4);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("class a") != std::string::npos);
}

}  // TEST_SUITE
