#include "demo.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "textsignal/io/corpus_io.hpp"
#include "textsignal/io/fsutil.hpp"
#include "textsignal/io/serde.hpp"
#include "textsignal/util/hash.hpp"

namespace tsig::cli {

namespace {

using util::SplitMix64;

const char* kSyllables[] = {"ka", "ro", "li", "ma", "ten", "vor", "sa", "ne",
                            "du", "pi", "zo", "bra", "gel", "min", "tor", "el",
                            "qui", "fos", "lan", "ver", "mo", "tri", "sul", "pe"};

std::string synth_word(SplitMix64& rng) {
    std::string w;
    std::size_t syllables = 2 + rng.next_below(3);
    for (std::size_t s = 0; s < syllables; ++s) {
        w += kSyllables[rng.next_below(std::size(kSyllables))];
    }
    return w;
}

std::vector<std::string> synth_pool(SplitMix64& rng, std::size_t count, const std::string& tag) {
    std::vector<std::string> pool;
    pool.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        pool.push_back(tag + synth_word(rng));
    }
    return pool;
}

const std::string& pick(const std::vector<std::string>& pool, SplitMix64& rng) {
    return pool[rng.next_below(pool.size())];
}

std::string sentence(const std::vector<std::string>& topic, const std::vector<std::string>& common,
                     SplitMix64& rng, std::size_t words) {
    std::string out;
    for (std::size_t w = 0; w < words; ++w) {
        if (!out.empty()) out += ' ';
        bool from_common = !common.empty() && rng.next_unit() < 0.15;
        out += from_common ? pick(common, rng) : pick(topic, rng);
    }
    return out;
}

std::string date_for(std::size_t i) {
    // spread deterministically across 2022-2024
    int day_index = static_cast<int>(i % 1096);
    int year = 2022 + day_index / 366;
    int month = 1 + (day_index / 28) % 12;
    int day = 1 + day_index % 28;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

}  // namespace

std::vector<DocumentRecord> generate_demo_corpus(std::size_t n_docs, std::uint64_t seed) {
    SplitMix64 rng(util::mix64(seed ^ 0x64656d6f31ULL));

    const std::size_t n_topics = 12;
    std::vector<std::vector<std::string>> topics;
    for (std::size_t t = 0; t < n_topics; ++t) {
        topics.push_back(synth_pool(rng, 60, "t" + std::to_string(t)));
    }
    auto common = synth_pool(rng, 80, "c");
    auto island_pool = synth_pool(rng, 25, "isl");

    std::size_t n_island = n_docs >= 400 ? 20 : 0;
    std::size_t n_scatter = n_docs / 20;  // 5%
    std::size_t n_topic_docs = n_docs - n_island - n_scatter;

    std::vector<DocumentRecord> docs;
    docs.reserve(n_docs);
    for (std::size_t i = 0; i < n_docs; ++i) {
        DocumentRecord d;
        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "%06zu", i);
        d.doc_id = std::string("doc-") + idbuf;
        d.lang = "pt";
        if (i % 10 != 9) d.published_at = date_for(i);  // a tenth lack a date

        if (i < n_topic_docs) {
            const auto& pool = topics[i % n_topics];
            d.title = sentence(pool, common, rng, 4 + rng.next_below(5));
            d.description = sentence(pool, common, rng, 30 + rng.next_below(50));
        } else if (i < n_topic_docs + n_scatter) {
            // scatter: a throwaway vocabulary unique to this document
            auto rare = synth_pool(rng, 40, "x" + std::to_string(i));
            d.title = sentence(rare, {}, rng, 4 + rng.next_below(5));
            d.description = sentence(rare, {}, rng, 30 + rng.next_below(50));
        } else {
            d.title = sentence(island_pool, {}, rng, 4 + rng.next_below(5));
            d.description = sentence(island_pool, {}, rng, 30 + rng.next_below(40));
        }

        double mention_draw = rng.next_unit();
        if (mention_draw < 0.6) d.description += ". A inteligência artificial avança";
        if (mention_draw < 0.2) d.description += " e o AIAct também";
        docs.push_back(std::move(d));
    }
    return docs;
}

void write_demo_bundle(const std::string& out_dir, std::size_t n_docs, std::uint64_t seed,
                       std::size_t embedding_dim) {
    std::filesystem::create_directories(out_dir);
    auto docs = generate_demo_corpus(n_docs, seed);
    io::save_corpus(out_dir + "/corpus.jsonl", docs);
    io::atomic_write_file(out_dir + "/dictionary.json", io::dictionary_to_json(default_dictionary()));

    // neighborhood scales tuned to the demo map's point spacing, which
    // shrinks roughly with sqrt(N)
    double scale = std::sqrt(11922.0 / static_cast<double>(std::max<std::size_t>(n_docs, 100)));
    char buf[64];
    auto scaled = [&](double base) {
        std::snprintf(buf, sizeof(buf), "%.6g", base * scale);
        return std::string(buf);
    };

    std::string conf;
    conf += "# demo pipeline configuration (mock backend, fully offline)\n";
    conf += "backend.kind = mock\n";
    conf += "backend.seed = " + std::to_string(seed) + "\n";
    conf += "backend.dim = " + std::to_string(embedding_dim) + "\n";
    conf += "backend.batch_size = 256\n";
    conf += "projector.kind = reference_reducer\n";
    conf += "projector.seed = " + std::to_string(seed) + "\n";
    conf += "kmeans.k = 15\n";
    conf += "kmeans.seed = " + std::to_string(seed) + "\n";
    conf += "# density/graph scales follow the demo map's coordinate spread\n";
    conf += "density.eps = " + scaled(0.015) + "\n";
    conf += "density.min_pts = 15\n";
    conf += "cascade.eps_kmeans_graph = " + scaled(0.02) + "\n";
    conf += "cascade.eps_density_graph = " + scaled(0.018) + "\n";
    io::atomic_write_file(out_dir + "/demo.conf", conf);
}

}  // namespace tsig::cli
