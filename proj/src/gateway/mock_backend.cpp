#include "textsignal/gateway/mock_backend.hpp"

#include <cmath>

#include "textsignal/error.hpp"
#include "textsignal/util/hash.hpp"

namespace tsig::gateway {

using util::SplitMix64;

namespace {

// ASCII-lowercased tokens split on ASCII non-alphanumerics; multibyte UTF-8
// sequences stay inside tokens.
std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80;
        if (c >= 'A' && c <= 'Z') {
            cur += static_cast<char>(c - 'A' + 'a');
        } else if (keep) {
            cur += static_cast<char>(c);
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

}  // namespace

MockBackend::MockBackend(const BackendConfig& cfg)
    : seed_(cfg.seed), dim_(cfg.mock_dim), model_salt_(util::fnv1a64(cfg.model_name)) {
    if (dim_ == 0) throw Error(ErrorKind::config, "mock backend needs mock_dim > 0");
}

std::vector<float> MockBackend::embed_one(const DocumentRecord& doc) const {
    std::uint64_t base = util::mix64(seed_ ^ model_salt_);
    std::vector<double> acc(dim_, 0.0);

    auto tokens = tokenize(doc.embedding_text());
    if (tokens.empty()) {
        SplitMix64 stream(util::mix64(base ^ util::fnv1a64(doc.doc_id)));
        for (std::size_t d = 0; d < dim_; ++d) acc[d] = stream.next_gaussian();
    } else {
        for (const auto& tok : tokens) {
            SplitMix64 stream(util::mix64(base ^ util::fnv1a64(tok)));
            for (std::size_t d = 0; d < dim_; ++d) acc[d] += stream.next_gaussian();
        }
    }

    double norm2 = 0.0;
    for (double v : acc) norm2 += v * v;
    double inv = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 0.0;
    std::vector<float> out(dim_);
    for (std::size_t d = 0; d < dim_; ++d) out[d] = static_cast<float>(acc[d] * inv);
    if (inv == 0.0) out[0] = 1.0f;
    return out;
}

double MockBackend::logscore(const std::string& doc_id, const std::string& dim_id,
                             const std::string& pole) const {
    std::string key;
    key.reserve(doc_id.size() + dim_id.size() + pole.size() + 2);
    key += doc_id;
    key += '\x1f';
    key += dim_id;
    key += '\x1f';
    key += pole;
    SplitMix64 stream(util::mix64(util::fnv1a64(key) ^ util::mix64(seed_)));
    return stream.next_uniform(-5.0, 0.0);
}

std::vector<EmbeddingVector> MockBackend::embed_batch(std::span<const DocumentRecord> docs) {
    std::vector<std::vector<float>> raw(docs.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < static_cast<long>(docs.size()); ++i) {
        raw[i] = embed_one(docs[i]);
    }
    std::vector<EmbeddingVector> out;
    out.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        out.emplace_back(docs[i].doc_id, std::move(raw[i]));
    }
    return out;
}

std::vector<PoleLogScores> MockBackend::pole_logscores(std::span<const DocumentRecord> docs,
                                                       const std::string& dim_id,
                                                       const std::string& low_pole,
                                                       const std::string& high_pole) {
    std::vector<PoleLogScores> out(docs.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(docs.size()); ++i) {
        out[i] = {docs[i].doc_id, dim_id, logscore(docs[i].doc_id, dim_id, low_pole),
                  logscore(docs[i].doc_id, dim_id, high_pole)};
    }
    return out;
}

}  // namespace tsig::gateway
