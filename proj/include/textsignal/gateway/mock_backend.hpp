#pragma once

#include "textsignal/gateway/backend.hpp"

namespace tsig::gateway {

// Fully offline stand-in for the inference endpoint. Embeddings are
// unit-norm sums of stable-hash-derived token vectors, so documents that
// share vocabulary land near each other; pole log-scores are stable-hash
// uniforms in [-5, 0] keyed by (doc_id, dim_id, pole label, seed). Both are
// bit-reproducible across processes.
class MockBackend : public InferenceBackend {
public:
    explicit MockBackend(const BackendConfig& cfg);

    std::vector<EmbeddingVector> embed_batch(std::span<const DocumentRecord> docs) override;

    std::vector<PoleLogScores> pole_logscores(std::span<const DocumentRecord> docs,
                                              const std::string& dim_id,
                                              const std::string& low_pole,
                                              const std::string& high_pole) override;

    // Exposed for direct use in tests.
    std::vector<float> embed_one(const DocumentRecord& doc) const;
    double logscore(const std::string& doc_id, const std::string& dim_id,
                    const std::string& pole) const;

private:
    std::uint64_t seed_;
    std::size_t dim_;
    std::uint64_t model_salt_;
};

}  // namespace tsig::gateway
