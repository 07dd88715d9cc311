#pragma once

#include "textsignal/gateway/backend.hpp"

namespace tsig::gateway {

// JSON-over-HTTP client for the two-route inference protocol documented in
// docs/protocol.md (POST /embed, POST /logscores). Retries transport-level
// failures with exponential backoff; protocol violations never retry.
class HttpBackend : public InferenceBackend {
public:
    explicit HttpBackend(const BackendConfig& cfg);

    std::vector<EmbeddingVector> embed_batch(std::span<const DocumentRecord> docs) override;

    std::vector<PoleLogScores> pole_logscores(std::span<const DocumentRecord> docs,
                                              const std::string& dim_id,
                                              const std::string& low_pole,
                                              const std::string& high_pole) override;

private:
    std::string post_json(const std::string& route, const std::string& body);

    BackendConfig cfg_;
};

}  // namespace tsig::gateway
