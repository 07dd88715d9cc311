#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "textsignal/core/types.hpp"

namespace tsig::gateway {

// Article-conditioned log-scores for the two poles of one dimension. Any
// shared additive constant cancels in the scoring formula, so these may be
// log-probabilities or raw logits.
struct PoleLogScores {
    std::string doc_id;
    std::string dim_id;
    double lambda_low = 0.0;
    double lambda_high = 0.0;

    bool operator==(const PoleLogScores&) const = default;
};

enum class BackendKind { remote, mock };

struct BackendConfig {
    BackendKind kind = BackendKind::mock;
    std::string base_url;                       // remote only
    std::string model_name = "mock-encoder";
    int batch_size = 32;
    std::chrono::milliseconds timeout{10000};
    int retry_max = 3;
    std::chrono::milliseconds retry_backoff{200};  // doubled per attempt
    int max_inflight = 4;                          // concurrent batches
    std::uint64_t seed = 0;                        // mock only
    std::size_t mock_dim = 4096;                   // mock embedding dimension

    void validate() const;  // remote requires base_url
};

// Raw inference surface: one call per batch, output[i] corresponds to
// input[i]. Implementations must be safe to call from multiple threads.
class InferenceBackend {
public:
    virtual ~InferenceBackend() = default;

    virtual std::vector<EmbeddingVector> embed_batch(std::span<const DocumentRecord> docs) = 0;

    virtual std::vector<PoleLogScores> pole_logscores(std::span<const DocumentRecord> docs,
                                                      const std::string& dim_id,
                                                      const std::string& low_pole,
                                                      const std::string& high_pole) = 0;
};

std::unique_ptr<InferenceBackend> make_backend(const BackendConfig& cfg);

}  // namespace tsig::gateway
