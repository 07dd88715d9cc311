#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <vector>

#include "textsignal/gateway/backend.hpp"
#include "textsignal/gateway/stores.hpp"

namespace tsig::gateway {

inline constexpr const char* kCentralityDimId = "__centrality__";
inline constexpr const char* kDefaultCentralityAnchor = "unrelated topic";

// Front door for all inference: splits work into batches, dispatches up to
// max_inflight batches concurrently, preserves input order, and writes
// embeddings through the (optional) write-once store so a document is never
// embedded twice.
class Gateway {
public:
    explicit Gateway(BackendConfig cfg, std::shared_ptr<EmbeddingStore> embeddings = nullptr);

    std::vector<EmbeddingVector> embed_batch(const std::vector<DocumentRecord>& docs);

    std::vector<PoleLogScores> pole_logscores(const std::vector<DocumentRecord>& docs,
                                              const SemanticDimension& dim);

    std::vector<PoleLogScores> pole_logscores(const std::vector<DocumentRecord>& docs,
                                              const std::string& dim_id,
                                              const std::string& low_pole,
                                              const std::string& high_pole);

    // Centrality probe: high pole = target, low pole = an off-topic anchor.
    std::vector<PoleLogScores> centrality_logscores(const std::vector<DocumentRecord>& docs,
                                                    const std::string& target,
                                                    const std::string& anchor = kDefaultCentralityAnchor);

    const BackendConfig& config() const { return cfg_; }
    std::size_t backend_calls() const { return backend_calls_.load(); }

private:
    void check_docs(const std::vector<DocumentRecord>& docs) const;

    BackendConfig cfg_;
    std::unique_ptr<InferenceBackend> backend_;
    std::shared_ptr<EmbeddingStore> embeddings_;
    std::atomic<std::size_t> backend_calls_{0};
};

}  // namespace tsig::gateway
