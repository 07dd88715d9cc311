#include "textsignal/gateway/gateway.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "textsignal/error.hpp"

namespace tsig::gateway {

namespace {

// Runs fn(batch) for every batch index, at most max_inflight at a time.
// The first failing batch (lowest index) wins the rethrow so error surfaces
// do not depend on scheduling.
void run_batches(std::size_t n_batches, int max_inflight, const std::function<void(std::size_t)>& fn) {
    if (n_batches == 0) return;
    if (n_batches == 1 || max_inflight == 1) {
        for (std::size_t b = 0; b < n_batches; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::size_t err_batch = n_batches;
    std::exception_ptr err;

    auto worker = [&] {
        while (true) {
            std::size_t b = next.fetch_add(1);
            if (b >= n_batches) return;
            try {
                fn(b);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (b < err_batch) {
                    err_batch = b;
                    err = std::current_exception();
                }
            }
        }
    };

    std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(max_inflight), n_batches);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace

Gateway::Gateway(BackendConfig cfg, std::shared_ptr<EmbeddingStore> embeddings)
    : cfg_(std::move(cfg)), backend_(make_backend(cfg_)), embeddings_(std::move(embeddings)) {}

void Gateway::check_docs(const std::vector<DocumentRecord>& docs) const {
    if (docs.empty()) throw Error(ErrorKind::parameter, "document list is empty");
    for (const auto& d : docs) {
        if (d.doc_id.empty()) throw Error(ErrorKind::validation, "document with empty doc_id");
        if (d.title.empty() && d.description.empty()) {
            throw Error(ErrorKind::validation, "document '" + d.doc_id + "' has no text");
        }
    }
}

std::vector<EmbeddingVector> Gateway::embed_batch(const std::vector<DocumentRecord>& docs) {
    check_docs(docs);

    std::vector<std::optional<EmbeddingVector>> results(docs.size());
    std::vector<std::size_t> missing;
    missing.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (embeddings_) {
            if (auto hit = embeddings_->get(docs[i].doc_id, cfg_.model_name)) {
                results[i].emplace(docs[i].doc_id, std::move(*hit));
                continue;
            }
        }
        missing.push_back(i);
    }

    std::size_t bsz = static_cast<std::size_t>(cfg_.batch_size);
    std::size_t n_batches = (missing.size() + bsz - 1) / bsz;
    run_batches(n_batches, cfg_.max_inflight, [&](std::size_t b) {
        std::size_t lo = b * bsz;
        std::size_t hi = std::min(lo + bsz, missing.size());
        std::vector<DocumentRecord> chunk;
        chunk.reserve(hi - lo);
        for (std::size_t j = lo; j < hi; ++j) chunk.push_back(docs[missing[j]]);
        backend_calls_.fetch_add(1);
        auto got = backend_->embed_batch(chunk);
        if (got.size() != chunk.size()) {
            throw Error(ErrorKind::protocol, "backend returned wrong embedding count");
        }
        for (std::size_t j = lo; j < hi; ++j) {
            auto& vec = got[j - lo];
            if (vec.doc_id() != docs[missing[j]].doc_id) {
                throw Error(ErrorKind::protocol, "backend broke embedding order at '" + vec.doc_id() + "'");
            }
            if (embeddings_) embeddings_->put(vec.doc_id(), cfg_.model_name, vec.values());
            results[missing[j]] = std::move(vec);
        }
    });

    std::vector<EmbeddingVector> out;
    out.reserve(docs.size());
    std::size_t dim = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (i == 0) {
            dim = results[i]->dim();
        } else if (results[i]->dim() != dim) {
            throw Error(ErrorKind::protocol,
                        "dimension mismatch: doc '" + docs[i].doc_id + "' has " +
                            std::to_string(results[i]->dim()) + ", batch dimension is " +
                            std::to_string(dim));
        }
        out.push_back(std::move(*results[i]));
    }
    return out;
}

std::vector<PoleLogScores> Gateway::pole_logscores(const std::vector<DocumentRecord>& docs,
                                                   const SemanticDimension& dim) {
    dim.validate();
    return pole_logscores(docs, dim.dim_id, dim.low_pole, dim.high_pole);
}

std::vector<PoleLogScores> Gateway::pole_logscores(const std::vector<DocumentRecord>& docs,
                                                   const std::string& dim_id,
                                                   const std::string& low_pole,
                                                   const std::string& high_pole) {
    check_docs(docs);

    std::vector<PoleLogScores> out(docs.size());
    std::size_t bsz = static_cast<std::size_t>(cfg_.batch_size);
    std::size_t n_batches = (docs.size() + bsz - 1) / bsz;
    run_batches(n_batches, cfg_.max_inflight, [&](std::size_t b) {
        std::size_t lo = b * bsz;
        std::size_t hi = std::min(lo + bsz, docs.size());
        std::vector<DocumentRecord> chunk(docs.begin() + lo, docs.begin() + hi);
        backend_calls_.fetch_add(1);
        auto got = backend_->pole_logscores(chunk, dim_id, low_pole, high_pole);
        if (got.size() != chunk.size()) {
            throw Error(ErrorKind::protocol, "backend returned wrong log-score count");
        }
        for (std::size_t j = lo; j < hi; ++j) out[j] = std::move(got[j - lo]);
    });
    return out;
}

std::vector<PoleLogScores> Gateway::centrality_logscores(const std::vector<DocumentRecord>& docs,
                                                         const std::string& target,
                                                         const std::string& anchor) {
    if (target.empty()) throw Error(ErrorKind::parameter, "centrality target is empty");
    return pole_logscores(docs, kCentralityDimId, anchor, target);
}

}  // namespace tsig::gateway
