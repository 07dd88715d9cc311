#include "textsignal/gateway/stores.hpp"

namespace tsig::gateway {

std::optional<std::vector<float>> EmbeddingStore::get(const std::string& doc_id,
                                                      const std::string& model) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find({doc_id, model});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void EmbeddingStore::put(const std::string& doc_id, const std::string& model,
                         std::vector<float> values) {
    std::lock_guard lock(mutex_);
    entries_.try_emplace({doc_id, model}, std::move(values));
}

std::size_t EmbeddingStore::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::optional<std::pair<double, double>> ScoreStore::get(const std::string& doc_id,
                                                         const std::string& dict_id,
                                                         const std::string& dim_id) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find({doc_id, dict_id, dim_id});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ScoreStore::put(const std::string& doc_id, const std::string& dict_id,
                     const std::string& dim_id, double lambda_low, double lambda_high) {
    std::lock_guard lock(mutex_);
    entries_.try_emplace({doc_id, dict_id, dim_id}, std::make_pair(lambda_low, lambda_high));
}

std::size_t ScoreStore::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::vector<std::pair<ScoreStore::Key, std::pair<double, double>>> ScoreStore::snapshot() const {
    std::lock_guard lock(mutex_);
    return {entries_.begin(), entries_.end()};
}

}  // namespace tsig::gateway
