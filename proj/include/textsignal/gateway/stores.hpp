#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace tsig::gateway {

// Write-once concurrent cache of embeddings keyed by (doc_id, model_name).
// First write wins; later writes for the same key are ignored.
class EmbeddingStore {
public:
    std::optional<std::vector<float>> get(const std::string& doc_id, const std::string& model) const;
    void put(const std::string& doc_id, const std::string& model, std::vector<float> values);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::pair<std::string, std::string>, std::vector<float>> entries_;
};

// Write-once concurrent cache of pole log-scores keyed by
// (doc_id, dict_id, dim_id).
class ScoreStore {
public:
    using Key = std::tuple<std::string, std::string, std::string>;

    std::optional<std::pair<double, double>> get(const std::string& doc_id,
                                                 const std::string& dict_id,
                                                 const std::string& dim_id) const;
    void put(const std::string& doc_id, const std::string& dict_id, const std::string& dim_id,
             double lambda_low, double lambda_high);
    std::size_t size() const;

    // Snapshot in key order, for CSV persistence.
    std::vector<std::pair<Key, std::pair<double, double>>> snapshot() const;

private:
    mutable std::mutex mutex_;
    std::map<Key, std::pair<double, double>> entries_;
};

}  // namespace tsig::gateway
