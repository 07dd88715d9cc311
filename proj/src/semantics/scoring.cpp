#include "textsignal/semantics/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "textsignal/error.hpp"

namespace tsig::semantics {

double score_dimension(double lambda_low, double lambda_high) {
    if (!std::isfinite(lambda_low) || !std::isfinite(lambda_high)) {
        throw Error(ErrorKind::data, "non-finite pole log-scores");
    }
    double m = std::max(lambda_low, lambda_high);
    double e_low = std::exp(lambda_low - m);
    double e_high = std::exp(lambda_high - m);
    return e_high / (e_low + e_high);
}

double score_dimension(const gateway::PoleLogScores& logs) {
    return score_dimension(logs.lambda_low, logs.lambda_high);
}

Scorer::Scorer(gateway::Gateway& gw, std::shared_ptr<gateway::ScoreStore> cache,
               std::string centrality_anchor)
    : gateway_(gw), cache_(std::move(cache)), centrality_anchor_(std::move(centrality_anchor)) {}

std::vector<std::pair<double, double>> Scorer::dimension_logscores(
    const std::vector<DocumentRecord>& docs, const std::string& dict_id, const std::string& dim_id,
    const std::string& low_pole, const std::string& high_pole) {
    std::vector<std::pair<double, double>> pairs(docs.size());
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (cache_) {
            if (auto hit = cache_->get(docs[i].doc_id, dict_id, dim_id)) {
                pairs[i] = *hit;
                continue;
            }
        }
        missing.push_back(i);
    }

    // Work through the misses one dispatch group at a time so a backend
    // failure discards at most the group in flight; everything before it is
    // already in the cache and survives a resume.
    const auto& cfg = gateway_.config();
    std::size_t group = static_cast<std::size_t>(cfg.batch_size) *
                        static_cast<std::size_t>(cfg.max_inflight);
    for (std::size_t start = 0; start < missing.size(); start += group) {
        std::size_t end = std::min(start + group, missing.size());
        std::vector<DocumentRecord> chunk;
        chunk.reserve(end - start);
        for (std::size_t j = start; j < end; ++j) chunk.push_back(docs[missing[j]]);

        std::vector<gateway::PoleLogScores> got;
        if (dim_id == gateway::kCentralityDimId) {
            got = gateway_.centrality_logscores(chunk, high_pole, low_pole);
        } else {
            got = gateway_.pole_logscores(chunk, dim_id, low_pole, high_pole);
        }
        for (std::size_t j = start; j < end; ++j) {
            const auto& ls = got[j - start];
            pairs[missing[j]] = {ls.lambda_low, ls.lambda_high};
            if (cache_) {
                cache_->put(docs[missing[j]].doc_id, dict_id, dim_id, ls.lambda_low, ls.lambda_high);
            }
        }
    }
    return pairs;
}

std::vector<ScoreVector> Scorer::score_corpus(const std::vector<DocumentRecord>& docs,
                                              const PositionalDictionary& dict) {
    dict.validate();
    if (docs.empty()) throw Error(ErrorKind::parameter, "document list is empty");

    std::vector<std::map<std::string, double>> scores(docs.size());
    for (const auto& dim : dict.dimensions) {
        auto pairs = dimension_logscores(docs, dict.dict_id, dim.dim_id, dim.low_pole, dim.high_pole);
        for (std::size_t i = 0; i < docs.size(); ++i) {
            scores[i][dim.dim_id] = score_dimension(pairs[i].first, pairs[i].second);
        }
    }

    std::vector<std::optional<double>> centrality(docs.size());
    if (dict.centrality_target) {
        auto pairs = dimension_logscores(docs, dict.dict_id, gateway::kCentralityDimId,
                                         centrality_anchor_, *dict.centrality_target);
        for (std::size_t i = 0; i < docs.size(); ++i) {
            centrality[i] = score_dimension(pairs[i].first, pairs[i].second);
        }
    }

    std::vector<ScoreVector> out;
    out.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        out.emplace_back(docs[i].doc_id, std::move(scores[i]), centrality[i]);
    }
    return out;
}

}  // namespace tsig::semantics
