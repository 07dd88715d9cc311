#pragma once

#include <memory>
#include <string>
#include <vector>

#include "textsignal/core/types.hpp"
#include "textsignal/gateway/gateway.hpp"

namespace tsig::semantics {

// Normalized two-pole indicator:
//   s = exp(lambda_high) / (exp(lambda_low) + exp(lambda_high))
// evaluated in shifted form so arbitrarily large log-scores cannot
// overflow. 0 means full affinity with the low pole, 1 with the high pole.
double score_dimension(double lambda_low, double lambda_high);
double score_dimension(const gateway::PoleLogScores& logs);

// Scores a corpus over a dictionary, one ScoreVector per document, going
// through the (doc_id, dict_id, dim_id) log-score cache so rerunning a
// scored corpus issues no backend calls.
class Scorer {
public:
    explicit Scorer(gateway::Gateway& gw, std::shared_ptr<gateway::ScoreStore> cache = nullptr,
                    std::string centrality_anchor = gateway::kDefaultCentralityAnchor);

    std::vector<ScoreVector> score_corpus(const std::vector<DocumentRecord>& docs,
                                          const PositionalDictionary& dict);

private:
    // Log-score pairs for one dimension of the dictionary, cache-aware.
    std::vector<std::pair<double, double>> dimension_logscores(
        const std::vector<DocumentRecord>& docs, const std::string& dict_id,
        const std::string& dim_id, const std::string& low_pole, const std::string& high_pole);

    gateway::Gateway& gateway_;
    std::shared_ptr<gateway::ScoreStore> cache_;
    std::string centrality_anchor_;
};

}  // namespace tsig::semantics
