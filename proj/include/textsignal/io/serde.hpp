#pragma once

#include <string>

#include "textsignal/cascade/cascade.hpp"
#include "textsignal/core/validate.hpp"
#include "textsignal/manifold/twonn.hpp"
#include "textsignal/partition/kmeans.hpp"
#include "textsignal/semantics/profile.hpp"

namespace tsig::io {

// JSON codecs for every externally persisted structure. nlohmann keeps
// object keys sorted, so the rendered text is deterministic.

std::string dictionary_to_json(const PositionalDictionary& dict);
PositionalDictionary dictionary_from_json(const std::string& text);

std::string kmeans_to_json(const partition::KMeansModel& model);
partition::KMeansModel kmeans_from_json(const std::string& text);

std::string cascade_report_to_json(const cascade::CascadeReport& report);
cascade::CascadeReport cascade_report_from_json(const std::string& text);

std::string profile_to_json(const semantics::CorpusProfile& profile);
semantics::CorpusProfile profile_from_json(const std::string& text);

std::string validation_to_json(const ValidationReport& report);

std::string twonn_to_json(const manifold::TwoNNResult& result);

std::string histogram_to_json(const semantics::CentralityHistogram& hist);

}  // namespace tsig::io
