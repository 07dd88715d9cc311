#include "textsignal/core/types.hpp"

#include <cmath>
#include <set>

#include "textsignal/error.hpp"

namespace tsig {

std::string DocumentRecord::embedding_text() const {
    std::string out;
    out.reserve(title.size() + description.size() + 1);
    out += title;
    out += '\n';
    out += description;
    return out;
}

EmbeddingVector::EmbeddingVector(std::string doc_id, std::vector<float> values)
    : doc_id_(std::move(doc_id)), values_(std::move(values)) {
    double s = 0.0;
    for (float v : values_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::data, "embedding for '" + doc_id_ + "' has non-finite entries");
        }
        s += static_cast<double>(v) * static_cast<double>(v);
    }
    norm_ = std::sqrt(s);
}

ProjectedPoint::ProjectedPoint(std::string id, std::array<double, 5> z, std::array<double, 2> y)
    : doc_id(std::move(id)), z5(z), y2(y) {
    for (double v : z5) {
        if (!std::isfinite(v)) throw Error(ErrorKind::data, "non-finite 5D coordinate for '" + doc_id + "'");
    }
    for (double v : y2) {
        if (!std::isfinite(v)) throw Error(ErrorKind::data, "non-finite 2D coordinate for '" + doc_id + "'");
    }
}

void SemanticDimension::validate() const {
    if (dim_id.empty()) throw Error(ErrorKind::validation, "dimension with empty dim_id");
    if (low_pole == high_pole) {
        throw Error(ErrorKind::validation, "dimension '" + dim_id + "' has identical poles");
    }
    for (const auto& b : band_names) {
        if (b.empty()) throw Error(ErrorKind::validation, "dimension '" + dim_id + "' has an empty band name");
    }
}

void PositionalDictionary::validate() const {
    if (dimensions.empty()) {
        throw Error(ErrorKind::validation, "dictionary '" + dict_id + "' has no dimensions");
    }
    std::set<std::string> seen;
    for (const auto& dim : dimensions) {
        dim.validate();
        if (!seen.insert(dim.dim_id).second) {
            throw Error(ErrorKind::validation, "dictionary '" + dict_id + "' repeats dim_id '" + dim.dim_id + "'");
        }
    }
}

const SemanticDimension* PositionalDictionary::find(const std::string& dim_id) const {
    for (const auto& dim : dimensions) {
        if (dim.dim_id == dim_id) return &dim;
    }
    return nullptr;
}

PositionalDictionary default_dictionary() {
    PositionalDictionary dict;
    dict.dict_id = "ai-news-v1";
    dict.centrality_target = "Artificial Intelligence";
    dict.dimensions = {
        {"opportunity_risk", "Opportunity vs. Risk", "Opportunity", "Danger",
         {"Pure Opportunity", "Growth Oriented", "Risk Aware", "Critical Danger"}},
        {"regulatory_pressure", "Regulatory Pressure", "Deregulation", "Compliance",
         {"Deregulation", "Low Supervision", "Moderate Oversight", "High Compliance"}},
        {"economic_momentum", "Economic Momentum", "Niche", "Commercial",
         {"Academic/Niche", "Emerging Market", "Commercial Growth", "Economic Engine"}},
        {"ethics_utility", "Ethics vs. Utility", "Human-centric", "Efficiency",
         {"Human-Centric", "Balanced Ethics", "Utility Focused", "Max Efficiency"}},
        {"geopolitical_scope", "Geopolitical Scope", "Local / EU", "Global",
         {"Local/Regional", "National Scope", "Continental/EU", "Global/Interstate"}},
        {"urgency", "Urgency", "Analytical", "Breaking / Alarmist",
         {"Educational", "Analytical", "Active News", "Crisis/Breaking"}},
    };
    return dict;
}

ScoreVector::ScoreVector(std::string doc_id, std::map<std::string, double> scores,
                         std::optional<double> centrality)
    : doc_id_(std::move(doc_id)), scores_(std::move(scores)), centrality_(centrality) {
    for (const auto& [dim_id, s] : scores_) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw Error(ErrorKind::validation,
                        "score for ('" + doc_id_ + "', '" + dim_id + "') outside [0,1]");
        }
    }
    if (centrality_ && !(*centrality_ >= 0.0 && *centrality_ <= 1.0)) {
        throw Error(ErrorKind::validation, "centrality for '" + doc_id_ + "' outside [0,1]");
    }
}

double ScoreVector::score(const std::string& dim_id) const {
    auto it = scores_.find(dim_id);
    if (it == scores_.end()) {
        throw Error(ErrorKind::parameter, "no score for dimension '" + dim_id + "'");
    }
    return it->second;
}

FilterVerdict::FilterVerdict(std::string id, double dg, double dl, bool g, bool l, bool r)
    : doc_id(std::move(id)), d_global(dg), d_local(dl), g_pass(g), l_pass(l), r_pass(r),
      retained(g && l && r) {
    if (!(std::isfinite(d_global) && d_global >= 0.0 && std::isfinite(d_local) && d_local >= 0.0)) {
        throw Error(ErrorKind::data, "filter distances for '" + doc_id + "' must be finite and nonnegative");
    }
}

}  // namespace tsig
