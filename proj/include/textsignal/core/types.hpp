#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tsig {

// One text item; the unit of analysis for the whole pipeline.
struct DocumentRecord {
    std::string doc_id;
    std::string title;
    std::string description;
    std::optional<std::string> published_at;  // ISO-8601 date
    std::optional<std::string> lang;          // BCP-47 tag

    // Text sent to the encoder: title, newline, description.
    std::string embedding_text() const;

    bool operator==(const DocumentRecord&) const = default;
};

// Full-dimension encoder output for one document. Entries are kept as
// float32 (the on-disk representation); the norm is cached at construction.
class EmbeddingVector {
public:
    EmbeddingVector(std::string doc_id, std::vector<float> values);

    const std::string& doc_id() const { return doc_id_; }
    const std::vector<float>& values() const { return values_; }
    std::size_t dim() const { return values_.size(); }
    double norm() const { return norm_; }

    bool operator==(const EmbeddingVector&) const = default;

private:
    std::string doc_id_;
    std::vector<float> values_;
    double norm_ = 0.0;
};

// Joined 5D structural + 2D visual coordinates for one document.
struct ProjectedPoint {
    std::string doc_id;
    std::array<double, 5> z5{};
    std::array<double, 2> y2{};

    ProjectedPoint() = default;
    ProjectedPoint(std::string doc_id, std::array<double, 5> z5, std::array<double, 2> y2);

    bool operator==(const ProjectedPoint&) const = default;
};

// One axis of the positional dictionary: an ordered pole pair plus the
// display names of its four quartile bands.
struct SemanticDimension {
    std::string dim_id;
    std::string name;
    std::string low_pole;
    std::string high_pole;
    std::array<std::string, 4> band_names;

    void validate() const;

    bool operator==(const SemanticDimension&) const = default;
};

struct PositionalDictionary {
    std::string dict_id;
    std::vector<SemanticDimension> dimensions;
    std::optional<std::string> centrality_target;

    void validate() const;
    const SemanticDimension* find(const std::string& dim_id) const;

    bool operator==(const PositionalDictionary&) const = default;
};

// The bundled six-dimension dictionary for AI news monitoring. Entirely
// user-overridable; see the dictionary JSON format.
PositionalDictionary default_dictionary();

// Per-document scores over a dictionary, each in [0,1], plus the optional
// centrality probe score.
class ScoreVector {
public:
    ScoreVector(std::string doc_id, std::map<std::string, double> scores,
                std::optional<double> centrality = std::nullopt);

    const std::string& doc_id() const { return doc_id_; }
    const std::map<std::string, double>& scores() const { return scores_; }
    double score(const std::string& dim_id) const;
    const std::optional<double>& centrality() const { return centrality_; }

    bool operator==(const ScoreVector&) const = default;

private:
    std::string doc_id_;
    std::map<std::string, double> scores_;
    std::optional<double> centrality_;
};

struct RegionAssignment {
    std::string doc_id;
    int region_id = 0;
    bool density_core = false;  // member of the density core set

    bool operator==(const RegionAssignment&) const = default;
};

// Outcome of the three-pass noise cascade for one document. `retained` is
// always the conjunction of the three flags; the constructor computes it.
struct FilterVerdict {
    std::string doc_id;
    double d_global = 0.0;
    double d_local = 0.0;
    bool g_pass = false;
    bool l_pass = false;
    bool r_pass = false;
    bool retained = false;

    FilterVerdict() = default;
    FilterVerdict(std::string doc_id, double d_global, double d_local, bool g_pass,
                  bool l_pass, bool r_pass);

    bool operator==(const FilterVerdict&) const = default;
};

}  // namespace tsig
