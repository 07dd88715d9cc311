#pragma once

#include <span>
#include <string>
#include <vector>

#include "textsignal/core/types.hpp"

namespace tsig::semantics {

struct SeriesStats {
    double mean = 0.0;
    double median = 0.0;
    double sample_std = 0.0;

    bool operator==(const SeriesStats&) const = default;
};

struct TextStatsReport {
    SeriesStats char_count;     // UTF-8 code points of title + description
    SeriesStats mention_count;  // case-insensitive pattern occurrences

    bool operator==(const TextStatsReport&) const = default;
};

// Corpus-level descriptive text statistics. Pattern matching is
// non-overlapping, substring based, and ASCII case-insensitive (multibyte
// sequences must match byte-exactly).
TextStatsReport describe_text_stats(std::span<const DocumentRecord> docs,
                                    std::span<const std::string> patterns);

std::size_t utf8_length(std::string_view text);
std::size_t count_mentions(const DocumentRecord& doc, std::span<const std::string> patterns);

}  // namespace tsig::semantics
