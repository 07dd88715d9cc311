#include "textsignal/semantics/text_stats.hpp"

#include "textsignal/semantics/profile.hpp"

namespace tsig::semantics {

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return 0;
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

std::size_t utf8_length(std::string_view text) {
    std::size_t n = 0;
    for (unsigned char c : text) {
        if ((c & 0xc0) != 0x80) ++n;  // count everything but continuation bytes
    }
    return n;
}

std::size_t count_mentions(const DocumentRecord& doc, std::span<const std::string> patterns) {
    std::string text = ascii_lower(doc.title) + "\n" + ascii_lower(doc.description);
    std::size_t count = 0;
    for (const auto& p : patterns) {
        count += count_occurrences(text, ascii_lower(p));
    }
    return count;
}

TextStatsReport describe_text_stats(std::span<const DocumentRecord> docs,
                                    std::span<const std::string> patterns) {
    std::vector<double> chars;
    std::vector<double> mentions;
    chars.reserve(docs.size());
    mentions.reserve(docs.size());
    for (const auto& doc : docs) {
        chars.push_back(static_cast<double>(utf8_length(doc.title) + utf8_length(doc.description)));
        mentions.push_back(static_cast<double>(count_mentions(doc, patterns)));
    }

    auto describe = [](const std::vector<double>& v) {
        SeriesStats st;
        if (v.empty()) return st;
        st.mean = mean_of(v);
        st.median = continuous_median(v);
        st.sample_std = sample_std(v, st.mean);
        return st;
    };

    return {describe(chars), describe(mentions)};
}

}  // namespace tsig::semantics
