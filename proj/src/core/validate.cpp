#include "textsignal/core/validate.hpp"

#include <map>

namespace tsig {

ValidationReport validate_corpus(const std::vector<DocumentRecord>& records) {
    ValidationReport report;
    report.count = records.size();

    std::map<std::string, std::size_t> occurrences;
    for (const auto& rec : records) {
        if (rec.doc_id.empty()) {
            ++report.blank_id_count;
            continue;
        }
        ++occurrences[rec.doc_id];
    }
    for (const auto& [id, n] : occurrences) {
        if (n > 1) report.duplicate_ids.push_back(id);
    }
    for (const auto& rec : records) {
        if (rec.title.empty() && rec.description.empty()) {
            report.empty_text_ids.push_back(rec.doc_id);
        }
    }
    return report;
}

}  // namespace tsig
