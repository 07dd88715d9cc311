#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "textsignal/core/types.hpp"

namespace tsig {

// Report-style corpus validation: nothing throws, every violation is listed.
struct ValidationReport {
    std::size_t count = 0;
    std::vector<std::string> duplicate_ids;   // ids appearing more than once
    std::vector<std::string> empty_text_ids;  // title and description both empty
    std::size_t blank_id_count = 0;           // records with an empty doc_id

    bool accepted() const {
        return duplicate_ids.empty() && empty_text_ids.empty() && blank_id_count == 0;
    }

    bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate_corpus(const std::vector<DocumentRecord>& records);

}  // namespace tsig
