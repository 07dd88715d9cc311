#pragma once

#include <string>
#include <vector>

#include "textsignal/core/types.hpp"

namespace tsig::io {

// Corpus file format: JSONL, one DocumentRecord object per line, UTF-8.
// Required keys: doc_id, title, description. Optional: published_at, lang.
std::vector<DocumentRecord> parse_corpus_jsonl(const std::string& text);
std::string render_corpus_jsonl(const std::vector<DocumentRecord>& records);

std::vector<DocumentRecord> load_corpus(const std::string& path);
void save_corpus(const std::string& path, const std::vector<DocumentRecord>& records);

}  // namespace tsig::io
