#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textsignal/core/types.hpp"

namespace tsig::cli {

// Synthetic news corpus with planted structure: a dozen vocabulary topics,
// a diffuse scatter fringe, and one tiny isolated vocabulary island. Token
// overlap drives the mock embeddings, so the downstream map inherits the
// layout.
std::vector<DocumentRecord> generate_demo_corpus(std::size_t n_docs, std::uint64_t seed);

// Writes corpus.jsonl, dictionary.json and demo.conf into out_dir.
void write_demo_bundle(const std::string& out_dir, std::size_t n_docs, std::uint64_t seed,
                       std::size_t embedding_dim);

}  // namespace tsig::cli
