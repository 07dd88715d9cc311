#pragma once

#include <string>
#include <vector>

#include "textsignal/core/types.hpp"

namespace tsig::io {

// Embedding cache pair: a compact binary matrix plus a JSON sidecar mapping
// doc_id -> row index (written to "<path>.index.json").
//
// Binary layout, little-endian:
//   magic   4 bytes  "TSIG"
//   version u16      currently 1
//   count   u64      number of rows
//   dim     u32      entries per row
//   data    count * dim * f32, row-major
void write_embedding_cache(const std::string& path, const std::vector<EmbeddingVector>& rows);

// Rows come back in row-index order.
std::vector<EmbeddingVector> read_embedding_cache(const std::string& path);

bool embedding_cache_exists(const std::string& path);

std::string sidecar_path(const std::string& path);

}  // namespace tsig::io
