#include "textsignal/io/embedding_cache.hpp"

#include <cstring>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "textsignal/error.hpp"
#include "textsignal/io/fsutil.hpp"

using nlohmann::json;

namespace tsig::io {

namespace {

constexpr char kMagic[4] = {'T', 'S', 'I', 'G'};
constexpr std::uint16_t kVersion = 1;

void append_le(std::string& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

std::uint64_t read_le(const std::string& buf, std::size_t off, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[off + i])) << (8 * i);
    }
    return v;
}

}  // namespace

std::string sidecar_path(const std::string& path) { return path + ".index.json"; }

void write_embedding_cache(const std::string& path, const std::vector<EmbeddingVector>& rows) {
    std::size_t dim = rows.empty() ? 0 : rows.front().dim();
    for (const auto& r : rows) {
        if (r.dim() != dim) {
            throw Error(ErrorKind::protocol, "embedding cache rows disagree on dimension");
        }
    }

    std::string buf;
    buf.reserve(18 + rows.size() * dim * 4);
    buf.append(kMagic, 4);
    append_le(buf, kVersion, 2);
    append_le(buf, rows.size(), 8);
    append_le(buf, dim, 4);
    for (const auto& r : rows) {
        for (float v : r.values()) {
            std::uint32_t bits;
            std::memcpy(&bits, &v, 4);
            append_le(buf, bits, 4);
        }
    }
    atomic_write_file(path, buf);

    json index = json::object();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        index[rows[i].doc_id()] = i;
    }
    atomic_write_file(sidecar_path(path), index.dump(2) + "\n");
}

std::vector<EmbeddingVector> read_embedding_cache(const std::string& path) {
    std::string buf = read_file(path);
    if (buf.size() < 18 || std::memcmp(buf.data(), kMagic, 4) != 0) {
        throw Error(ErrorKind::ingestion, "'" + path + "' is not an embedding cache");
    }
    auto version = static_cast<std::uint16_t>(read_le(buf, 4, 2));
    if (version != kVersion) {
        throw Error(ErrorKind::ingestion, "unsupported embedding cache version " + std::to_string(version));
    }
    std::uint64_t count = read_le(buf, 6, 8);
    std::uint32_t dim = static_cast<std::uint32_t>(read_le(buf, 14, 4));
    if (buf.size() != 18 + count * static_cast<std::uint64_t>(dim) * 4) {
        throw Error(ErrorKind::ingestion, "embedding cache '" + path + "' is truncated");
    }

    json index = json::parse(read_file(sidecar_path(path)), nullptr, false);
    if (index.is_discarded() || !index.is_object()) {
        throw Error(ErrorKind::ingestion, "malformed sidecar for '" + path + "'");
    }
    std::vector<std::string> id_by_row(count);
    for (auto it = index.begin(); it != index.end(); ++it) {
        std::uint64_t row = it.value().get<std::uint64_t>();
        if (row >= count) {
            throw Error(ErrorKind::ingestion, "sidecar row out of range for '" + it.key() + "'");
        }
        id_by_row[row] = it.key();
    }

    std::vector<EmbeddingVector> rows;
    rows.reserve(count);
    std::size_t off = 18;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::vector<float> values(dim);
        for (std::uint32_t d = 0; d < dim; ++d) {
            std::uint32_t bits = static_cast<std::uint32_t>(read_le(buf, off, 4));
            float v;
            std::memcpy(&v, &bits, 4);
            values[d] = v;
            off += 4;
        }
        rows.emplace_back(id_by_row[i], std::move(values));
    }
    return rows;
}

bool embedding_cache_exists(const std::string& path) {
    return std::filesystem::exists(path) && std::filesystem::exists(sidecar_path(path));
}

}  // namespace tsig::io
