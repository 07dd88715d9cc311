#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace tsig::io {

std::string read_file(const std::filesystem::path& path);

// Write via temp file + rename so readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

// FNV-1a 64 over the raw bytes, as 16 lowercase hex digits. Used for the
// manifest's stage checksum chain.
std::string checksum_hex(const std::string& bytes);
std::string checksum_file(const std::filesystem::path& path);

}  // namespace tsig::io
