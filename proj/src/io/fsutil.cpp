#include "textsignal/io/fsutil.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "textsignal/error.hpp"
#include "textsignal/util/hash.hpp"

namespace tsig::io {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ingestion, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::ingestion, "cannot write '" + tmp.string() + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw Error(ErrorKind::ingestion, "short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::string checksum_hex(const std::string& bytes) {
    std::uint64_t h = util::fnv1a64(bytes);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string checksum_file(const std::filesystem::path& path) {
    return checksum_hex(read_file(path));
}

}  // namespace tsig::io
