#include "textsignal/io/corpus_io.hpp"

#include <nlohmann/json.hpp>

#include "textsignal/error.hpp"
#include "textsignal/io/csv.hpp"
#include "textsignal/io/fsutil.hpp"

using nlohmann::json;

namespace tsig::io {

static DocumentRecord record_from_json(const json& j, std::size_t line_no) {
    auto require_string = [&](const char* key) -> std::string {
        if (!j.contains(key) || !j[key].is_string()) {
            throw Error(ErrorKind::ingestion,
                        "line " + std::to_string(line_no) + ": missing or non-string '" + key + "'");
        }
        return j[key].get<std::string>();
    };
    DocumentRecord rec;
    rec.doc_id = require_string("doc_id");
    rec.title = require_string("title");
    rec.description = require_string("description");
    if (j.contains("published_at") && !j["published_at"].is_null()) {
        rec.published_at = j["published_at"].get<std::string>();
    }
    if (j.contains("lang") && !j["lang"].is_null()) {
        rec.lang = j["lang"].get<std::string>();
    }
    return rec;
}

std::vector<DocumentRecord> parse_corpus_jsonl(const std::string& text) {
    std::vector<DocumentRecord> records;
    std::size_t line_no = 0;
    for (const auto& line : split_lines(text)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw Error(ErrorKind::ingestion, "line " + std::to_string(line_no) + ": malformed JSON");
        }
        records.push_back(record_from_json(j, line_no));
    }
    return records;
}

std::string render_corpus_jsonl(const std::vector<DocumentRecord>& records) {
    std::string out;
    for (const auto& rec : records) {
        json j;
        j["doc_id"] = rec.doc_id;
        j["title"] = rec.title;
        j["description"] = rec.description;
        if (rec.published_at) j["published_at"] = *rec.published_at;
        if (rec.lang) j["lang"] = *rec.lang;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<DocumentRecord> load_corpus(const std::string& path) {
    return parse_corpus_jsonl(read_file(path));
}

void save_corpus(const std::string& path, const std::vector<DocumentRecord>& records) {
    atomic_write_file(path, render_corpus_jsonl(records));
}

}  // namespace tsig::io
