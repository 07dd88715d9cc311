#include "textsignal/io/tables.hpp"

#include <map>

#include "textsignal/error.hpp"
#include "textsignal/io/csv.hpp"

namespace tsig::io {

namespace {

const char* bool_field(bool b) { return b ? "1" : "0"; }

bool parse_bool(const std::string& s) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false") return false;
    throw Error(ErrorKind::ingestion, "bad boolean field '" + s + "'");
}

std::vector<std::string> data_lines(const std::string& text, const char* what) {
    auto lines = split_lines(text);
    if (lines.empty()) throw Error(ErrorKind::ingestion, std::string(what) + ": empty file");
    lines.erase(lines.begin());  // header
    return lines;
}

}  // namespace

std::string render_projection_csv(const ProjectionTable& table) {
    std::string out = "doc_id";
    for (std::size_t d = 0; d < table.dims; ++d) {
        out += ",c" + std::to_string(d + 1);
    }
    out += '\n';
    for (std::size_t i = 0; i < table.doc_ids.size(); ++i) {
        out += csv_field(table.doc_ids[i]);
        for (double v : table.points.row(i)) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

ProjectionTable parse_projection_csv(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw Error(ErrorKind::ingestion, "projection file is empty");
    auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header[0] != "doc_id") {
        throw Error(ErrorKind::ingestion, "projection file must start with 'doc_id,c1,...'");
    }
    ProjectionTable table;
    table.dims = header.size() - 1;
    table.points.dim = table.dims;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        auto fields = split_csv_line(lines[li]);
        if (fields.size() != header.size()) {
            throw Error(ErrorKind::ingestion,
                        "projection line " + std::to_string(li + 1) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(header.size()));
        }
        table.doc_ids.push_back(fields[0]);
        for (std::size_t d = 0; d < table.dims; ++d) {
            table.points.data.push_back(parse_double(fields[1 + d]));
        }
    }
    table.points.n = table.doc_ids.size();
    return table;
}

std::string render_regions_csv(const std::vector<RegionAssignment>& rows) {
    std::string out = "doc_id,region_id,density_core\n";
    for (const auto& r : rows) {
        out += csv_field(r.doc_id);
        out += ',';
        out += std::to_string(r.region_id);
        out += ',';
        out += bool_field(r.density_core);
        out += '\n';
    }
    return out;
}

std::vector<RegionAssignment> parse_regions_csv(const std::string& text) {
    std::vector<RegionAssignment> rows;
    for (const auto& line : data_lines(text, "regions")) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 3) throw Error(ErrorKind::ingestion, "regions row needs 3 fields");
        rows.push_back({f[0], static_cast<int>(parse_long(f[1])), parse_bool(f[2])});
    }
    return rows;
}

std::string render_verdicts_csv(const std::vector<FilterVerdict>& rows) {
    std::string out = "doc_id,d_global,d_local,g_pass,l_pass,r_pass,retained\n";
    for (const auto& v : rows) {
        out += csv_field(v.doc_id);
        out += ',';
        out += format_double(v.d_global);
        out += ',';
        out += format_double(v.d_local);
        out += ',';
        out += bool_field(v.g_pass);
        out += ',';
        out += bool_field(v.l_pass);
        out += ',';
        out += bool_field(v.r_pass);
        out += ',';
        out += bool_field(v.retained);
        out += '\n';
    }
    return out;
}

std::vector<FilterVerdict> parse_verdicts_csv(const std::string& text) {
    std::vector<FilterVerdict> rows;
    for (const auto& line : data_lines(text, "verdicts")) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 7) throw Error(ErrorKind::ingestion, "verdicts row needs 7 fields");
        FilterVerdict v(f[0], parse_double(f[1]), parse_double(f[2]), parse_bool(f[3]),
                        parse_bool(f[4]), parse_bool(f[5]));
        if (v.retained != parse_bool(f[6])) {
            throw Error(ErrorKind::ingestion, "verdict row for '" + f[0] + "' breaks retained = G*L*R");
        }
        rows.push_back(std::move(v));
    }
    return rows;
}

std::string render_scores_csv(const std::vector<ScoreVector>& rows,
                              const PositionalDictionary& dict) {
    std::string out = "doc_id";
    for (const auto& dim : dict.dimensions) out += "," + csv_field(dim.dim_id);
    out += ",centrality\n";
    for (const auto& sv : rows) {
        out += csv_field(sv.doc_id());
        for (const auto& dim : dict.dimensions) {
            out += ',';
            out += format_double(sv.score(dim.dim_id));
        }
        out += ',';
        if (sv.centrality()) out += format_double(*sv.centrality());
        out += '\n';
    }
    return out;
}

std::vector<ScoreVector> parse_scores_csv(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw Error(ErrorKind::ingestion, "scores file is empty");
    auto header = split_csv_line(lines[0]);
    if (header.size() < 2 || header.front() != "doc_id" || header.back() != "centrality") {
        throw Error(ErrorKind::ingestion, "scores file must be 'doc_id,<dims...>,centrality'");
    }
    std::vector<ScoreVector> rows;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        auto f = split_csv_line(lines[li]);
        if (f.size() != header.size()) {
            throw Error(ErrorKind::ingestion, "scores line " + std::to_string(li + 1) + " is ragged");
        }
        std::map<std::string, double> scores;
        for (std::size_t c = 1; c + 1 < f.size(); ++c) {
            scores[header[c]] = parse_double(f[c]);
        }
        std::optional<double> centrality;
        if (!f.back().empty()) centrality = parse_double(f.back());
        rows.emplace_back(f[0], std::move(scores), centrality);
    }
    return rows;
}

std::string render_logscore_csv(const std::vector<LogScoreRow>& rows) {
    std::string out = "dict_id,dim_id,doc_id,lambda_low,lambda_high\n";
    for (const auto& r : rows) {
        out += csv_field(r.dict_id);
        out += ',';
        out += csv_field(r.dim_id);
        out += ',';
        out += csv_field(r.doc_id);
        out += ',';
        out += format_double(r.lambda_low);
        out += ',';
        out += format_double(r.lambda_high);
        out += '\n';
    }
    return out;
}

std::vector<LogScoreRow> parse_logscore_csv(const std::string& text) {
    std::vector<LogScoreRow> rows;
    for (const auto& line : data_lines(text, "log-scores")) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 5) throw Error(ErrorKind::ingestion, "log-score row needs 5 fields");
        rows.push_back({f[0], f[1], f[2], parse_double(f[3]), parse_double(f[4])});
    }
    return rows;
}

std::string render_map_csv(const std::vector<std::string>& doc_ids, const PointMatrix& y2,
                           const std::vector<int>& region_ids,
                           const std::vector<bool>& retained,
                           const std::vector<ScoreVector>& scores,
                           const PositionalDictionary& dict) {
    std::string out = "doc_id,x,y,region_id,retained";
    for (const auto& dim : dict.dimensions) out += "," + csv_field(dim.dim_id);
    if (!scores.empty() && scores.front().centrality()) out += ",centrality";
    out += '\n';
    for (std::size_t i = 0; i < doc_ids.size(); ++i) {
        out += csv_field(doc_ids[i]);
        out += ',';
        out += format_double(y2.row(i)[0]);
        out += ',';
        out += format_double(y2.row(i)[1]);
        out += ',';
        out += std::to_string(region_ids[i]);
        out += ',';
        out += bool_field(retained[i]);
        for (const auto& dim : dict.dimensions) {
            out += ',';
            out += format_double(scores[i].score(dim.dim_id));
        }
        if (scores[i].centrality()) {
            out += ',';
            out += format_double(*scores[i].centrality());
        }
        out += '\n';
    }
    return out;
}

}  // namespace tsig::io
