#include "textsignal/gateway/http_backend.hpp"

#include <cmath>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "textsignal/error.hpp"

using nlohmann::json;

namespace tsig::gateway {

HttpBackend::HttpBackend(const BackendConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
}

std::string HttpBackend::post_json(const std::string& route, const std::string& body) {
    auto backoff = cfg_.retry_backoff;
    std::string last_failure = "no attempt made";
    for (int attempt = 0; attempt <= cfg_.retry_max; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
        httplib::Client client(cfg_.base_url);
        client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout));
        auto res = client.Post(route, body, "application/json");
        if (!res) {
            last_failure = "connection to " + cfg_.base_url + route + " failed";
            continue;
        }
        if (res->status == 200) return res->body;
        if (res->status >= 400 && res->status < 500) {
            throw Error(ErrorKind::protocol,
                        "endpoint rejected " + route + " with status " + std::to_string(res->status) +
                            ": " + res->body);
        }
        last_failure = "status " + std::to_string(res->status) + " from " + route;
    }
    throw Error(ErrorKind::transport,
                last_failure + " after " + std::to_string(cfg_.retry_max + 1) + " attempts");
}

static json docs_payload(std::span<const DocumentRecord> docs) {
    json arr = json::array();
    for (const auto& d : docs) {
        arr.push_back({{"doc_id", d.doc_id}, {"text", d.embedding_text()}});
    }
    return arr;
}

std::vector<EmbeddingVector> HttpBackend::embed_batch(std::span<const DocumentRecord> docs) {
    json req = {{"model", cfg_.model_name}, {"docs", docs_payload(docs)}};
    json res = json::parse(post_json("/embed", req.dump()), nullptr, false);
    if (res.is_discarded() || !res.contains("vectors") || !res["vectors"].is_array()) {
        throw Error(ErrorKind::protocol, "/embed response is not {\"vectors\": [[...]]}");
    }
    const auto& vectors = res["vectors"];
    if (vectors.size() != docs.size()) {
        throw Error(ErrorKind::protocol, "/embed returned " + std::to_string(vectors.size()) +
                                             " vectors for " + std::to_string(docs.size()) + " docs");
    }
    std::vector<EmbeddingVector> out;
    out.reserve(docs.size());
    std::size_t dim = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (!vectors[i].is_array()) throw Error(ErrorKind::protocol, "/embed vector is not an array");
        std::vector<float> values;
        values.reserve(vectors[i].size());
        for (const auto& v : vectors[i]) {
            if (!v.is_number()) throw Error(ErrorKind::protocol, "/embed vector entry is not a number");
            values.push_back(v.get<float>());
        }
        if (i == 0) {
            dim = values.size();
        } else if (values.size() != dim) {
            throw Error(ErrorKind::protocol,
                        "dimension mismatch in /embed batch: doc '" + docs[i].doc_id + "' got " +
                            std::to_string(values.size()) + ", batch dimension is " + std::to_string(dim));
        }
        out.emplace_back(docs[i].doc_id, std::move(values));
    }
    return out;
}

std::vector<PoleLogScores> HttpBackend::pole_logscores(std::span<const DocumentRecord> docs,
                                                       const std::string& dim_id,
                                                       const std::string& low_pole,
                                                       const std::string& high_pole) {
    json req = {{"model", cfg_.model_name},
                {"dim_id", dim_id},
                {"low_pole", low_pole},
                {"high_pole", high_pole},
                {"docs", docs_payload(docs)}};
    json res = json::parse(post_json("/logscores", req.dump()), nullptr, false);
    if (res.is_discarded() || !res.contains("pairs") || !res["pairs"].is_array()) {
        throw Error(ErrorKind::protocol, "/logscores response is not {\"pairs\": [[low,high]]}");
    }
    const auto& pairs = res["pairs"];
    if (pairs.size() != docs.size()) {
        throw Error(ErrorKind::protocol, "/logscores returned " + std::to_string(pairs.size()) +
                                             " pairs for " + std::to_string(docs.size()) + " docs");
    }
    std::vector<PoleLogScores> out;
    out.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (!pairs[i].is_array() || pairs[i].size() != 2 || !pairs[i][0].is_number() ||
            !pairs[i][1].is_number()) {
            throw Error(ErrorKind::protocol, "/logscores pair is not [low, high]");
        }
        double lo = pairs[i][0].get<double>();
        double hi = pairs[i][1].get<double>();
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            throw Error(ErrorKind::protocol, "/logscores pair for '" + docs[i].doc_id + "' is non-finite");
        }
        out.push_back({docs[i].doc_id, dim_id, lo, hi});
    }
    return out;
}

}  // namespace tsig::gateway
