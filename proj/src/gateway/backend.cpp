#include "textsignal/gateway/backend.hpp"

#include "textsignal/error.hpp"
#include "textsignal/gateway/http_backend.hpp"
#include "textsignal/gateway/mock_backend.hpp"

namespace tsig::gateway {

void BackendConfig::validate() const {
    if (kind == BackendKind::remote && base_url.empty()) {
        throw Error(ErrorKind::config, "remote backend requires base_url (or TEXTSIGNAL_BACKEND_URL)");
    }
    if (batch_size <= 0) throw Error(ErrorKind::config, "batch_size must be positive");
    if (retry_max < 0) throw Error(ErrorKind::config, "retry_max must be nonnegative");
    if (max_inflight <= 0) throw Error(ErrorKind::config, "max_inflight must be positive");
}

std::unique_ptr<InferenceBackend> make_backend(const BackendConfig& cfg) {
    cfg.validate();
    if (cfg.kind == BackendKind::mock) return std::make_unique<MockBackend>(cfg);
    return std::make_unique<HttpBackend>(cfg);
}

}  // namespace tsig::gateway
