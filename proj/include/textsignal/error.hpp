#pragma once

#include <stdexcept>
#include <string>

namespace tsig {

enum class ErrorKind {
    validation,  // corpus or type invariant violated
    parameter,   // bad argument to an operation
    data,        // input data unusable (too few points, non-finite values, ...)
    config,      // inconsistent configuration
    ingestion,   // external file missing or malformed
    protocol,    // backend returned a malformed or inconsistent response
    transport,   // backend unreachable / request failed after retries
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    // Process exit code contract: 0 success, 1 validation-class, 2 transport.
    int exit_code() const { return kind_ == ErrorKind::transport ? 2 : 1; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::validation: return "validation";
        case ErrorKind::parameter: return "parameter";
        case ErrorKind::data: return "data";
        case ErrorKind::config: return "config";
        case ErrorKind::ingestion: return "ingestion";
        case ErrorKind::protocol: return "protocol";
        case ErrorKind::transport: return "transport";
    }
    return "unknown";
}

}  // namespace tsig
