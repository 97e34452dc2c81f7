#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ergo {

enum class ErrorCode {
    InvalidParams,
    OutOfRange,
    GammaOutOfRange,
    NoSignChange,
    NoConvergence,
    EmptyDomain,
    NotReversible,
    CouplingFails,
    MonotoneViolation,
    TruncationTooSmall,
    PeriodicSupport,
    HypothesisViolated,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library is reported through this type; the code is
/// what the C API hands back to callers.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace ergo
