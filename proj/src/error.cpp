#include "ergocert/error.hpp"

namespace ergo {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::EmptyDomain: return "EmptyDomain";
        case ErrorCode::NotReversible: return "NotReversible";
        case ErrorCode::CouplingFails: return "CouplingFails";
        case ErrorCode::MonotoneViolation: return "MonotoneViolation";
        case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorCode::PeriodicSupport: return "PeriodicSupport";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    }
    return "Unknown";
}

}  // namespace ergo
