#include "mixmean/error.hpp"

namespace mixmean {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedInput: return "malformed-input";
        case ErrorCode::NegativeEntry: return "negative-entry";
        case ErrorCode::RaggedRows: return "ragged-rows";
        case ErrorCode::EmptyMatrix: return "empty-matrix";
        case ErrorCode::EmptyInput: return "empty-input";
        case ErrorCode::NonpositiveEntry: return "nonpositive-entry";
        case ErrorCode::Overflow: return "overflow";
        case ErrorCode::RankOutOfRange: return "rank-out-of-range";
        case ErrorCode::SelectionOutOfRange: return "selection-out-of-range";
        case ErrorCode::RangeViolation: return "range-violation";
        case ErrorCode::RangeNotDegenerate: return "range-not-degenerate";
        case ErrorCode::EmptyIntersection: return "empty-intersection";
        case ErrorCode::CapExceeded: return "cap-exceeded";
        case ErrorCode::PrecisionExhausted: return "precision-exhausted";
        case ErrorCode::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

} // namespace mixmean
