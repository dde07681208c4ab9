#pragma once

#include <stdexcept>
#include <string>

namespace mixmean {

// Every failure the library reports deliberately.  Callers that need to react
// programmatically switch on the code; the message is for humans.
enum class ErrorCode {
    MalformedInput,
    NegativeEntry,
    RaggedRows,
    EmptyMatrix,
    EmptyInput,
    NonpositiveEntry,
    Overflow,
    RankOutOfRange,
    SelectionOutOfRange,
    RangeViolation,
    RangeNotDegenerate,
    EmptyIntersection,
    CapExceeded,
    PrecisionExhausted,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code) noexcept;

} // namespace mixmean
