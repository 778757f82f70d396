#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrlrc {

enum class ErrorCode {
    NotPrime,
    DegreeOverflow,
    DivisionByZero,
    ZeroNorm,
    TooManyBlocks,
    DimensionMismatch,
    IndexOutOfRange,
    Singular,
    MixedFields,
    NotInvertibleOnPivots,
    LengthExceedsField,
    APrimeNotMds,
    LengthMismatch,
    BadParams,
    TooLargeToEnumerate,
    EnumerationCapExceeded,
    DimensionTooLarge,
    ConstraintViolated,
    RankDeficient,
    NotInformationAvailable,
    WrongKind,
    InvalidInput,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// All library failures are reported through this exception; `code()` names the
/// failure class so callers (and the CLI) can branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mrlrc
