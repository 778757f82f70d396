#include "mrlrc/error.hpp"

namespace mrlrc {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::DegreeOverflow: return "DegreeOverflow";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::ZeroNorm: return "ZeroNorm";
        case ErrorCode::TooManyBlocks: return "TooManyBlocks";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::MixedFields: return "MixedFields";
        case ErrorCode::NotInvertibleOnPivots: return "NotInvertibleOnPivots";
        case ErrorCode::LengthExceedsField: return "LengthExceedsField";
        case ErrorCode::APrimeNotMds: return "APrimeNotMds";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
        case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::ConstraintViolated: return "ConstraintViolated";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::NotInformationAvailable: return "NotInformationAvailable";
        case ErrorCode::WrongKind: return "WrongKind";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace mrlrc
