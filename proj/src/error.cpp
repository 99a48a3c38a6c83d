#include "hodgeloop/error.h"

namespace hodgeloop {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::OddExponent: return "OddExponent";
    case ErrorCode::CompositionNotZero: return "CompositionNotZero";
    case ErrorCode::MissingImage: return "MissingImage";
    case ErrorCode::InhomogeneousElement: return "InhomogeneousElement";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::NotPoincareDuality: return "NotPoincareDuality";
    case ErrorCode::DifferentialSquareNonzero: return "DifferentialSquareNonzero";
    case ErrorCode::HodgeSumMismatch: return "HodgeSumMismatch";
    case ErrorCode::TopClassCollapse: return "TopClassCollapse";
    case ErrorCode::QuasiIsoFailure: return "QuasiIsoFailure";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::ChainMapFailure: return "ChainMapFailure";
    case ErrorCode::SingularDuality: return "SingularDuality";
    case ErrorCode::SignIdentityFailure: return "SignIdentityFailure";
    case ErrorCode::DualMismatch: return "DualMismatch";
    case ErrorCode::TheoremMismatch: return "TheoremMismatch";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<int> locus)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), locus_(locus)
{
}

}  // namespace hodgeloop
