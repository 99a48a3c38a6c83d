#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hodgeloop {

enum class ErrorCode {
    ParseError,
    UnknownGenerator,
    DegreeMismatch,
    OddExponent,
    CompositionNotZero,
    MissingImage,
    InhomogeneousElement,
    ValidationFailed,
    NotPoincareDuality,
    DifferentialSquareNonzero,
    HodgeSumMismatch,
    TopClassCollapse,
    QuasiIsoFailure,
    IdentityViolation,
    ChainMapFailure,
    SingularDuality,
    SignIdentityFailure,
    DualMismatch,
    TheoremMismatch,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying one of the named failure kinds plus an optional locus
/// (line number for parse errors, cohomological degree otherwise).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<int> locus = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<int> locus() const noexcept { return locus_; }

private:
    ErrorCode code_;
    std::optional<int> locus_;
};

}  // namespace hodgeloop
