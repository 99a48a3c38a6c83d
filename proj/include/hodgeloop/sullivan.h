#pragma once

#include "hodgeloop/gca.h"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hodgeloop::sullivan {

/// Minimal Sullivan model (AV, d) of a closed manifold of formal dimension N.
struct SullivanModel {
    std::string name;
    gca::FreeAlgebra algebra;      // base generators in canonical order
    gca::Derivation differential;  // degree +1
    int formal_dimension = 0;
    /// Generators are known through this degree; nullopt means complete.
    std::optional<int> complete_to;

    bool complete() const noexcept { return !complete_to.has_value(); }
    /// Base cohomology is trusted through min(n_max, c).
    int trusted_base(int n_max) const noexcept;
    /// Loop-space, Hodge and aut results are trusted through min(n_max, c - 1).
    int trusted_loop(int n_max) const noexcept;
    int max_generator_degree() const noexcept;
};

/// Degree-indexed dimensions with a trust bound.
struct RankTable {
    std::string label;
    std::map<int, long> entries;
    int trusted_up_to = 0;

    long at(int degree) const;
    bool trusted(int degree) const noexcept { return degree <= trusted_up_to; }
};

SullivanModel parse_model(std::string_view text);
SullivanModel load_model(const std::string& path);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;
    std::optional<int> trusted_degree;  // nullopt: every degree

    bool passed() const noexcept;
};

ValidationReport validate(const SullivanModel& model);
/// Throws ValidationFailed listing the failing checks.
void require_valid(const SullivanModel& model);

/// Matrix of d from degree n to degree n + 1 in the monomial bases.
exactq::SparseMatrix differential_matrix(const SullivanModel& model, int n);

RankTable cohomology_table(const SullivanModel& model, int n_max, unsigned jobs = 1);

struct PairingBlock {
    int k = 0;  // pairs H^k with H^{N-k}
    exactq::SparseMatrix matrix;
};

struct PoincareReport {
    int top_degree = 0;
    gca::Element fundamental_cocycle;
    std::vector<PairingBlock> pairings;
    int vanishing_checked_to = 0;
    std::vector<long> betti;  // degrees 0..vanishing_checked_to
};

/// Throws NotPoincareDuality with the first failing degree.
PoincareReport check_poincare_duality(const SullivanModel& model);

}  // namespace hodgeloop::sullivan
