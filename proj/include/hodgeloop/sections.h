#pragma once

#include "hodgeloop/freeloop.h"
#include "hodgeloop/pdquotient.h"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hodgeloop::sections {

using exactq::Rational;
using exactq::SparseMatrix;
using pdquotient::FiniteCdga;
using sullivan::RankTable;

/// Basis element a_index (x) w of A (x) AsV, or a_index^dual (x) w in the dual complex.
struct TensorKey {
    gca::Monomial w;
    std::size_t a = 0;

    auto operator<=>(const TensorKey&) const = default;
};

using TensorElement = std::map<TensorKey, Rational>;

/// (A (x) AsV, Dbar) with Dbar(a (x) sv) = d(a) (x) sv - (-1)^{|a|} a . (rho (x) 1)(s dv),
/// extended to all word lengths as a derivation.
class ExtendedQuotientModel {
public:
    ExtendedQuotientModel(const freeloop::FreeLoopModel& flm, const pdquotient::Quotient& quotient);

    const FiniteCdga& algebra() const noexcept { return A_; }
    const gca::FreeAlgebra& suspended() const noexcept { return susp_; }
    const pdquotient::QuotientMap& quotient_map() const noexcept { return qmap_; }
    int formal_dimension() const noexcept { return A_.formal_dimension; }

    int degree(const TensorKey& key) const { return A_.degrees[key.a] + key.w.degree(); }
    std::vector<TensorKey> basis(int n, int word_length) const;

    TensorElement multiply(const TensorElement& x, const TensorElement& y) const;
    TensorElement differential(const TensorElement& x) const;
    /// Dbar(1 (x) sv) for the i-th base generator v.
    const TensorElement& suspension_image(std::size_t i) const { return images_.at(i); }

    SparseMatrix differential_matrix(int n, int word_length) const;
    /// rho (x) 1 from the (n, k) slice of the free loop model.
    SparseMatrix rho_tensor_matrix(const freeloop::FreeLoopModel& flm, int n, int word_length) const;

    std::string format(const TensorElement& x) const;

    /// Lowest and highest degree in which A (x) sV (word length 1) is nonzero.
    std::pair<int, int> word_length_one_range() const;

private:
    std::size_t base_count_ = 0;
    FiniteCdga A_;
    pdquotient::QuotientMap qmap_;
    gca::FreeAlgebra susp_;
    std::vector<TensorElement> images_;
    std::vector<std::vector<gca::Monomial>> base_bases_;  // (AV)^k for k <= N

    exactq::Vector rho_of_base(const gca::Monomial& b) const;
    TensorElement differential_of_word(const gca::Monomial& w) const;
};

/// Builds Dbar and confirms Dbar^2 = 0 and (rho (x) 1) D = Dbar (rho (x) 1) on every
/// slice of degree <= n_max. Throws DifferentialSquareNonzero / ChainMapFailure.
ExtendedQuotientModel extend_to_quotient_loop(const freeloop::FreeLoopModel& flm, const pdquotient::Quotient& quotient,
                                              int n_max, unsigned jobs = 1);

struct SliceVerdict {
    int degree = 0;
    int word_length = 0;
    long source_dim = 0;
    long target_dim = 0;
    long induced_rank = 0;
    bool pass = false;
};

/// H(rho (x) 1) is an isomorphism on every (n, k) slice within the trusted window; throws QuasiIsoFailure.
std::vector<SliceVerdict> verify_rho_tensor_quasi_iso(const freeloop::FreeLoopModel& flm, const ExtendedQuotientModel& eqm,
                                                      int n_max, unsigned jobs = 1);

/// Du(a_i) = sum_j alpha(i, j, top) a_j^dual, as the full matrix (column i = Du(a_i)).
SparseMatrix duality_map(const FiniteCdga& A);

/// Dual differential on A^dual: d(a_i^dual) = -(-1)^{|a_i|} sum_j beta(j, i) a_j^dual (column i).
SparseMatrix dual_differential(const FiniteCdga& A);

/// Checks d^dual Du = (-1)^N Du d_A and that H(Du) is an isomorphism.
/// Throws SignIdentityFailure / SingularDuality.
void verify_dual_differential(const FiniteCdga& A);

/// (A^dual (x) sV, delta) with a_i^dual in degree -|a_i| and
/// delta(a_j^dual (x) sv) = (-1)^{|a_j|} [ sum_{i,l} alpha(i,l,j) a_l^dual (x) sv_i - sum_r beta(r,j) a_r^dual (x) sv ],
/// where Dbar(1 (x) sv) = sum_i a_i (x) sv_i.
class DualSectionComplex {
public:
    explicit DualSectionComplex(const ExtendedQuotientModel& eqm);

    int formal_dimension() const noexcept { return N_; }
    int lowest_degree() const noexcept { return lo_; }
    int highest_degree() const noexcept { return hi_; }

    /// Keys (w, j) meaning a_j^dual (x) w, |w| - |a_j| = p.
    std::vector<TensorKey> basis(int p) const;
    SparseMatrix differential(int p) const;
    /// Du (x) 1 : (A (x) sV)^n -> (A^dual (x) sV)^{n - N}.
    SparseMatrix duality(int n) const;

    std::size_t sign_identity_slices_checked() const noexcept { return sign_checked_; }
    std::size_t square_zero_slices_checked() const noexcept { return square_checked_; }
    std::size_t quasi_iso_degrees_checked() const noexcept { return quasi_iso_checked_; }
    /// Slices on which Du (x) 1 is invertible and delta = (-1)^N (Du (x) 1) Dbar (Du (x) 1)^{-1} was confirmed.
    std::size_t conjugation_slices_checked() const noexcept { return conjugation_checked_; }

private:
    ExtendedQuotientModel eqm_;
    int N_ = 0;
    int lo_ = 0;
    int hi_ = 0;
    std::map<int, SparseMatrix> delta_;
    std::map<int, SparseMatrix> du_;
    std::size_t sign_checked_ = 0;
    std::size_t square_checked_ = 0;
    std::size_t quasi_iso_checked_ = 0;
    std::size_t conjugation_checked_ = 0;

    SparseMatrix closed_form(int p) const;
};

/// Verifies delta (Du (x) 1) = (-1)^N (Du (x) 1) Dbar and delta^2 = 0 on every slice, and that
/// Du (x) 1 is a quasi-isomorphism. Throws SignIdentityFailure / SingularDuality.
DualSectionComplex build_dual_complex(const ExtendedQuotientModel& eqm);

/// entries(n) = dim H^{n+N}(A (x) sV, Dbar), 1 <= n <= n_max - N, cross-checked
/// against dim H^n(A^dual (x) sV, delta). Throws DualMismatch.
RankTable aut_rank_table(const ExtendedQuotientModel& eqm, const DualSectionComplex& dual, int n_max, int trusted_loop);

/// Homology of the complex of degree-lowering derivations of AV with
/// differential theta -> d theta - (-1)^{|theta|} theta d, degrees 1..m_max.
RankTable derivation_oracle(const sullivan::SullivanModel& model, int m_max);

struct TheoremRow {
    int n = 0;
    long hodge_one = 0;  // dim H^{n+N}_{(1)} of the free loop model
    long quotient = 0;   // dim H^{n+N}(A (x) sV)
    long oracle = 0;     // derivation homology in degree n + 1
    bool trusted = true;
    bool pass = false;
};

struct TheoremReport {
    int formal_dimension = 0;
    std::vector<TheoremRow> rows;
    /// Word-length-one classes in degrees <= N; reported without a homotopy interpretation.
    std::vector<std::pair<int, long>> low_degree_classes;

    bool passed() const noexcept;
};

TheoremReport compare_theorem_tables(int formal_dimension, const freeloop::HodgeTable& hodge, const RankTable& aut,
                                     const RankTable& oracle);

/// Full pipeline; throws TheoremMismatch naming the first failing trusted degree.
TheoremReport verify_theorems(const sullivan::SullivanModel& model, int n_max, unsigned jobs = 1);

}  // namespace hodgeloop::sections
