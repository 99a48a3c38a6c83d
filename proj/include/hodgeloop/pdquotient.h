#pragma once

#include "hodgeloop/sullivan.h"

#include <cstddef>
#include <string>
#include <vector>

namespace hodgeloop::pdquotient {

using exactq::Rational;
using exactq::SparseMatrix;
using exactq::Vector;

/// Finite-dimensional CDGA given by structure constants in a homogeneous
/// basis a_0..a_{n-1}:  a_i a_j = sum_k alpha(i,j,k) a_k,  d a_i = sum_j beta(i,j) a_j.
/// The basis is sorted by degree, a_0 = 1 and the last element spans the top degree.
struct FiniteCdga {
    int formal_dimension = 0;
    std::vector<int> degrees;
    std::vector<std::string> labels;
    std::vector<Rational> alpha;  // n^3, index (i*n + j)*n + k
    std::vector<Rational> beta;   // n^2, index i*n + j
    std::size_t unit_index = 0;
    std::size_t top_index = 0;

    std::size_t size() const noexcept { return degrees.size(); }
    Rational& a(std::size_t i, std::size_t j, std::size_t k) { return alpha[(i * size() + j) * size() + k]; }
    const Rational& a(std::size_t i, std::size_t j, std::size_t k) const { return alpha[(i * size() + j) * size() + k]; }
    Rational& b(std::size_t i, std::size_t j) { return beta[i * size() + j]; }
    const Rational& b(std::size_t i, std::size_t j) const { return beta[i * size() + j]; }

    /// Indices of basis elements of degree k, ascending.
    std::vector<std::size_t> indices_of_degree(int k) const;
    std::size_t dim(int k) const { return indices_of_degree(k).size(); }

    Vector multiply(const Vector& x, const Vector& y) const;
    /// Matrix of d_A : A^k -> A^{k+1} in the degree-k and degree-(k+1) sub-bases.
    SparseMatrix differential_matrix(int k) const;
};

/// The projection rho : AV -> A, degree by degree.
struct QuotientMap {
    int formal_dimension = 0;
    std::vector<SparseMatrix> rho;                  // rho[k] : (AV)^k -> A^k for 0 <= k <= N
    std::vector<std::size_t> complement_below_top;  // S^{N-1}: pivot monomial indices in (AV)^{N-1}
    std::vector<std::size_t> complement_top;        // S^N: pivot monomial indices in (AV)^N
    std::size_t top_boundary_rank = 0;              // dim dS^{N-1}
    gca::Element fundamental_cocycle;

    /// rho in degree k; the zero map above N.
    SparseMatrix at(const sullivan::SullivanModel& model, int k) const;
    std::string ideal_summary(const sullivan::SullivanModel& model) const;
};

struct Quotient {
    FiniteCdga algebra;
    QuotientMap map;
};

/// A = AV / I with I = S^{N-1} + dS^{N-1} + S^N + (AV)^{>N}.
Quotient build_quotient(const sullivan::SullivanModel& model);

struct IdentityReport {
    std::size_t commutativity = 0;
    std::size_t associativity = 0;
    std::size_t leibniz = 0;
    std::size_t unit = 0;
    std::size_t square_zero = 0;
    std::size_t total() const noexcept { return commutativity + associativity + leibniz + unit + square_zero; }
};

/// Exhaustive check of the structure-constant identities; throws IdentityViolation.
IdentityReport structure_identities(const FiniteCdga& algebra);

struct DegreeVerdict {
    int degree = 0;
    long source_dim = 0;
    long target_dim = 0;
    long induced_rank = 0;
    bool pass = false;
};

/// H(rho) is an isomorphism in every degree <= min(n_max, trusted); throws QuasiIsoFailure.
std::vector<DegreeVerdict> verify_quasi_iso(const sullivan::SullivanModel& model, const FiniteCdga& algebra,
                                            const QuotientMap& qmap, int n_max);

/// Number of monomial pairs on which rho(uv) = rho(u) rho(v) was confirmed; throws ChainMapFailure.
std::size_t verify_algebra_map(const sullivan::SullivanModel& model, const FiniteCdga& algebra, const QuotientMap& qmap);
/// rho d = d_A rho in degrees 0..N; throws ChainMapFailure.
void verify_chain_map(const sullivan::SullivanModel& model, const FiniteCdga& algebra, const QuotientMap& qmap);

/// dim H^n(I, d) where I = ker rho.
long ideal_cohomology(const sullivan::SullivanModel& model, const QuotientMap& qmap, int n);

/// Matrix P(a_i a_j) over the whole basis.
SparseMatrix pairing_matrix(const FiniteCdga& algebra);

}  // namespace hodgeloop::pdquotient
