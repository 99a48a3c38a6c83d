#pragma once

#include "hodgeloop/exactq.h"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hodgeloop::gca {

using exactq::Rational;
using exactq::SparseMatrix;

enum class GeneratorKind { base, suspended };

struct Generator {
    std::string name;
    int degree = 0;
    GeneratorKind kind = GeneratorKind::base;
    /// For a suspended generator sv: index of v in the same algebra.
    std::optional<std::size_t> partner;

    bool odd() const noexcept { return degree % 2 != 0; }
    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Sort base generators by (degree, declaration order) followed by the
/// suspended ones in the induced order; partners are re-indexed.
std::vector<Generator> canonical_order(const std::vector<Generator>& gens);

/// Exponent vector over a fixed generator list. Ordered by total degree,
/// then lexicographically on exponents.
class Monomial {
public:
    Monomial() = default;
    Monomial(std::vector<int> exponents, int degree) : degree_(degree), exponents_(std::move(exponents)) {}

    int degree() const noexcept { return degree_; }
    const std::vector<int>& exponents() const noexcept { return exponents_; }
    int exponent(std::size_t i) const { return exponents_.at(i); }
    bool is_unit() const noexcept;

    auto operator<=>(const Monomial&) const = default;

private:
    int degree_ = 0;
    std::vector<int> exponents_;
};

struct SignedMonomial {
    int sign = 1;
    Monomial monomial;
};

/// Finite linear combination of monomials; zero coefficients are never stored.
class Element {
public:
    using Terms = std::map<Monomial, Rational>;

    Element() = default;
    explicit Element(const Monomial& m, const Rational& c = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_homogeneous() const noexcept;
    /// Common degree of all terms; nullopt for zero or inhomogeneous elements.
    std::optional<int> degree() const noexcept;
    Rational coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& c);
    Element& operator+=(const Element& other);
    Element& operator-=(const Element& other);
    Element& operator*=(const Rational& c);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& c, Element a) { return a *= c; }
    friend bool operator==(const Element&, const Element&) = default;

private:
    Terms terms_;
};

/// Free graded-commutative algebra on an ordered list of generators.
class FreeAlgebra {
public:
    FreeAlgebra() = default;
    explicit FreeAlgebra(std::vector<Generator> gens);

    const std::vector<Generator>& generators() const noexcept { return gens_; }
    std::size_t size() const noexcept { return gens_.size(); }
    const Generator& generator(std::size_t i) const { return gens_.at(i); }
    std::optional<std::size_t> index_of(const std::string& name) const;

    Monomial unit() const;
    Monomial monomial_of(std::size_t gen, int power = 1) const;
    Monomial make_monomial(std::vector<int> exponents) const;
    Element element_of(std::size_t gen) const { return Element(monomial_of(gen)); }

    /// Koszul-signed product, nullopt when an odd generator repeats.
    std::optional<SignedMonomial> normalize_product(const Monomial& a, const Monomial& b) const;
    Element multiply(const Element& a, const Element& b) const;

    int word_length(const Monomial& m) const;
    std::vector<Monomial> basis_of_degree(int n) const;
    std::vector<Monomial> basis_of_degree(int n, int word_length) const;

    std::string format(const Monomial& m) const;
    std::string format(const Element& e) const;

private:
    std::vector<Generator> gens_;
    std::vector<int> odd_positions_;

    std::vector<Monomial> enumerate(int n, std::optional<int> word_length) const;
};

/// Derivation of a fixed degree, determined by its values on generators.
/// A missing image (nullopt) is an error when the generator is hit.
struct Derivation {
    int degree_shift = 0;
    std::vector<std::optional<Element>> images;
};

Element apply_derivation(const FreeAlgebra& alg, const Derivation& der, const Element& e);

/// Matrix of der from the degree-n basis to the degree-(n + shift) basis,
/// optionally restricted to a fixed sV word length.
SparseMatrix matrix_of_degree_slice(const FreeAlgebra& alg, const Derivation& der, int n,
                                    std::optional<int> word_length = std::nullopt);
SparseMatrix matrix_between(const FreeAlgebra& alg, const Derivation& der, const std::vector<Monomial>& domain,
                            const std::vector<Monomial>& codomain);

/// Coordinate vector of a homogeneous element in an ordered basis.
exactq::Vector coordinates(const Element& e, const std::vector<Monomial>& basis);
Element from_coordinates(const exactq::Vector& v, const std::vector<Monomial>& basis);

}  // namespace hodgeloop::gca
