#include "hodgeloop/gca.h"

#include "hodgeloop/error.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hodgeloop::gca {

std::vector<Generator> canonical_order(const std::vector<Generator>& gens)
{
    std::vector<std::size_t> base, susp;
    for (std::size_t i = 0; i < gens.size(); ++i)
        (gens[i].kind == GeneratorKind::base ? base : susp).push_back(i);
    std::stable_sort(base.begin(), base.end(), [&](std::size_t a, std::size_t b) { return gens[a].degree < gens[b].degree; });

    std::vector<std::size_t> new_index(gens.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        new_index[base[i]] = i;
    // suspended generators follow the order of their partners
    std::stable_sort(susp.begin(), susp.end(), [&](std::size_t a, std::size_t b) {
        return new_index[gens[a].partner.value()] < new_index[gens[b].partner.value()];
    });
    for (std::size_t i = 0; i < susp.size(); ++i)
        new_index[susp[i]] = base.size() + i;

    std::vector<Generator> out;
    out.reserve(gens.size());
    for (std::size_t i : base)
        out.push_back(gens[i]);
    for (std::size_t i : susp) {
        Generator g = gens[i];
        g.partner = new_index[*g.partner];
        out.push_back(std::move(g));
    }
    return out;
}

bool Monomial::is_unit() const noexcept
{
    return std::all_of(exponents_.begin(), exponents_.end(), [](int e) { return e == 0; });
}

/******** Element ********/

Element::Element(const Monomial& m, const Rational& c)
{
    add_term(m, c);
}

bool Element::is_homogeneous() const noexcept
{
    if (terms_.empty())
        return true;
    return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

std::optional<int> Element::degree() const noexcept
{
    if (terms_.empty() || !is_homogeneous())
        return std::nullopt;
    return terms_.begin()->first.degree();
}

Rational Element::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(const Monomial& m, const Rational& c)
{
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& other)
{
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& other)
{
    for (const auto& [m, c] : other.terms_)
        add_term(m, -c);
    return *this;
}

Element& Element::operator*=(const Rational& c)
{
    if (sgn(c) == 0)
        terms_.clear();
    else
        for (auto& kv : terms_)
            kv.second *= c;
    return *this;
}

/******** FreeAlgebra ********/

FreeAlgebra::FreeAlgebra(std::vector<Generator> gens) : gens_(std::move(gens))
{
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].degree < 1)
            throw std::invalid_argument("generator " + gens_[i].name + " must have positive degree");
        if (gens_[i].odd())
            odd_positions_.push_back(static_cast<int>(i));
    }
}

std::optional<std::size_t> FreeAlgebra::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return i;
    return std::nullopt;
}

Monomial FreeAlgebra::unit() const
{
    return Monomial(std::vector<int>(gens_.size(), 0), 0);
}

Monomial FreeAlgebra::monomial_of(std::size_t gen, int power) const
{
    std::vector<int> e(gens_.size(), 0);
    e.at(gen) = power;
    return make_monomial(std::move(e));
}

Monomial FreeAlgebra::make_monomial(std::vector<int> exponents) const
{
    if (exponents.size() != gens_.size())
        throw std::invalid_argument("exponent vector has wrong length");
    int degree = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (exponents[i] < 0 || (gens_[i].odd() && exponents[i] > 1))
            throw Error(ErrorCode::OddExponent, "odd generator " + gens_[i].name + " with exponent > 1");
        degree += exponents[i] * gens_[i].degree;
    }
    return Monomial(std::move(exponents), degree);
}

std::optional<SignedMonomial> FreeAlgebra::normalize_product(const Monomial& a, const Monomial& b) const
{
    const auto& ea = a.exponents();
    const auto& eb = b.exponents();
    // Inversions between odd factors of a and odd factors of b: pairs (i in a, j in b) with i > j.
    int inversions = 0;
    int odd_in_a_after = 0;
    for (auto it = odd_positions_.rbegin(); it != odd_positions_.rend(); ++it) {
        const int g = *it;
        if (ea[g] && eb[g])
            return std::nullopt;
        if (eb[g])
            inversions += odd_in_a_after;
        if (ea[g])
            ++odd_in_a_after;
    }
    std::vector<int> e(ea.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
    return SignedMonomial{inversions % 2 ? -1 : 1, Monomial(std::move(e), a.degree() + b.degree())};
}

Element FreeAlgebra::multiply(const Element& a, const Element& b) const
{
    Element out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            if (auto p = normalize_product(ma, mb))
                out.add_term(p->monomial, p->sign * ca * cb);
    return out;
}

int FreeAlgebra::word_length(const Monomial& m) const
{
    int k = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].kind == GeneratorKind::suspended)
            k += m.exponent(i);
    return k;
}

std::vector<Monomial> FreeAlgebra::enumerate(int n, std::optional<int> word_length) const
{
    std::vector<Monomial> out;
    if (n < 0)
        return out;
    std::vector<int> e(gens_.size(), 0);
    // Depth-first over generators from the last one, so that results come out
    // in increasing lexicographic order of exponent vectors.
    auto rec = [&](auto&& self, std::size_t pos, int left, int wl) -> void {
        if (pos == 0) {
            if (left == 0 && (!word_length || wl == *word_length))
                out.emplace_back(e, n);
            return;
        }
        const std::size_t g = pos - 1;
        const Generator& gen = gens_[g];
        const int cap = gen.odd() ? 1 : left / gen.degree;
        const bool susp = gen.kind == GeneratorKind::suspended;
        for (int k = 0; k <= cap && k * gen.degree <= left; ++k) {
            e[g] = k;
            self(self, g, left - k * gen.degree, wl + (susp ? k : 0));
        }
        e[g] = 0;
    };
    rec(rec, gens_.size(), n, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> FreeAlgebra::basis_of_degree(int n) const
{
    return enumerate(n, std::nullopt);
}

std::vector<Monomial> FreeAlgebra::basis_of_degree(int n, int word_length) const
{
    return enumerate(n, word_length);
}

std::string FreeAlgebra::format(const Monomial& m) const
{
    std::string s;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (m.exponent(i) == 0)
            continue;
        if (!s.empty())
            s += '*';
        s += gens_[i].name;
        if (m.exponent(i) > 1)
            s += '^' + std::to_string(m.exponent(i));
    }
    return s.empty() ? "1" : s;
}

std::string FreeAlgebra::format(const Element& e) const
{
    if (e.is_zero())
        return "0";
    std::string s;
    for (const auto& [m, c] : e.terms()) {
        const bool unit = m.is_unit();
        Rational mag = abs(c);
        if (s.empty())
            s += sgn(c) < 0 ? "-" : "";
        else
            s += sgn(c) < 0 ? " - " : " + ";
        if (mag != 1 || unit)
            s += mag.get_str() + (unit ? "" : "*");
        if (!unit)
            s += format(m);
    }
    return s;
}

/******** Derivations ********/

Element apply_derivation(const FreeAlgebra& alg, const Derivation& der, const Element& e)
{
    if (der.images.size() != alg.size())
        throw std::invalid_argument("derivation has wrong number of generator images");
    Element out;
    for (const auto& [m, c] : e.terms()) {
        const auto& exps = m.exponents();
        int prefix_degree = 0;
        for (std::size_t j = 0; j < exps.size(); ++j) {
            if (exps[j] == 0)
                continue;
            const auto& image = der.images[j];
            if (!image)
                throw Error(ErrorCode::MissingImage, "no image declared for generator " + alg.generator(j).name);
            if (!image->is_zero()) {
                std::vector<int> left(exps.size(), 0), right(exps.size(), 0);
                for (std::size_t i = 0; i < j; ++i)
                    left[i] = exps[i];
                left[j] = exps[j] - 1;
                for (std::size_t i = j + 1; i < exps.size(); ++i)
                    right[i] = exps[i];
                const bool negate = (der.degree_shift * prefix_degree) % 2 != 0;
                Rational coeff = c * exps[j];
                if (negate)
                    coeff = -coeff;
                Element term = alg.multiply(alg.multiply(Element(alg.make_monomial(left), coeff), *image),
                                            Element(alg.make_monomial(right)));
                out += term;
            }
            prefix_degree += exps[j] * alg.generator(j).degree;
        }
    }
    return out;
}

exactq::Vector coordinates(const Element& e, const std::vector<Monomial>& basis)
{
    exactq::Vector v(basis.size());
    for (const auto& [m, c] : e.terms()) {
        auto it = std::lower_bound(basis.begin(), basis.end(), m);
        if (it == basis.end() || *it != m)
            throw Error(ErrorCode::InhomogeneousElement, "element has a term outside the given basis");
        v[static_cast<std::size_t>(it - basis.begin())] = c;
    }
    return v;
}

Element from_coordinates(const exactq::Vector& v, const std::vector<Monomial>& basis)
{
    Element e;
    for (std::size_t i = 0; i < v.size(); ++i)
        e.add_term(basis.at(i), v[i]);
    return e;
}

SparseMatrix matrix_between(const FreeAlgebra& alg, const Derivation& der, const std::vector<Monomial>& domain,
                            const std::vector<Monomial>& codomain)
{
    SparseMatrix m(codomain.size(), domain.size());
    for (std::size_t c = 0; c < domain.size(); ++c) {
        const Element image = apply_derivation(alg, der, Element(domain[c]));
        for (const auto& [mono, coeff] : image.terms()) {
            auto it = std::lower_bound(codomain.begin(), codomain.end(), mono);
            if (it == codomain.end() || *it != mono)
                throw Error(ErrorCode::InhomogeneousElement,
                            "derivation image " + alg.format(mono) + " is outside the target slice");
            m.set(static_cast<std::size_t>(it - codomain.begin()), c, coeff);
        }
    }
    return m;
}

SparseMatrix matrix_of_degree_slice(const FreeAlgebra& alg, const Derivation& der, int n, std::optional<int> word_length)
{
    const auto domain = word_length ? alg.basis_of_degree(n, *word_length) : alg.basis_of_degree(n);
    const auto codomain = word_length ? alg.basis_of_degree(n + der.degree_shift, *word_length)
                                      : alg.basis_of_degree(n + der.degree_shift);
    return matrix_between(alg, der, domain, codomain);
}

}  // namespace hodgeloop::gca
