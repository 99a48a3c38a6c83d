#include "hodgeloop/error.h"
#include "hodgeloop/freeloop.h"
#include "hodgeloop/gca.h"

#include "support.h"

#include <doctest.h>

#include <random>

using namespace hodgeloop;
using namespace hodgeloop::gca;

namespace {

Generator gen(const std::string& name, int degree, GeneratorKind kind = GeneratorKind::base, std::optional<std::size_t> partner = {})
{
    return Generator{name, degree, kind, partner};
}

// x2, y3, sx1, sy2 as in the loop model of S^2.
FreeAlgebra s2_loop_algebra()
{
    return FreeAlgebra({gen("x", 2), gen("y", 3), gen("sx", 1, GeneratorKind::suspended, 0), gen("sy", 2, GeneratorKind::suspended, 1)});
}

// Coefficients of prod_{even} 1/(1 - t^d) * prod_{odd} (1 + t^d) up to t^n_max.
std::vector<long> hilbert_series(const std::vector<int>& degrees, int n_max)
{
    std::vector<long> series(static_cast<std::size_t>(n_max + 1), 0);
    series[0] = 1;
    for (int d : degrees) {
        std::vector<long> next(series.size(), 0);
        for (int n = 0; n <= n_max; ++n) {
            if (d % 2) {
                next[n] = series[n] + (n >= d ? series[n - d] : 0);
            }
            else {
                next[n] = series[n] + (n >= d ? next[n - d] : 0);
            }
        }
        series = std::move(next);
    }
    return series;
}

Element random_element(std::mt19937& rng, const FreeAlgebra& alg, int degree)
{
    const auto basis = alg.basis_of_degree(degree);
    Element e;
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (const auto& m : basis)
        e.add_term(m, coeff(rng));
    return e;
}

}  // namespace

TEST_CASE("Koszul-signed products")
{
    const FreeAlgebra alg = s2_loop_algebra();
    const Monomial sx = alg.monomial_of(2);
    const Monomial x = alg.monomial_of(0);
    CHECK(!alg.normalize_product(sx, sx));

    const auto xsx = alg.normalize_product(x, sx);
    REQUIRE(xsx);
    CHECK(xsx->sign == 1);
    CHECK(xsx->monomial == alg.make_monomial({1, 0, 1, 0}));

    const FreeAlgebra odd({gen("sx", 1), gen("z", 3)});
    const auto sxz = odd.normalize_product(odd.monomial_of(0), odd.monomial_of(1));
    REQUIRE(sxz);
    CHECK(!odd.normalize_product(sxz->monomial, odd.monomial_of(0)));

    // z . sx = - sx . z
    const auto zsx = odd.normalize_product(odd.monomial_of(1), odd.monomial_of(0));
    REQUIRE(zsx);
    CHECK(zsx->sign == -1);
}

TEST_CASE("odd generators cannot repeat")
{
    const FreeAlgebra alg = s2_loop_algebra();
    try {
        (void)alg.make_monomial({0, 2, 0, 0});
        FAIL("expected OddExponent");
    }
    catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OddExponent);
    }
}

TEST_CASE("monomial bases")
{
    const FreeAlgebra a({gen("x", 2), gen("y", 5)});
    const auto b6 = a.basis_of_degree(6);
    REQUIRE(b6.size() == 1);
    CHECK(b6[0] == a.monomial_of(0, 3));
    CHECK(a.basis_of_degree(0) == std::vector<Monomial>{a.unit()});

    const FreeAlgebra loop = s2_loop_algebra();
    const auto b2 = loop.basis_of_degree(2);
    REQUIRE(b2.size() == 2);
    CHECK(std::find(b2.begin(), b2.end(), loop.monomial_of(3)) != b2.end());
    CHECK(std::find(b2.begin(), b2.end(), loop.monomial_of(0)) != b2.end());
    CHECK(std::is_sorted(b2.begin(), b2.end()));

    // Word-length pieces partition each degree.
    for (int n = 0; n <= 9; ++n) {
        std::size_t total = 0;
        for (int k = 0; k <= n; ++k) {
            for (const auto& m : loop.basis_of_degree(n, k))
                CHECK(loop.word_length(m) == k);
            total += loop.basis_of_degree(n, k).size();
        }
        CHECK(total == loop.basis_of_degree(n).size());
    }
}

TEST_CASE("basis sizes follow the Hilbert series")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Generator> gens;
        std::vector<int> degrees;
        const int count = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < count; ++i) {
            const int d = 1 + static_cast<int>(rng() % 7);
            gens.push_back(gen("g" + std::to_string(i), d));
            degrees.push_back(d);
        }
        const FreeAlgebra alg(gens);
        const auto series = hilbert_series(degrees, 20);
        for (int n = 0; n <= 20; ++n)
            CHECK(static_cast<long>(alg.basis_of_degree(n).size()) == series[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("graded commutativity of monomial products")
{
    const FreeAlgebra alg({gen("a", 1), gen("b", 2), gen("c", 3), gen("e", 4), gen("f", 5)});
    std::vector<Monomial> monomials;
    for (int n = 0; n <= 9; ++n)
        for (const auto& m : alg.basis_of_degree(n))
            monomials.push_back(m);
    for (const auto& m1 : monomials)
        for (const auto& m2 : monomials) {
            const auto p = alg.normalize_product(m1, m2);
            const auto q = alg.normalize_product(m2, m1);
            REQUIRE(p.has_value() == q.has_value());
            if (!p)
                continue;
            const int expected = (m1.degree() % 2 && m2.degree() % 2) ? -q->sign : q->sign;
            CHECK(p->monomial == q->monomial);
            CHECK(p->sign == expected);
        }
}

TEST_CASE("associativity of the product on random elements")
{
    const FreeAlgebra alg({gen("a", 1), gen("b", 2), gen("c", 3), gen("e", 3)});
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const Element x = random_element(rng, alg, 1 + static_cast<int>(rng() % 4));
        const Element y = random_element(rng, alg, 1 + static_cast<int>(rng() % 4));
        const Element z = random_element(rng, alg, 1 + static_cast<int>(rng() % 4));
        CHECK(alg.multiply(alg.multiply(x, y), z) == alg.multiply(x, alg.multiply(y, z)));
    }
}

TEST_CASE("derivations")
{
    const FreeAlgebra alg = s2_loop_algebra();
    Derivation s;
    s.degree_shift = -1;
    s.images = {alg.element_of(2), alg.element_of(3), Element{}, Element{}};
    const Element x2(alg.monomial_of(0, 2));
    CHECK(apply_derivation(alg, s, x2) == Element(alg.make_monomial({1, 0, 1, 0}), 2));
    CHECK(apply_derivation(alg, s, Element(alg.unit())).is_zero());

    Derivation d;
    d.degree_shift = 1;
    d.images = {Element{}, x2, Element{}, std::nullopt};
    try {
        (void)apply_derivation(alg, d, alg.element_of(3));
        FAIL("expected MissingImage");
    }
    catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingImage);
    }
}

TEST_CASE("loop differential on S^2 generators")
{
    const auto flm = freeloop::build_free_loop_model(testing_support::load("s2"));
    const auto& alg = flm.algebra;
    const Element dsy = apply_derivation(alg, flm.differential, alg.element_of(flm.suspension_of(1)));
    CHECK(dsy == Element(alg.make_monomial({1, 0, 1, 0}), -2));

    // Degree-2 slice, basis (sy, x) up to order: column(sy) = -2 x.sx, column(x) = 0.
    const auto domain = alg.basis_of_degree(2);
    const auto codomain = alg.basis_of_degree(3);
    const SparseMatrix m = matrix_of_degree_slice(alg, flm.differential, 2);
    REQUIRE(m.rows() == codomain.size());
    REQUIRE(m.cols() == domain.size());
    for (std::size_t c = 0; c < domain.size(); ++c) {
        const auto col = m.column(c);
        if (domain[c] == alg.monomial_of(0))
            CHECK(col == exactq::Vector(codomain.size()));
        else
            CHECK(from_coordinates(col, codomain) == dsy);
    }
}

TEST_CASE("degree slices of the base differential")
{
    const auto model = testing_support::load("s2");
    const SparseMatrix d3 = matrix_of_degree_slice(model.algebra, model.differential, 3);
    CHECK(d3 == SparseMatrix::from_dense({{1}}));

    Derivation zero;
    zero.degree_shift = 1;
    zero.images.assign(model.algebra.size(), Element{});
    for (int n = 0; n <= 8; ++n)
        CHECK(matrix_of_degree_slice(model.algebra, zero, n).is_zero());
}

TEST_CASE("differentials square to zero slice by slice")
{
    for (const char* stem : testing_support::kCorpus) {
        const auto flm = freeloop::build_free_loop_model(testing_support::load(stem));
        for (int n = 0; n <= 12; ++n) {
            const SparseMatrix a = matrix_of_degree_slice(flm.algebra, flm.differential, n);
            const SparseMatrix b = matrix_of_degree_slice(flm.algebra, flm.differential, n + 1);
            CHECK_MESSAGE((b * a).is_zero(), stem << " degree " << n);
        }
    }
}

TEST_CASE("word length is preserved by D")
{
    const auto flm = freeloop::build_free_loop_model(testing_support::load("cp2"));
    for (int n = 0; n <= 10; ++n)
        for (int k = 0; k <= n; ++k) {
            // matrix_between throws if an image leaves the (n+1, k) slice
            const auto dom = flm.algebra.basis_of_degree(n, k);
            const auto cod = flm.algebra.basis_of_degree(n + 1, k);
            CHECK_NOTHROW((void)matrix_between(flm.algebra, flm.differential, dom, cod));
        }
}
