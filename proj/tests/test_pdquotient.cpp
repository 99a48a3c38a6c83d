#include "hodgeloop/error.h"
#include "hodgeloop/pdquotient.h"

#include "support.h"

#include <doctest.h>

using namespace hodgeloop;
using namespace hodgeloop::pdquotient;

namespace {

bool all_zero(const std::vector<Rational>& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

exactq::Vector embed(const FiniteCdga& A, int degree, const exactq::Vector& local)
{
    exactq::Vector full(A.size());
    const auto idx = A.indices_of_degree(degree);
    for (std::size_t i = 0; i < idx.size(); ++i)
        full[idx[i]] = local[i];
    return full;
}

// Pairing H^k x H^{N-k} -> Q read off the top coefficient of cocycle products.
exactq::SparseMatrix cohomology_pairing(const FiniteCdga& A, int k)
{
    const int N = A.formal_dimension;
    const exactq::CohomologyPresentation left(A.differential_matrix(k), A.differential_matrix(k - 1));
    const exactq::CohomologyPresentation right(A.differential_matrix(N - k), A.differential_matrix(N - k - 1));
    exactq::SparseMatrix m(left.dim(), right.dim());
    for (std::size_t i = 0; i < left.dim(); ++i)
        for (std::size_t j = 0; j < right.dim(); ++j) {
            const auto product = A.multiply(embed(A, k, left.representatives()[i]), embed(A, N - k, right.representatives()[j]));
            m.set(i, j, product[A.top_index]);
        }
    return m;
}

}  // namespace

TEST_CASE("CP2 quotient is Q[x]/x^3")
{
    const auto q = build_quotient(testing_support::load("cp2"));
    const auto& A = q.algebra;
    CHECK(A.degrees == std::vector<int>{0, 2, 4});
    CHECK(A.labels == std::vector<std::string>{"1", "x", "x^2"});
    CHECK(all_zero(A.beta));
    CHECK(A.top_index == 2);
    CHECK(A.a(1, 1, 2) == 1);
    CHECK(A.a(1, 2, 2) == 0);
    CHECK(A.a(2, 2, 2) == 0);
    CHECK(q.map.fundamental_cocycle.terms().size() == 1);
}

TEST_CASE("S3 quotient: the ideal is zero")
{
    const auto model = testing_support::load("s3");
    const auto q = build_quotient(model);
    CHECK(q.algebra.degrees == std::vector<int>{0, 3});
    CHECK(q.map.complement_top.empty());
    CHECK(q.map.complement_below_top.empty());
    for (int n = 0; n <= 3; ++n) {
        const auto rho = q.map.at(model, n);
        CHECK(rho.rows() == rho.cols());
        CHECK(exactq::rank(rho) == rho.cols());
    }
}

TEST_CASE("S2 quotient is Q[x]/x^2")
{
    const auto q = build_quotient(testing_support::load("s2"));
    CHECK(q.algebra.degrees == std::vector<int>{0, 2});
    CHECK(q.algebra.labels == std::vector<std::string>{"1", "x"});
    CHECK(all_zero(q.algebra.beta));
    CHECK(q.algebra.a(1, 1, 1) == 0);
}

TEST_CASE("S2xS3 quotient keeps non-pairing cochains")
{
    const auto q = build_quotient(testing_support::load("s2xs3"));
    const auto& A = q.algebra;
    CHECK(A.size() == 6);
    CHECK(A.dim(3) == 2);
    // The cochain pairing is singular here; only its cohomology version is perfect.
    CHECK(exactq::rank(pairing_matrix(A)) == 4);
}

TEST_CASE("quotients of the corpus")
{
    for (const char* stem : testing_support::kCorpus) {
        CAPTURE(stem);
        const auto model = testing_support::load(stem);
        const auto q = build_quotient(model);
        const auto& A = q.algebra;
        const int N = model.formal_dimension;

        CHECK(A.formal_dimension == N);
        CHECK(A.dim(N) == 1);
        CHECK(A.dim(0) == 1);
        for (std::size_t i = 0; i < A.size(); ++i)
            CHECK((A.degrees[i] >= 0 && A.degrees[i] <= N));

        const auto ids = structure_identities(A);
        CHECK(ids.total() > 0);
        CHECK(verify_algebra_map(model, A, q.map) > 0);
        CHECK_NOTHROW(verify_chain_map(model, A, q.map));

        const auto verdicts = verify_quasi_iso(model, A, q.map, 12);
        CHECK(verdicts.size() == 13);
        for (const auto& v : verdicts) {
            CHECK(v.pass);
            CHECK(v.source_dim == v.target_dim);
            CHECK(v.induced_rank == v.source_dim);
        }
        for (int n = 0; n <= 12; ++n)
            CHECK(ideal_cohomology(model, q.map, n) == 0);

        for (int k = 0; k <= N; ++k) {
            const auto p = cohomology_pairing(A, k);
            CHECK(p.rows() == p.cols());
            CHECK(exactq::rank(p) == p.rows());
        }
        if (std::string(stem) != "s2xs3")
            CHECK(exactq::rank(pairing_matrix(A)) == A.size());
    }
}

TEST_CASE("graded commutativity of the structure constants")
{
    for (const char* stem : testing_support::kCorpus) {
        const auto A = build_quotient(testing_support::load(stem)).algebra;
        for (std::size_t i = 0; i < A.size(); ++i)
            for (std::size_t j = 0; j < A.size(); ++j)
                for (std::size_t k = 0; k < A.size(); ++k) {
                    const int sign = (A.degrees[i] * A.degrees[j]) % 2 ? -1 : 1;
                    CHECK(A.a(i, j, k) == sign * A.a(j, i, k));
                }
    }
}

TEST_CASE("corrupted structure constants are rejected")
{
    auto A = build_quotient(testing_support::load("cp2")).algebra;
    A.a(A.unit_index, A.top_index, A.top_index) += 1;
    try {
        structure_identities(A);
        FAIL("expected IdentityViolation");
    }
    catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IdentityViolation);
    }
}
