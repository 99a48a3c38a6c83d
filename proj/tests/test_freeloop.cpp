#include "hodgeloop/freeloop.h"

#include "support.h"

#include <doctest.h>

#include <chrono>
#include <map>

using namespace hodgeloop;
using namespace hodgeloop::freeloop;

namespace {

using Pieces = std::map<std::pair<int, int>, long>;

// Nonzero Hodge pieces through degree 14, produced by tests/oracle/loop_oracle.py.
const std::map<std::string, Pieces>& frozen_hodge()
{
    static const std::map<std::string, Pieces> table{
        {"s2", {{{0, 0}, 1}, {{1, 1}, 1}, {{2, 0}, 1}, {{3, 2}, 1}, {{4, 1}, 1}, {{5, 3}, 1}, {{6, 2}, 1}, {{7, 4}, 1},
                {{8, 3}, 1}, {{9, 5}, 1}, {{10, 4}, 1}, {{11, 6}, 1}, {{12, 5}, 1}, {{13, 7}, 1}, {{14, 6}, 1}}},
        {"s3", {{{0, 0}, 1}, {{2, 1}, 1}, {{3, 0}, 1}, {{4, 2}, 1}, {{5, 1}, 1}, {{6, 3}, 1}, {{7, 2}, 1}, {{8, 4}, 1},
                {{9, 3}, 1}, {{10, 5}, 1}, {{11, 4}, 1}, {{12, 6}, 1}, {{13, 5}, 1}, {{14, 7}, 1}}},
        {"cp2", {{{0, 0}, 1}, {{1, 1}, 1}, {{2, 0}, 1}, {{3, 1}, 1}, {{4, 0}, 1}, {{5, 2}, 1}, {{6, 1}, 1}, {{7, 2}, 1},
                 {{8, 1}, 1}, {{9, 3}, 1}, {{10, 2}, 1}, {{11, 3}, 1}, {{12, 2}, 1}, {{13, 4}, 1}, {{14, 3}, 1}}},
        {"cp3", {{{0, 0}, 1}, {{1, 1}, 1}, {{2, 0}, 1}, {{3, 1}, 1}, {{4, 0}, 1}, {{5, 1}, 1}, {{6, 0}, 1}, {{7, 2}, 1},
                 {{8, 1}, 1}, {{9, 2}, 1}, {{10, 1}, 1}, {{11, 2}, 1}, {{12, 1}, 1}, {{13, 3}, 1}, {{14, 2}, 1}}},
        {"s2xs3", {{{0, 0}, 1}, {{1, 1}, 1}, {{2, 0}, 1},  {{2, 1}, 1}, {{3, 0}, 1}, {{3, 2}, 2},  {{4, 1}, 3}, {{4, 2}, 1},
                   {{5, 0}, 1}, {{5, 1}, 1}, {{5, 3}, 3},  {{6, 2}, 5}, {{6, 3}, 1}, {{7, 1}, 2},  {{7, 2}, 1}, {{7, 4}, 4},
                   {{8, 3}, 7}, {{8, 4}, 1}, {{9, 2}, 3},  {{9, 3}, 1}, {{9, 5}, 5}, {{10, 4}, 9}, {{10, 5}, 1}, {{11, 3}, 4},
                   {{11, 4}, 1}, {{11, 6}, 6}, {{12, 5}, 11}, {{12, 6}, 1}, {{13, 4}, 5}, {{13, 5}, 1}, {{13, 7}, 7},
                   {{14, 6}, 13}, {{14, 7}, 1}}},
        {"su3", {{{0, 0}, 1},  {{2, 1}, 1},  {{3, 0}, 1},  {{4, 1}, 1},  {{4, 2}, 1},  {{5, 0}, 1},  {{5, 1}, 1},
                 {{6, 2}, 1},  {{6, 3}, 1},  {{7, 1}, 2},  {{7, 2}, 1},  {{8, 0}, 1},  {{8, 2}, 1},  {{8, 3}, 1},
                 {{8, 4}, 1},  {{9, 1}, 1},  {{9, 2}, 2},  {{9, 3}, 1},  {{10, 1}, 1}, {{10, 3}, 1}, {{10, 4}, 1},
                 {{10, 5}, 1}, {{11, 2}, 2}, {{11, 3}, 2}, {{11, 4}, 1}, {{12, 1}, 1}, {{12, 2}, 1}, {{12, 3}, 1},
                 {{12, 4}, 1}, {{12, 5}, 1}, {{12, 6}, 1}, {{13, 2}, 1}, {{13, 3}, 2}, {{13, 4}, 2}, {{13, 5}, 1},
                 {{14, 2}, 1}, {{14, 3}, 1}, {{14, 4}, 1}, {{14, 5}, 1}, {{14, 6}, 1}, {{14, 7}, 1}}},
    };
    return table;
}

std::vector<long> values(const RankTable& t, int n_max)
{
    std::vector<long> v;
    for (int n = 0; n <= n_max; ++n)
        v.push_back(t.at(n));
    return v;
}

// Coefficients of prod_{even} 1/(1 - t^d) * prod_{odd} (1 + t^d).
std::vector<long> hilbert_series(const std::vector<int>& degrees, int n_max)
{
    std::vector<long> series(static_cast<std::size_t>(n_max + 1), 0);
    series[0] = 1;
    for (int d : degrees) {
        std::vector<long> next(series.size(), 0);
        for (int n = 0; n <= n_max; ++n)
            next[n] = series[n] + (n >= d ? (d % 2 ? series[n - d] : next[n - d]) : 0);
        series = std::move(next);
    }
    return series;
}

}  // namespace

TEST_CASE("free loop model generators")
{
    const auto s2 = build_free_loop_model(testing_support::load("s2"));
    REQUIRE(s2.algebra.size() == 4);
    CHECK(s2.algebra.generator(2).name == "sx");
    CHECK(s2.algebra.generator(2).degree == 1);
    CHECK(s2.algebra.generator(3).name == "sy");
    CHECK(s2.algebra.generator(3).degree == 2);
    CHECK(*s2.differential.images[3] == gca::Element(s2.algebra.make_monomial({1, 0, 1, 0}), -2));

    const auto s3 = build_free_loop_model(testing_support::load("s3"));
    for (const auto& img : s3.differential.images)
        CHECK(img->is_zero());

    const auto cp2 = build_free_loop_model(testing_support::load("cp2"));
    CHECK(*cp2.differential.images[3] == gca::Element(cp2.algebra.make_monomial({2, 0, 1, 0}), -3));
}

TEST_CASE("Hodge tables match the reference computation through degree 14")
{
    for (const auto& [stem, pieces] : frozen_hodge()) {
        const auto flm = build_free_loop_model(testing_support::load(stem));
        const HodgeTable h = hodge_betti_table(flm, 14);
        for (int n = 0; n <= 14; ++n)
            for (int k = 0; k <= n; ++k) {
                const auto it = pieces.find({n, k});
                const long expected = it == pieces.end() ? 0 : it->second;
                CHECK_MESSAGE(h.at(n, k) == expected, stem << " H^" << n << "_(" << k << ")");
            }
    }
}

TEST_CASE("loop Betti numbers")
{
    const auto betti = [](const char* stem, int n_max) {
        return values(loop_betti(build_free_loop_model(testing_support::load(stem)), n_max), n_max);
    };
    CHECK(betti("s2", 4) == std::vector<long>{1, 1, 1, 1, 1});
    CHECK(betti("s3", 6) == std::vector<long>{1, 0, 1, 1, 1, 1, 1});
    CHECK(betti("cp2", 1) == std::vector<long>{1, 1});
    CHECK(betti("su3", 14) == std::vector<long>{1, 0, 1, 1, 2, 2, 2, 3, 4, 4, 4, 5, 6, 6, 6});
    CHECK(betti("s2xs3", 14) == std::vector<long>{1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14});
}

TEST_CASE("word length zero recovers the base cohomology")
{
    for (const char* stem : testing_support::kCorpus) {
        const auto model = testing_support::load(stem);
        const auto h = hodge_betti_table(build_free_loop_model(model), 12);
        const auto base = sullivan::cohomology_table(model, 12);
        CHECK(h.at(0, 0) == 1);
        for (int n = 0; n <= 12; ++n)
            CHECK_MESSAGE(h.at(n, 0) == base.at(n), stem << " degree " << n);
    }
}

TEST_CASE("Lie groups: loop cohomology is the product of Hilbert series")
{
    for (const char* stem : {"su3", "s3"}) {
        const auto start = std::chrono::steady_clock::now();
        const auto model = testing_support::load(stem);
        const auto flm = build_free_loop_model(model);
        const auto b = loop_betti(flm, 20);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        std::vector<int> base_degrees;
        std::vector<int> loop_degrees;
        for (const auto& g : model.algebra.generators()) {
            base_degrees.push_back(g.degree);
            loop_degrees.push_back(g.degree - 1);
        }
        const auto p = hilbert_series(base_degrees, 20);
        const auto q = hilbert_series(loop_degrees, 20);
        for (int n = 0; n <= 20; ++n) {
            long coeff = 0;
            for (int i = 0; i <= n; ++i)
                coeff += p[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(n - i)];
            CHECK_MESSAGE(b.at(n) == coeff, stem << " degree " << n);
        }
        CHECK(seconds < 5.0);
    }
}

TEST_CASE("parallel and serial tables agree")
{
    const auto flm = build_free_loop_model(testing_support::load("s2xs3"));
    const auto serial = hodge_betti_table(flm, 12, 1);
    const auto parallel = hodge_betti_table(flm, 12, 4);
    CHECK(serial.entries == parallel.entries);
}

TEST_CASE("growth reports")
{
    const auto s3 = loop_betti(build_free_loop_model(testing_support::load("s3")), 10);
    const auto g = growth_report(s3);
    CHECK(g.partial_sums == std::vector<long>{1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(g.classification == "sub-exponential");
    CHECK(g.untrusted_degrees == 0);

    const auto s2 = growth_report(loop_betti(build_free_loop_model(testing_support::load("s2")), 10));
    CHECK(s2.partial_sums == std::vector<long>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    CHECK(s2.classification == "sub-exponential");

    RankTable zeros;
    zeros.label = "zero";
    zeros.trusted_up_to = 6;
    for (int n = 0; n <= 6; ++n)
        zeros.entries[n] = 0;
    const auto z = growth_report(zeros);
    CHECK(z.classification == "degenerate");
    CHECK(z.partial_sums == std::vector<long>(7, 0));

    RankTable doubling;
    doubling.label = "doubling";
    doubling.trusted_up_to = 14;
    for (int n = 0; n <= 14; ++n)
        doubling.entries[n] = 1L << n;
    CHECK(growth_report(doubling).classification == "exponential");
}

TEST_CASE("truncated models carry honest trust bounds")
{
    // Wedge-like truncation: all we know is complete through degree 7.
    const auto model = sullivan::parse_model("model T\ndim 3\ncomplete-to 7\ngen x 3\n");
    const auto flm = build_free_loop_model(model);
    const auto b = loop_betti(flm, 10);
    CHECK(b.trusted_up_to == 6);
    const auto g = growth_report(b);
    CHECK(g.window == 6);
    CHECK(g.untrusted_degrees == 4);
    for (std::size_t i = 1; i < g.partial_sums.size(); ++i)
        CHECK(g.partial_sums[i] >= g.partial_sums[i - 1]);
}
