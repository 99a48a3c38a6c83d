#pragma once

#include "hodgeloop/sullivan.h"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hodgeloop::freeloop {

using sullivan::RankTable;

/// (AV (x) A sV, D) with D(v) = dv and D(sv) = -s(dv). Generators are the base
/// generators followed by their suspensions in the same order.
struct FreeLoopModel {
    sullivan::SullivanModel base;
    gca::FreeAlgebra algebra;
    gca::Derivation differential;  // D, degree +1
    gca::Derivation suspension;    // s, degree -1, s(v) = sv, s(sv) = 0

    std::size_t base_count() const noexcept { return base.algebra.size(); }
    std::size_t suspension_of(std::size_t base_index) const noexcept { return base_count() + base_index; }
    /// Embed an element of AV into the loop algebra.
    gca::Element lift(const gca::Element& e) const;
};

FreeLoopModel build_free_loop_model(const sullivan::SullivanModel& model);

/// Matrix of D from degree n to n + 1, optionally restricted to word length k.
exactq::SparseMatrix loop_differential(const FreeLoopModel& flm, int n, std::optional<int> word_length = std::nullopt);

struct HodgeTable {
    std::map<std::pair<int, int>, long> entries;  // (degree n, word length k) -> dim
    int n_max = 0;
    int trusted_up_to = 0;

    long at(int n, int k) const;
    int max_word_length() const;
};

HodgeTable hodge_betti_table(const FreeLoopModel& flm, int n_max, unsigned jobs = 1);
/// Betti numbers of the full slices, cross-checked against the Hodge row sums.
RankTable loop_betti(const FreeLoopModel& flm, int n_max, unsigned jobs = 1);
RankTable loop_betti(const FreeLoopModel& flm, const HodgeTable& hodge, unsigned jobs = 1);

struct GrowthReport {
    int window = 0;                                 // sums are reported for 0..window
    std::vector<long> partial_sums;                 // s_n = sum_{i <= n} b_i
    std::vector<std::optional<double>> ratios;      // s_n / s_{n-1}
    std::optional<double> upper_constant;           // max s_n^{1/n}, n >= 2
    std::optional<double> lower_constant;           // min s_n^{1/n}, n >= 2
    std::string classification;                     // degenerate | sub-exponential | exponential
    int untrusted_degrees = 0;                      // table entries beyond the trust bound
};

GrowthReport growth_report(const RankTable& table);

}  // namespace hodgeloop::freeloop
