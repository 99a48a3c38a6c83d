#include "hodgeloop/freeloop.h"

#include "hodgeloop/error.h"
#include "hodgeloop/parallel.h"

#include <algorithm>
#include <cmath>

namespace hodgeloop::freeloop {

using exactq::SparseMatrix;

gca::Element FreeLoopModel::lift(const gca::Element& e) const
{
    gca::Element out;
    for (const auto& [m, c] : e.terms()) {
        std::vector<int> exps = m.exponents();
        exps.resize(algebra.size(), 0);
        out.add_term(gca::Monomial(std::move(exps), m.degree()), c);
    }
    return out;
}

FreeLoopModel build_free_loop_model(const sullivan::SullivanModel& model)
{
    sullivan::require_valid(model);

    FreeLoopModel flm;
    flm.base = model;
    const auto& base_gens = model.algebra.generators();
    const std::size_t nb = base_gens.size();
    std::vector<gca::Generator> gens = base_gens;
    for (std::size_t i = 0; i < nb; ++i)
        gens.push_back(gca::Generator{"s" + base_gens[i].name, base_gens[i].degree - 1, gca::GeneratorKind::suspended, i});
    flm.algebra = gca::FreeAlgebra(std::move(gens));

    flm.suspension.degree_shift = -1;
    flm.suspension.images.assign(2 * nb, gca::Element{});
    for (std::size_t i = 0; i < nb; ++i)
        flm.suspension.images[i] = flm.algebra.element_of(nb + i);

    flm.differential.degree_shift = 1;
    flm.differential.images.assign(2 * nb, gca::Element{});
    for (std::size_t i = 0; i < nb; ++i) {
        const gca::Element dv = flm.lift(*model.differential.images[i]);
        flm.differential.images[i] = dv;
        gca::Element dsv = gca::apply_derivation(flm.algebra, flm.suspension, dv);
        dsv *= -1;
        flm.differential.images[nb + i] = std::move(dsv);
    }

    for (std::size_t i = 0; i < 2 * nb; ++i) {
        const gca::Element dd = gca::apply_derivation(flm.algebra, flm.differential, *flm.differential.images[i]);
        if (!dd.is_zero())
            throw Error(ErrorCode::DifferentialSquareNonzero,
                        "D D " + flm.algebra.generator(i).name + " = " + flm.algebra.format(dd), flm.algebra.generator(i).degree);
    }
    return flm;
}

SparseMatrix loop_differential(const FreeLoopModel& flm, int n, std::optional<int> word_length)
{
    if (n < 0) {
        const auto target = word_length ? flm.algebra.basis_of_degree(n + 1, *word_length) : flm.algebra.basis_of_degree(n + 1);
        return SparseMatrix(target.size(), 0);
    }
    return gca::matrix_of_degree_slice(flm.algebra, flm.differential, n, word_length);
}

long HodgeTable::at(int n, int k) const
{
    auto it = entries.find({n, k});
    return it == entries.end() ? 0 : it->second;
}

int HodgeTable::max_word_length() const
{
    int k = 0;
    for (const auto& [key, v] : entries)
        if (v > 0)
            k = std::max(k, key.second);
    return k;
}

HodgeTable hodge_betti_table(const FreeLoopModel& flm, int n_max, unsigned jobs)
{
    HodgeTable table;
    table.n_max = n_max;
    table.trusted_up_to = flm.base.trusted_loop(n_max);
    // every sv has degree >= 1, so word length k <= n
    std::vector<std::pair<int, int>> slices;
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= n; ++k)
            slices.emplace_back(n, k);
    std::vector<long> dims(slices.size());
    parallel_for(slices.size(), jobs, [&](std::size_t i) {
        const auto [n, k] = slices[i];
        dims[i] = static_cast<long>(exactq::cohomology_dim(loop_differential(flm, n, k), loop_differential(flm, n - 1, k)));
    });
    for (std::size_t i = 0; i < slices.size(); ++i)
        table.entries[slices[i]] = dims[i];
    return table;
}

RankTable loop_betti(const FreeLoopModel& flm, const HodgeTable& hodge, unsigned jobs)
{
    RankTable table;
    table.label = "H(LM)";
    table.trusted_up_to = hodge.trusted_up_to;
    std::vector<long> dims(static_cast<std::size_t>(hodge.n_max + 1));
    parallel_for(dims.size(), jobs, [&](std::size_t i) {
        const int n = static_cast<int>(i);
        dims[i] = static_cast<long>(exactq::cohomology_dim(loop_differential(flm, n), loop_differential(flm, n - 1)));
    });
    for (int n = 0; n <= hodge.n_max; ++n) {
        long sum = 0;
        for (int k = 0; k <= n; ++k)
            sum += hodge.at(n, k);
        if (sum != dims[static_cast<std::size_t>(n)])
            throw Error(ErrorCode::HodgeSumMismatch,
                        "degree " + std::to_string(n) + ": Hodge pieces sum to " + std::to_string(sum) + " but the full slice has " +
                            std::to_string(dims[static_cast<std::size_t>(n)]),
                        n);
        table.entries[n] = sum;
    }
    return table;
}

RankTable loop_betti(const FreeLoopModel& flm, int n_max, unsigned jobs)
{
    return loop_betti(flm, hodge_betti_table(flm, n_max, jobs), jobs);
}

namespace {

// Residual of the least-squares line through (x_i, y_i).
double line_residual(const std::vector<double>& x, const std::vector<double>& y, double* slope)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    const double b = den == 0 ? 0 : (n * sxy - sx * sy) / den;
    const double a = (sy - b * sx) / n;
    double r = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        r += (y[i] - a - b * x[i]) * (y[i] - a - b * x[i]);
    if (slope)
        *slope = b;
    return r;
}

}  // namespace

GrowthReport growth_report(const RankTable& table)
{
    GrowthReport report;
    int last = -1;
    for (const auto& [n, v] : table.entries)
        last = std::max(last, n);
    report.window = std::min(last, table.trusted_up_to);
    for (const auto& [n, v] : table.entries)
        if (n > table.trusted_up_to)
            ++report.untrusted_degrees;

    long running = 0;
    for (int n = 0; n <= report.window; ++n) {
        running += table.at(n);
        report.partial_sums.push_back(running);
        if (n == 0 || report.partial_sums[static_cast<std::size_t>(n - 1)] == 0)
            report.ratios.emplace_back(std::nullopt);
        else
            report.ratios.emplace_back(static_cast<double>(running) / static_cast<double>(report.partial_sums[static_cast<std::size_t>(n - 1)]));
    }

    std::vector<double> xs, logx, logs;
    for (int n = 2; n <= report.window; ++n) {
        const long s = report.partial_sums[static_cast<std::size_t>(n)];
        if (s <= 0)
            continue;
        const double root = std::pow(static_cast<double>(s), 1.0 / n);
        report.upper_constant = report.upper_constant ? std::max(*report.upper_constant, root) : root;
        report.lower_constant = report.lower_constant ? std::min(*report.lower_constant, root) : root;
        xs.push_back(n);
        logx.push_back(std::log(static_cast<double>(n)));
        logs.push_back(std::log(static_cast<double>(s)));
    }

    if (xs.size() < 2) {
        report.classification = "degenerate";
        return report;
    }
    // Compare an exponential fit (log s linear in n) with a polynomial one
    // (log s linear in log n); ties go to the polynomial model.
    double rate = 0;
    const double exp_residual = line_residual(xs, logs, &rate);
    const double poly_residual = line_residual(logx, logs, nullptr);
    const bool exponential = exp_residual + 1e-12 < poly_residual && rate > std::log(1.1);
    report.classification = exponential ? "exponential" : "sub-exponential";
    return report;
}

}  // namespace hodgeloop::freeloop
