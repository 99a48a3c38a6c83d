#include "hodgeloop/sullivan.h"

#include "hodgeloop/error.h"
#include "hodgeloop/parallel.h"

#include <algorithm>
#include <numeric>

namespace hodgeloop::sullivan {

using exactq::SparseMatrix;

int SullivanModel::trusted_base(int n_max) const noexcept
{
    return complete_to ? std::min(n_max, *complete_to) : n_max;
}

int SullivanModel::trusted_loop(int n_max) const noexcept
{
    return complete_to ? std::min(n_max, *complete_to - 1) : n_max;
}

int SullivanModel::max_generator_degree() const noexcept
{
    int m = 0;
    for (const auto& g : algebra.generators())
        m = std::max(m, g.degree);
    return m;
}

long RankTable::at(int degree) const
{
    auto it = entries.find(degree);
    return it == entries.end() ? 0 : it->second;
}

bool ValidationReport::passed() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ValidationReport validate(const SullivanModel& model)
{
    ValidationReport report;
    const auto& alg = model.algebra;
    const auto& d = model.differential;

    {
        Check c{"simply connected (no degree-1 generators)", true, ""};
        for (const auto& g : alg.generators())
            if (g.degree < 2) {
                c.pass = false;
                c.detail += (c.detail.empty() ? "" : ", ") + g.name + " has degree " + std::to_string(g.degree);
            }
        report.checks.push_back(std::move(c));
    }
    {
        Check c{"differential degrees", d.degree_shift == 1 && d.images.size() == alg.size(), ""};
        for (std::size_t i = 0; c.pass && i < alg.size(); ++i) {
            const auto& img = d.images[i];
            if (!img)
                c.pass = false, c.detail = "no image for " + alg.generator(i).name;
            else if (!img->is_zero() && img->degree() != alg.generator(i).degree + 1)
                c.pass = false, c.detail = "d " + alg.generator(i).name + " is not of degree |v|+1";
        }
        report.checks.push_back(std::move(c));
        if (!report.checks.back().pass)
            return report;
    }
    {
        Check c{"minimal (decomposable differential)", true, ""};
        for (std::size_t i = 0; i < alg.size(); ++i)
            for (const auto& [m, coeff] : d.images[i]->terms()) {
                const auto& e = m.exponents();
                if (std::accumulate(e.begin(), e.end(), 0) < 2) {
                    c.pass = false;
                    c.detail += (c.detail.empty() ? "" : ", ") + std::string("d ") + alg.generator(i).name + " has linear term " +
                                alg.format(m);
                }
            }
        report.checks.push_back(std::move(c));
    }
    {
        Check c{"d^2 = 0 on generators", true, ""};
        for (std::size_t i = 0; i < alg.size(); ++i) {
            const gca::Element dd = gca::apply_derivation(alg, d, *d.images[i]);
            if (!dd.is_zero()) {
                c.pass = false;
                c.detail += (c.detail.empty() ? "" : ", ") + std::string("d d ") + alg.generator(i).name + " = " + alg.format(dd);
            }
        }
        report.checks.push_back(std::move(c));
    }
    report.checks.push_back(Check{"formal dimension", model.formal_dimension > 0, "N = " + std::to_string(model.formal_dimension)});
    report.trusted_degree = model.complete_to;
    return report;
}

void require_valid(const SullivanModel& model)
{
    const ValidationReport report = validate(model);
    if (report.passed())
        return;
    std::string failed;
    for (const auto& c : report.checks)
        if (!c.pass)
            failed += (failed.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
    throw Error(ErrorCode::ValidationFailed, failed);
}

SparseMatrix differential_matrix(const SullivanModel& model, int n)
{
    if (n < 0)
        return SparseMatrix(model.algebra.basis_of_degree(n + 1).size(), 0);
    return gca::matrix_of_degree_slice(model.algebra, model.differential, n);
}

namespace {

exactq::CohomologyPresentation present(const SullivanModel& model, int n)
{
    return exactq::CohomologyPresentation(differential_matrix(model, n), differential_matrix(model, n - 1));
}

}  // namespace

RankTable cohomology_table(const SullivanModel& model, int n_max, unsigned jobs)
{
    RankTable table;
    table.label = "H(AV,d)";
    table.trusted_up_to = model.trusted_base(n_max);
    std::vector<long> dims(static_cast<std::size_t>(std::max(n_max + 1, 0)));
    parallel_for(dims.size(), jobs, [&](std::size_t i) {
        const int n = static_cast<int>(i);
        dims[i] = static_cast<long>(exactq::cohomology_dim(differential_matrix(model, n), differential_matrix(model, n - 1)));
    });
    for (std::size_t i = 0; i < dims.size(); ++i)
        table.entries[static_cast<int>(i)] = dims[i];
    return table;
}

PoincareReport check_poincare_duality(const SullivanModel& model)
{
    const int N = model.formal_dimension;
    const auto& alg = model.algebra;
    auto fail = [](int degree, const std::string& msg) {
        return Error(ErrorCode::NotPoincareDuality, "degree " + std::to_string(degree) + ": " + msg, degree);
    };

    PoincareReport report;
    report.top_degree = N;
    int window = std::max(2 * N + 1, N + 2 * model.max_generator_degree());
    if (model.complete_to)
        window = std::min(window, *model.complete_to);
    if (window < N)
        throw fail(N, "model is only complete through degree " + std::to_string(window) + ", below the formal dimension");
    report.vanishing_checked_to = window;

    std::vector<exactq::CohomologyPresentation> coh;
    coh.reserve(static_cast<std::size_t>(N + 1));
    for (int n = 0; n <= N; ++n)
        coh.push_back(present(model, n));
    for (int n = 0; n <= N; ++n)
        report.betti.push_back(static_cast<long>(coh[static_cast<std::size_t>(n)].dim()));

    const auto& top = coh[static_cast<std::size_t>(N)];
    if (top.dim() != 1)
        throw fail(N, "top cohomology has dimension " + std::to_string(top.dim()) + ", expected 1");
    const auto top_basis = alg.basis_of_degree(N);
    report.fundamental_cocycle = gca::from_coordinates(top.representatives().front(), top_basis);

    for (int k = 0; k <= N; ++k) {
        const auto& left = coh[static_cast<std::size_t>(k)];
        const auto& right = coh[static_cast<std::size_t>(N - k)];
        if (left.dim() != right.dim())
            throw fail(k, "dim H^" + std::to_string(k) + " = " + std::to_string(left.dim()) + " but dim H^" +
                              std::to_string(N - k) + " = " + std::to_string(right.dim()));
        const auto lb = alg.basis_of_degree(k);
        const auto rb = alg.basis_of_degree(N - k);
        SparseMatrix pairing(left.dim(), right.dim());
        for (std::size_t i = 0; i < left.dim(); ++i) {
            const gca::Element a = gca::from_coordinates(left.representatives()[i], lb);
            for (std::size_t j = 0; j < right.dim(); ++j) {
                const gca::Element b = gca::from_coordinates(right.representatives()[j], rb);
                const auto cls = top.class_of(gca::coordinates(alg.multiply(a, b), top_basis));
                if (!cls)
                    throw Error(ErrorCode::CompositionNotZero, "product of cocycles is not a cocycle");
                pairing.set(i, j, cls->front());
            }
        }
        if (exactq::rank(pairing) != left.dim())
            throw fail(k, "cup-product pairing H^" + std::to_string(k) + " x H^" + std::to_string(N - k) + " is degenerate");
        report.pairings.push_back(PairingBlock{k, std::move(pairing)});
    }

    for (int n = N + 1; n <= window; ++n) {
        const std::size_t h = exactq::cohomology_dim(differential_matrix(model, n), differential_matrix(model, n - 1));
        report.betti.push_back(static_cast<long>(h));
        if (h != 0)
            throw fail(n, "cohomology above the formal dimension (dim H^" + std::to_string(n) + " = " + std::to_string(h) + ")");
    }
    return report;
}

}  // namespace hodgeloop::sullivan
