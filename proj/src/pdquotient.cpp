#include "hodgeloop/pdquotient.h"

#include "hodgeloop/error.h"

#include <algorithm>

namespace hodgeloop::pdquotient {

namespace {

SparseMatrix selection(std::size_t dim, const std::vector<std::size_t>& kept)
{
    SparseMatrix m(kept.size(), dim);
    for (std::size_t r = 0; r < kept.size(); ++r)
        m.set(r, kept[r], 1);
    return m;
}

std::string index_triple(std::size_t i, std::size_t j, std::size_t k)
{
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

std::vector<std::size_t> FiniteCdga::indices_of_degree(int k) const
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if (degrees[i] == k)
            idx.push_back(i);
    return idx;
}

Vector FiniteCdga::multiply(const Vector& x, const Vector& y) const
{
    const std::size_t n = size();
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(y[j]) == 0)
                continue;
            const Rational c = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(a(i, j, k)) != 0)
                    out[k] += c * a(i, j, k);
        }
    }
    return out;
}

SparseMatrix FiniteCdga::differential_matrix(int k) const
{
    const auto src = indices_of_degree(k);
    const auto dst = indices_of_degree(k + 1);
    SparseMatrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
        for (std::size_t r = 0; r < dst.size(); ++r)
            m.set(r, c, b(src[c], dst[r]));
    return m;
}

SparseMatrix QuotientMap::at(const sullivan::SullivanModel& model, int k) const
{
    if (k < 0 || k > formal_dimension)
        return SparseMatrix(0, k < 0 ? 0 : model.algebra.basis_of_degree(k).size());
    return rho[static_cast<std::size_t>(k)];
}

std::string QuotientMap::ideal_summary(const sullivan::SullivanModel& model) const
{
    const int N = formal_dimension;
    return "dim S^" + std::to_string(N - 1) + " = " + std::to_string(complement_below_top.size()) + ", dim dS^" +
           std::to_string(N - 1) + " = " + std::to_string(top_boundary_rank) + ", dim S^" + std::to_string(N) + " = " +
           std::to_string(complement_top.size()) + ", (AV)^{>" + std::to_string(N) + "} in full" +
           (model.algebra.basis_of_degree(N + 1).empty() ? " (first degree above N is empty)" : "");
}

Quotient build_quotient(const sullivan::SullivanModel& model)
{
    const sullivan::PoincareReport pd = sullivan::check_poincare_duality(model);
    const int N = model.formal_dimension;
    const auto& alg = model.algebra;

    Quotient q;
    QuotientMap& qm = q.map;
    qm.formal_dimension = N;
    qm.fundamental_cocycle = pd.fundamental_cocycle;

    // Representatives of the basis of A, degree by degree.
    std::vector<gca::Element> reps;
    std::vector<int> rep_degrees;
    qm.rho.resize(static_cast<std::size_t>(N + 1));
    for (int k = 0; k <= N; ++k) {
        const auto basis = alg.basis_of_degree(k);
        if (k < N - 1) {
            for (const auto& m : basis) {
                reps.emplace_back(m);
                rep_degrees.push_back(k);
            }
            qm.rho[static_cast<std::size_t>(k)] = SparseMatrix::identity(basis.size());
        }
        else if (k == N - 1) {
            // S^{N-1}: monomials on the pivot columns of d^{N-1}; the others span a complement.
            const auto red = exactq::rref(sullivan::differential_matrix(model, k));
            qm.complement_below_top = red.pivot_cols;
            std::vector<std::size_t> kept;
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (!std::binary_search(red.pivot_cols.begin(), red.pivot_cols.end(), i)) {
                    kept.push_back(i);
                    reps.emplace_back(basis[i]);
                    rep_degrees.push_back(k);
                }
            qm.rho[static_cast<std::size_t>(k)] = selection(basis.size(), kept);
        }
        else {
            // A^N = (AV)^N / (dS^{N-1} + S^N); rho^N reads off the Omega coordinate
            // in the frame [boundaries | S^N | Omega].
            const SparseMatrix d_in = sullivan::differential_matrix(model, N - 1);
            const auto in_red = exactq::rref(d_in);
            const auto out_red = exactq::rref(sullivan::differential_matrix(model, N));
            qm.complement_top = out_red.pivot_cols;
            qm.top_boundary_rank = in_red.rank;

            std::vector<Vector> frame;
            for (std::size_t c : in_red.pivot_cols)
                frame.push_back(d_in.column(c));
            for (std::size_t p : out_red.pivot_cols) {
                Vector e(basis.size());
                e[p] = 1;
                frame.push_back(std::move(e));
            }
            frame.push_back(gca::coordinates(pd.fundamental_cocycle, basis));
            if (frame.size() != basis.size())
                throw Error(ErrorCode::NotPoincareDuality,
                            "(AV)^N / (dS^{N-1} + S^N) has dimension " + std::to_string(basis.size() + 1 - frame.size()), N);
            const auto inv = exactq::inverse(SparseMatrix::from_columns(basis.size(), frame));
            if (!inv)
                throw Error(ErrorCode::TopClassCollapse, "the fundamental cocycle lies in dS^{N-1} + S^N", N);
            SparseMatrix functional(1, basis.size());
            for (const auto& [c, x] : inv->row(basis.size() - 1))
                functional.set(0, c, x);
            qm.rho[static_cast<std::size_t>(k)] = std::move(functional);
            reps.push_back(pd.fundamental_cocycle);
            rep_degrees.push_back(N);
        }
    }

    FiniteCdga& A = q.algebra;
    const std::size_t n = reps.size();
    A.formal_dimension = N;
    A.degrees = rep_degrees;
    for (const auto& r : reps)
        A.labels.push_back(alg.format(r));
    A.unit_index = 0;
    A.top_index = n - 1;
    A.alpha.assign(n * n * n, Rational(0));
    A.beta.assign(n * n, Rational(0));

    // Position of each basis element inside its degree block.
    std::vector<std::size_t> block_offset(static_cast<std::size_t>(N + 1), 0);
    for (int k = 1; k <= N; ++k)
        block_offset[static_cast<std::size_t>(k)] = block_offset[static_cast<std::size_t>(k - 1)] + A.dim(k - 1);

    auto project = [&](const gca::Element& e, int degree) {
        Vector out(n);
        if (degree > N || e.is_zero())
            return out;
        const Vector local = qm.rho[static_cast<std::size_t>(degree)].apply(gca::coordinates(e, alg.basis_of_degree(degree)));
        for (std::size_t r = 0; r < local.size(); ++r)
            out[block_offset[static_cast<std::size_t>(degree)] + r] = local[r];
        return out;
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int deg = A.degrees[i] + A.degrees[j];
            if (deg > N)
                continue;
            const Vector prod = project(alg.multiply(reps[i], reps[j]), deg);
            for (std::size_t k = 0; k < n; ++k)
                A.a(i, j, k) = prod[k];
        }
    for (std::size_t i = 0; i < n; ++i) {
        const gca::Element d = gca::apply_derivation(alg, model.differential, reps[i]);
        const Vector img = project(d, A.degrees[i] + 1);
        for (std::size_t j = 0; j < n; ++j)
            A.b(i, j) = img[j];
    }

    if (A.dim(0) != 1 || A.dim(1) != 0 || A.dim(N) != 1)
        throw Error(ErrorCode::IdentityViolation, "quotient does not have A^0 = Q, A^1 = 0, A^N = Q");
    return q;
}

IdentityReport structure_identities(const FiniteCdga& A)
{
    const std::size_t n = A.size();
    IdentityReport rep;
    auto odd = [&](std::size_t i) { return A.degrees[i] % 2 != 0; };
    auto violation = [](const std::string& what) { return Error(ErrorCode::IdentityViolation, what); };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Rational expected = (odd(i) && odd(j)) ? Rational(-A.a(j, i, k)) : A.a(j, i, k);
                if (A.a(i, j, k) != expected)
                    throw violation("graded commutativity fails at " + index_triple(i, j, k));
                ++rep.commutativity;
            }

    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const Rational expected = j == k ? 1 : 0;
            if (A.a(A.unit_index, j, k) != expected)
                throw violation("unit law fails at " + index_triple(A.unit_index, j, k));
            ++rep.unit;
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t t = 0; t < n; ++t) {
                    Rational lhs = 0, rhs = 0;
                    for (std::size_t r = 0; r < n; ++r) {
                        lhs += A.a(i, j, r) * A.a(r, k, t);
                        rhs += A.a(j, k, r) * A.a(i, r, t);
                    }
                    if (lhs != rhs)
                        throw violation("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                        std::to_string(k) + "," + std::to_string(t) + ")");
                    ++rep.associativity;
                }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t s = 0; s < n; ++s) {
                Rational lhs = 0, first = 0, second = 0;
                for (std::size_t r = 0; r < n; ++r) {
                    lhs += A.a(i, j, r) * A.b(r, s);
                    first += A.b(i, r) * A.a(r, j, s);
                    second += A.b(j, r) * A.a(i, r, s);
                }
                const Rational rhs = odd(i) ? Rational(first - second) : Rational(first + second);
                if (lhs != rhs)
                    throw violation("Leibniz rule fails at " + index_triple(i, j, s));
                ++rep.leibniz;
            }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            Rational sum = 0;
            for (std::size_t j = 0; j < n; ++j)
                sum += A.b(i, j) * A.b(j, k);
            if (sgn(sum) != 0)
                throw violation("d^2 != 0 at (" + std::to_string(i) + "," + std::to_string(k) + ")");
            ++rep.square_zero;
        }
    return rep;
}

std::vector<DegreeVerdict> verify_quasi_iso(const sullivan::SullivanModel& model, const FiniteCdga& A, const QuotientMap& qmap,
                                            int n_max)
{
    std::vector<DegreeVerdict> out;
    const int top = model.trusted_base(n_max);
    for (int n = 0; n <= top; ++n) {
        const exactq::CohomologyPresentation src(sullivan::differential_matrix(model, n), sullivan::differential_matrix(model, n - 1));
        const SparseMatrix a_out = A.differential_matrix(n);
        const SparseMatrix a_in = n == 0 ? SparseMatrix(A.dim(0), 0) : A.differential_matrix(n - 1);
        DegreeVerdict v;
        v.degree = n;
        v.source_dim = static_cast<long>(src.dim());
        v.target_dim = static_cast<long>(exactq::cohomology_dim(a_out, a_in));
        v.induced_rank = static_cast<long>(exactq::induced_rank(qmap.at(model, n), src, a_in));
        v.pass = v.source_dim == v.target_dim && v.induced_rank == v.source_dim;
        out.push_back(v);
        if (!v.pass)
            throw Error(ErrorCode::QuasiIsoFailure,
                        "degree " + std::to_string(n) + ": dim H(AV) = " + std::to_string(v.source_dim) + ", dim H(A) = " +
                            std::to_string(v.target_dim) + ", rank H(rho) = " + std::to_string(v.induced_rank),
                        n);
    }
    return out;
}

std::size_t verify_algebra_map(const sullivan::SullivanModel& model, const FiniteCdga& A, const QuotientMap& qmap)
{
    const int N = model.formal_dimension;
    const auto& alg = model.algebra;
    std::size_t checked = 0;
    auto embed = [&](const Vector& local, int degree) {
        Vector full(A.size());
        const auto idx = A.indices_of_degree(degree);
        for (std::size_t r = 0; r < idx.size(); ++r)
            full[idx[r]] = local[r];
        return full;
    };
    for (int p = 0; p <= N; ++p)
        for (int r = 0; p + r <= N; ++r) {
            const auto bp = alg.basis_of_degree(p);
            const auto br = alg.basis_of_degree(r);
            const auto bpr = alg.basis_of_degree(p + r);
            for (std::size_t i = 0; i < bp.size(); ++i)
                for (std::size_t j = 0; j < br.size(); ++j) {
                    Vector ei(bp.size()), ej(br.size());
                    ei[i] = 1;
                    ej[j] = 1;
                    const Vector lhs = embed(qmap.at(model, p + r).apply(
                                                 gca::coordinates(alg.multiply(gca::Element(bp[i]), gca::Element(br[j])), bpr)),
                                             p + r);
                    const Vector rhs = A.multiply(embed(qmap.at(model, p).apply(ei), p), embed(qmap.at(model, r).apply(ej), r));
                    if (lhs != rhs)
                        throw Error(ErrorCode::ChainMapFailure,
                                    "rho is not multiplicative on " + alg.format(bp[i]) + " * " + alg.format(br[j]), p + r);
                    ++checked;
                }
        }
    return checked;
}

void verify_chain_map(const sullivan::SullivanModel& model, const FiniteCdga& A, const QuotientMap& qmap)
{
    for (int k = 0; k <= model.formal_dimension; ++k) {
        const SparseMatrix lhs = qmap.at(model, k + 1) * sullivan::differential_matrix(model, k);
        const SparseMatrix rhs = A.differential_matrix(k) * qmap.at(model, k);
        if (!(lhs == rhs))
            throw Error(ErrorCode::ChainMapFailure, "rho d != d_A rho in degree " + std::to_string(k), k);
    }
}

long ideal_cohomology(const sullivan::SullivanModel& model, const QuotientMap& qmap, int n)
{
    // Cocycles of I in degree n: common kernel of d^n and rho^n.
    const SparseMatrix d_n = sullivan::differential_matrix(model, n);
    const SparseMatrix rho_n = qmap.at(model, n);
    SparseMatrix stacked(d_n.rows() + rho_n.rows(), d_n.cols());
    for (std::size_t r = 0; r < d_n.rows(); ++r)
        for (const auto& [c, x] : d_n.row(r))
            stacked.set(r, c, x);
    for (std::size_t r = 0; r < rho_n.rows(); ++r)
        for (const auto& [c, x] : rho_n.row(r))
            stacked.set(d_n.rows() + r, c, x);
    const long cocycles = static_cast<long>(d_n.cols() - exactq::rank(stacked));

    // Boundaries: d applied to a basis of I^{n-1}.
    long boundaries = 0;
    if (n >= 1) {
        const auto ideal_basis = exactq::kernel_basis(qmap.at(model, n - 1));
        if (!ideal_basis.empty()) {
            const SparseMatrix d_prev = sullivan::differential_matrix(model, n - 1);
            const SparseMatrix basis_matrix = SparseMatrix::from_columns(d_prev.cols(), ideal_basis);
            boundaries = static_cast<long>(exactq::rank(d_prev * basis_matrix));
        }
    }
    return cocycles - boundaries;
}

SparseMatrix pairing_matrix(const FiniteCdga& A)
{
    const std::size_t n = A.size();
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.set(i, j, A.a(i, j, A.top_index));
    return m;
}

}  // namespace hodgeloop::pdquotient
