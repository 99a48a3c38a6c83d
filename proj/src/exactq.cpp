#include "hodgeloop/exactq.h"

#include "hodgeloop/error.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hodgeloop::exactq {

std::string to_string(const Rational& q)
{
    return q.get_str();
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i].emplace_back(i, Rational(1));
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    SparseMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("from_dense: ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(rows[r][c]) != 0)
                m.data_[r].emplace_back(c, rows[r][c]);
    }
    return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, const std::vector<Vector>& columns)
{
    SparseMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw std::invalid_argument("from_columns: column length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            if (sgn(columns[c][r]) != 0)
                m.data_[r].emplace_back(c, columns[c][r]);
    }
    return m;
}

std::size_t SparseMatrix::nonzeros() const noexcept
{
    std::size_t n = 0;
    for (const auto& row : data_)
        n += row.size();
    return n;
}

void SparseMatrix::check_index(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("SparseMatrix index out of range");
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const
{
    check_index(r, c);
    const Row& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c)
        return it->second;
    return 0;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& value)
{
    check_index(r, c);
    Row& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.first < col; });
    const bool present = it != row.end() && it->first == c;
    if (sgn(value) == 0) {
        if (present)
            row.erase(it);
    }
    else if (present)
        it->second = value;
    else
        row.insert(it, Entry(c, value));
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& value)
{
    if (sgn(value) != 0)
        set(r, c, at(r, c) + value);
}

Vector SparseMatrix::column(std::size_t c) const
{
    if (c >= cols_)
        throw std::out_of_range("SparseMatrix column out of range");
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = at(r, c);
    return v;
}

Vector SparseMatrix::apply(const Vector& v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("SparseMatrix::apply: size mismatch");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, x] : data_[r])
            out[r] += x * v[c];
    return out;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, x] : data_[r])
            t.data_[c].emplace_back(r, x);
    return t;
}

SparseMatrix SparseMatrix::scaled(const Rational& factor) const
{
    if (sgn(factor) == 0)
        return SparseMatrix(rows_, cols_);
    SparseMatrix m = *this;
    for (auto& row : m.data_)
        for (auto& e : row)
            e.second *= factor;
    return m;
}

SparseMatrix SparseMatrix::column_block(std::size_t first, std::size_t count) const
{
    if (first + count > cols_)
        throw std::out_of_range("column_block out of range");
    SparseMatrix m(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, x] : data_[r])
            if (c >= first && c < first + count)
                m.data_[r].emplace_back(c - first, x);
    return m;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const
{
    std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, x] : data_[r])
            d[r][c] = x;
    return d;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product: shape mismatch");
    SparseMatrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        std::map<std::size_t, Rational> acc;
        for (const auto& [k, x] : a.data_[r])
            for (const auto& [c, y] : b.data_[k])
                acc[c] += x * y;
        for (auto& [c, v] : acc)
            if (sgn(v) != 0)
                m.data_[r].emplace_back(c, std::move(v));
    }
    return m;
}

namespace {

SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, int sign)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum: shape mismatch");
    SparseMatrix m = a;
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (const auto& [c, x] : b.row(r))
            m.add(r, c, sign > 0 ? Rational(x) : Rational(-x));
    return m;
}

}  // namespace

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b)
{
    return combine(a, b, +1);
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b)
{
    return combine(a, b, -1);
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

/****************************************************
 *        Fraction-free row reduction
 ***************************************************/

namespace {

using IntEntry = std::pair<std::size_t, mpz_class>;
using IntRow = std::vector<IntEntry>;

// Scale a rational row to a primitive integer row.
IntRow to_primitive(const SparseMatrix::Row& row)
{
    mpz_class den = 1;
    for (const auto& e : row)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.second.get_den_mpz_t());
    IntRow out;
    out.reserve(row.size());
    mpz_class g = 0;
    for (const auto& [c, x] : row) {
        mpz_class v = x.get_num() * (den / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        out.emplace_back(c, std::move(v));
    }
    if (g > 1)
        for (auto& e : out)
            mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    return out;
}

void make_primitive(IntRow& row)
{
    mpz_class g = 0;
    for (const auto& e : row)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g > 1)
        for (auto& e : row)
            mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

const mpz_class* find_entry(const IntRow& row, std::size_t c)
{
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const IntEntry& e, std::size_t col) { return e.first < col; });
    return it != row.end() && it->first == c ? &it->second : nullptr;
}

// target <- p * target - a * source, where a is target's entry in the pivot column.
void eliminate(IntRow& target, const IntRow& source, const mpz_class& p, const mpz_class& a)
{
    IntRow out;
    out.reserve(target.size() + source.size());
    auto t = target.begin();
    auto s = source.begin();
    while (t != target.end() || s != source.end()) {
        if (s == source.end() || (t != target.end() && t->first < s->first)) {
            out.emplace_back(t->first, p * t->second);
            ++t;
        }
        else if (t == target.end() || s->first < t->first) {
            out.emplace_back(s->first, -a * s->second);
            ++s;
        }
        else {
            mpz_class v = p * t->second - a * s->second;
            if (v != 0)
                out.emplace_back(t->first, std::move(v));
            ++t;
            ++s;
        }
    }
    make_primitive(out);
    target = std::move(out);
}

RrefResult finish(std::size_t rows, std::size_t cols, const std::vector<IntRow>& echelon,
                  std::vector<std::size_t> pivots)
{
    RrefResult result;
    result.reduced = SparseMatrix(rows, cols);
    for (std::size_t i = 0; i < echelon.size(); ++i) {
        const mpz_class& p = *find_entry(echelon[i], pivots[i]);
        for (const auto& [c, v] : echelon[i]) {
            Rational q(v, p);
            q.canonicalize();
            result.reduced.set(i, c, q);
        }
    }
    result.rank = pivots.size();
    result.pivot_cols = std::move(pivots);
    return result;
}

}  // namespace

namespace detail {

RrefResult rref_sparse(const SparseMatrix& m)
{
    std::vector<IntRow> rows;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty())
            rows.push_back(to_primitive(m.row(r)));

    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
        // Remaining rows all have leading column >= c; take the first one at c.
        std::size_t pick = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (!rows[r].empty() && rows[r].front().first == c) {
                pick = r;
                break;
            }
        if (pick == rows.size())
            continue;
        if (pick != rank) {
            // Rotate rather than swap to keep the remaining rows in original order.
            std::rotate(rows.begin() + rank, rows.begin() + pick, rows.begin() + pick + 1);
        }
        const mpz_class p = rows[rank].front().second;
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r].empty() || rows[r].front().first != c)
                continue;
            const mpz_class a = rows[r].front().second;
            eliminate(rows[r], rows[rank], p, a);
        }
        pivots.push_back(c);
        ++rank;
    }
    rows.resize(rank);

    for (std::size_t i = rank; i-- > 0;) {
        const mpz_class p = *find_entry(rows[i], pivots[i]);
        for (std::size_t k = 0; k < i; ++k) {
            const mpz_class* a = find_entry(rows[k], pivots[i]);
            if (a) {
                const mpz_class coeff = *a;
                eliminate(rows[k], rows[i], p, coeff);
            }
        }
    }
    return finish(m.rows(), m.cols(), rows, std::move(pivots));
}

RrefResult rref_dense(const SparseMatrix& m)
{
    const std::size_t cols = m.cols();
    std::vector<std::vector<mpz_class>> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (m.row(r).empty())
            continue;
        std::vector<mpz_class> dense(cols);
        for (auto& [c, v] : to_primitive(m.row(r)))
            dense[c] = std::move(v);
        rows.push_back(std::move(dense));
    }

    auto reduce = [cols](std::vector<mpz_class>& target, const std::vector<mpz_class>& source, std::size_t c) {
        const mpz_class p = source[c];
        const mpz_class a = target[c];
        mpz_class g = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            target[j] = p * target[j] - a * source[j];
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), target[j].get_mpz_t());
        }
        if (g > 1)
            for (auto& x : target)
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    };

    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pick = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][c] != 0) {
                pick = r;
                break;
            }
        if (pick == rows.size())
            continue;
        if (pick != rank)
            std::rotate(rows.begin() + rank, rows.begin() + pick, rows.begin() + pick + 1);
        for (std::size_t r = rank + 1; r < rows.size(); ++r)
            if (rows[r][c] != 0)
                reduce(rows[r], rows[rank], c);
        pivots.push_back(c);
        ++rank;
    }
    rows.resize(rank);
    for (std::size_t i = rank; i-- > 0;)
        for (std::size_t k = 0; k < i; ++k)
            if (rows[k][pivots[i]] != 0)
                reduce(rows[k], rows[i], pivots[i]);

    std::vector<IntRow> echelon(rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[i][c] != 0)
                echelon[i].emplace_back(c, rows[i][c]);
    return finish(m.rows(), cols, echelon, std::move(pivots));
}

}  // namespace detail

RrefResult rref(const SparseMatrix& m)
{
    return m.cols() < detail::kDenseThreshold ? detail::rref_dense(m) : detail::rref_sparse(m);
}

std::size_t rank(const SparseMatrix& m)
{
    return rref(m).rank;
}

std::vector<Vector> kernel_basis(const SparseMatrix& m)
{
    const RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_cols)
        is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < r.rank; ++i)
            v[r.pivot_cols[i]] = -r.reduced.at(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t cohomology_dim(const SparseMatrix& d_out, const SparseMatrix& d_in)
{
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument("cohomology_dim: d_out and d_in do not compose");
    if (d_out.rows() > 0 && d_in.cols() > 0 && !(d_out * d_in).is_zero())
        throw Error(ErrorCode::CompositionNotZero, "d_out * d_in is nonzero");
    const std::size_t kernel = d_out.cols() - (d_out.rows() == 0 ? 0 : rank(d_out));
    const std::size_t image = d_in.cols() == 0 ? 0 : rank(d_in);
    return kernel - image;
}

std::optional<Vector> solve(const SparseMatrix& m, const Vector& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: right-hand side has wrong length");
    SparseMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (const auto& [c, x] : m.row(r))
            aug.set(r, c, x);
        aug.set(r, m.cols(), b[r]);
    }
    const RrefResult red = rref(aug);
    if (!red.pivot_cols.empty() && red.pivot_cols.back() == m.cols())
        return std::nullopt;
    Vector x(m.cols());
    for (std::size_t i = 0; i < red.rank; ++i)
        x[red.pivot_cols[i]] = red.reduced.at(i, m.cols());
    return x;
}

std::optional<SparseMatrix> inverse(const SparseMatrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    const std::size_t n = m.rows();
    SparseMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (const auto& [c, x] : m.row(r))
            aug.set(r, c, x);
        aug.set(r, n + r, 1);
    }
    const RrefResult red = rref(aug);
    if (red.rank < n || (n > 0 && red.pivot_cols[n - 1] != n - 1))
        return std::nullopt;
    return red.reduced.column_block(n, n);
}

CohomologyPresentation::CohomologyPresentation(const SparseMatrix& d_out, const SparseMatrix& d_in)
    : space_dim_(d_out.cols()), d_out_(d_out)
{
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument("CohomologyPresentation: d_out and d_in do not compose");
    const RrefResult in = rref(d_in);
    for (std::size_t c : in.pivot_cols)
        boundaries_.push_back(d_in.column(c));

    std::vector<Vector> cocycles = d_out.rows() == 0 ? kernel_basis(SparseMatrix(0, space_dim_)) : kernel_basis(d_out);
    std::vector<Vector> frame_cols = boundaries_;
    frame_cols.insert(frame_cols.end(), cocycles.begin(), cocycles.end());
    const RrefResult span = rref(SparseMatrix::from_columns(space_dim_, frame_cols));
    for (std::size_t c : span.pivot_cols)
        if (c >= boundaries_.size())
            representatives_.push_back(cocycles[c - boundaries_.size()]);

    frame_cols = boundaries_;
    frame_cols.insert(frame_cols.end(), representatives_.begin(), representatives_.end());
    frame_ = SparseMatrix::from_columns(space_dim_, frame_cols);
}

std::optional<Vector> CohomologyPresentation::class_of(const Vector& z) const
{
    if (z.size() != space_dim_)
        throw std::invalid_argument("class_of: vector has wrong length");
    if (d_out_.rows() > 0) {
        for (const auto& x : d_out_.apply(z))
            if (sgn(x) != 0)
                return std::nullopt;
    }
    const auto coords = solve(frame_, z);
    if (!coords)
        return std::nullopt;
    return Vector(coords->begin() + static_cast<std::ptrdiff_t>(boundaries_.size()), coords->end());
}

std::size_t induced_rank(const SparseMatrix& f, const CohomologyPresentation& source, const SparseMatrix& target_d_in)
{
    if (f.cols() != source.space_dim() || f.rows() != target_d_in.rows())
        throw std::invalid_argument("induced_rank: shape mismatch");
    std::vector<Vector> cols;
    for (std::size_t c = 0; c < target_d_in.cols(); ++c)
        cols.push_back(target_d_in.column(c));
    const std::size_t boundary_rank = cols.empty() ? 0 : rank(SparseMatrix::from_columns(f.rows(), cols));
    for (const auto& rep : source.representatives())
        cols.push_back(f.apply(rep));
    const std::size_t total = cols.empty() ? 0 : rank(SparseMatrix::from_columns(f.rows(), cols));
    return total - boundary_rank;
}

}  // namespace hodgeloop::exactq
