#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hodgeloop::exactq {

/// Exact rational scalar. GMP keeps every value canonical
/// (gcd(num, den) = 1, den > 0, zero stored as 0/1).
using Rational = mpq_class;
using Vector = std::vector<Rational>;

std::string to_string(const Rational& q);

/// Row-major sparse matrix over Q. Rows are kept sorted by column and never
/// store an explicit zero.
class SparseMatrix {
public:
    using Entry = std::pair<std::size_t, Rational>;
    using Row = std::vector<Entry>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
    static SparseMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nonzeros() const noexcept;
    bool is_zero() const noexcept { return nonzeros() == 0; }

    Rational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& value);
    void add(std::size_t r, std::size_t c, const Rational& value);
    const Row& row(std::size_t r) const { return data_.at(r); }

    Vector column(std::size_t c) const;
    Vector apply(const Vector& v) const;
    SparseMatrix transpose() const;
    SparseMatrix scaled(const Rational& factor) const;
    /// Columns [first, first + count) as a new matrix.
    SparseMatrix column_block(std::size_t first, std::size_t count) const;
    std::vector<std::vector<Rational>> to_dense() const;

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Row> data_;

    void check_index(std::size_t r, std::size_t c) const;
};

struct RrefResult {
    SparseMatrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

/// Reduced row-echelon form. Matrices narrower than kDenseThreshold columns
/// are reduced densely; both paths give the identical (unique) result.
RrefResult rref(const SparseMatrix& m);
std::size_t rank(const SparseMatrix& m);

/// One vector per non-pivot column f, with entry 1 at f, ordered by f.
std::vector<Vector> kernel_basis(const SparseMatrix& m);

/// dim ker(d_out) - rank(d_in); throws CompositionNotZero if d_out * d_in != 0.
std::size_t cohomology_dim(const SparseMatrix& d_out, const SparseMatrix& d_in);

/// Some x with m x = b, or nullopt if inconsistent. Free variables are zero.
std::optional<Vector> solve(const SparseMatrix& m, const Vector& b);
std::optional<SparseMatrix> inverse(const SparseMatrix& m);

/// Cocycle representatives of H = ker(d_out) / im(d_in) together with the
/// data to read off the class of any cocycle.
class CohomologyPresentation {
public:
    CohomologyPresentation(const SparseMatrix& d_out, const SparseMatrix& d_in);

    std::size_t dim() const noexcept { return representatives_.size(); }
    std::size_t space_dim() const noexcept { return space_dim_; }
    const std::vector<Vector>& representatives() const noexcept { return representatives_; }
    const std::vector<Vector>& boundaries() const noexcept { return boundaries_; }

    /// Coordinates of the class of cocycle z in the representative basis;
    /// nullopt when z is not a cocycle.
    std::optional<Vector> class_of(const Vector& z) const;

private:
    std::size_t space_dim_ = 0;
    SparseMatrix d_out_;
    std::vector<Vector> boundaries_;
    std::vector<Vector> representatives_;
    SparseMatrix frame_;  // [boundaries | representatives]
};

/// Rank of the map induced on cohomology by f : C -> C', given the source
/// presentation and the incoming differential of the target.
std::size_t induced_rank(const SparseMatrix& f, const CohomologyPresentation& source,
                         const SparseMatrix& target_d_in);

namespace detail {
inline constexpr std::size_t kDenseThreshold = 64;
RrefResult rref_dense(const SparseMatrix& m);
RrefResult rref_sparse(const SparseMatrix& m);
}  // namespace detail

}  // namespace hodgeloop::exactq
