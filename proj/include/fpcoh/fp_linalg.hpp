#pragma once
// Exact linear algebra over prime fields.
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fpcoh::linalg {

using Residue = std::uint32_t;

struct Entry {
    std::uint32_t col;
    Residue val;
    bool operator==(const Entry&) const = default;
};

// Sorted by column, no zero values.
using SparseRow = std::vector<Entry>;

bool is_prime(std::uint64_t n);
Residue inv_mod(Residue a, Residue p);
inline Residue reduce(std::int64_t v, Residue p)
{
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<Residue>(r < 0 ? r + p : r);
}
inline Residue mul_mod(Residue a, Residue b, Residue p)
{
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}

class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(Residue p, std::size_t rows, std::size_t cols);

    static FpMatrix identity(Residue p, std::size_t n);
    static FpMatrix from_dense(Residue p, const std::vector<std::vector<std::int64_t>>& a);

    Residue p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Residue get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, std::int64_t v);
    void add(std::size_t r, std::size_t c, std::int64_t v);
    const SparseRow& row(std::size_t r) const { return data_[r]; }
    // Row must be sorted with nonzero values < p.
    void set_row(std::size_t r, SparseRow row);

    std::size_t nnz() const;
    double density() const;
    bool is_zero() const { return nnz() == 0; }

    FpMatrix transpose() const;
    FpMatrix operator*(const FpMatrix& b) const;
    FpMatrix operator+(const FpMatrix& b) const;
    FpMatrix operator-(const FpMatrix& b) const;
    FpMatrix scaled(std::int64_t s) const;
    bool operator==(const FpMatrix& b) const;

    // Adds b into the block whose top-left corner is (r0, c0).
    void add_block(std::size_t r0, std::size_t c0, const FpMatrix& b, std::int64_t scale = 1);

    std::vector<Residue> apply(const std::vector<Residue>& x) const;
    std::vector<std::vector<Residue>> to_dense() const;

    static FpMatrix vstack(const std::vector<const FpMatrix*>& parts);
    static FpMatrix hstack(const std::vector<const FpMatrix*>& parts);

private:
    Residue p_ = 2;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<SparseRow> data_;
};

// Row space in reduced row echelon form. The basis is canonical, so two
// equal subspaces have identical bases.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(Residue p, std::size_t n);
    static Subspace full(Residue p, std::size_t n);
    static Subspace from_rows(Residue p, std::size_t n, std::vector<SparseRow> rows);
    // Rows already in reduced echelon form, sorted by pivot; checked, not re-eliminated.
    static Subspace from_reduced(Residue p, std::size_t n, std::vector<SparseRow> rows);

    Residue p() const { return p_; }
    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<SparseRow>& basis() const { return basis_; }
    std::vector<std::uint32_t> pivots() const;
    bool contains(const SparseRow& v) const;
    FpMatrix as_matrix() const;
    bool operator==(const Subspace& o) const = default;

private:
    Residue p_ = 2;
    std::size_t n_ = 0;
    std::vector<SparseRow> basis_;
};

// Incremental semi-echelon form. Rows are reduced against earlier pivots in
// increasing column order; the first surviving column becomes the pivot.
class Echelon {
public:
    Echelon(Residue p, std::size_t cols);
    bool insert(const SparseRow& row);
    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    // Residual of v after full reduction against the current pivots.
    SparseRow reduce(const SparseRow& v) const;
    // Canonical reduced basis sorted by pivot column.
    std::vector<SparseRow> reduced_basis() const;
    const std::vector<SparseRow>& rows() const { return rows_; }
    const std::vector<std::int64_t>& pivot_of_col() const { return pivot_of_col_; }

private:
    SparseRow reduce_impl(const SparseRow& v, bool stop_at_free) const;
    Residue p_;
    std::size_t cols_;
    std::vector<SparseRow> rows_;
    std::vector<std::int64_t> pivot_of_col_;
    mutable std::vector<Residue> acc_;
    mutable std::vector<char> mark_;
};

std::size_t rank(const FpMatrix& m);
std::size_t nullity(const FpMatrix& m);
Subspace kernel(const FpMatrix& m);
Subspace image(const FpMatrix& m);
Subspace row_space(const FpMatrix& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

// Dense elimination, used when density exceeds this fraction.
inline constexpr double kDenseThreshold = 0.25;
std::size_t dense_rank(const FpMatrix& m);
std::size_t sparse_rank(const FpMatrix& m);

} // namespace fpcoh::linalg
