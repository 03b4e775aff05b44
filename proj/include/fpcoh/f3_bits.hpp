#pragma once
// Dense vectors over F_p and an echelon builder generic in the vector type.
// F3Vec is bitsliced: entry x is stored as the two bits (x==1, x==2) in
// parallel 64-bit planes.
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fpcoh/fp_linalg.hpp"

namespace fpcoh::linalg {

// One word of F_3 addition on the two-plane encoding.
inline void f3_add_word(std::uint64_t x1, std::uint64_t x2, std::uint64_t y1, std::uint64_t y2, std::uint64_t& z1,
                        std::uint64_t& z2)
{
    std::uint64_t t = (x1 | y2) ^ (x2 | y1);
    z1 = (x2 | y2) ^ t;
    z2 = (x1 | y1) ^ t;
}

class F3Vec {
public:
    F3Vec() = default;
    explicit F3Vec(std::size_t n, Residue p = 3) : n_(n), one_((n + 63) / 64, 0), two_((n + 63) / 64, 0) { (void)p; }

    std::size_t size() const { return n_; }
    Residue modulus() const { return 3; }
    Residue get(std::size_t i) const
    {
        std::uint64_t b = std::uint64_t{1} << (i & 63);
        return (one_[i >> 6] & b) ? 1u : ((two_[i >> 6] & b) ? 2u : 0u);
    }
    void set(std::size_t i, Residue v);

    void add(const F3Vec& y, std::size_t from_word = 0);
    void sub(const F3Vec& y, std::size_t from_word = 0);
    void negate() { one_.swap(two_); }
    // this += c*y on entries >= from (y must vanish below from).
    void axpy(Residue c, const F3Vec& y, std::size_t from = 0)
    {
        c %= 3;
        if (c == 1) add(y, from >> 6);
        else if (c == 2) sub(y, from >> 6);
    }
    void scale(Residue c)
    {
        c %= 3;
        if (c == 0) *this = F3Vec(n_);
        else if (c == 2) negate();
    }
    bool is_zero() const;
    // First nonzero index >= from, or -1.
    std::int64_t leading(std::size_t from = 0) const;
    // Zeroes every entry whose mask bit is set.
    void clear_mask(const F3Vec& mask);

    bool operator==(const F3Vec& o) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> one_, two_;
};

// Plain dense vector for a general prime.
class GFVec {
public:
    GFVec() = default;
    GFVec(std::size_t n, Residue p) : p_(p), v_(n, 0) {}

    std::size_t size() const { return v_.size(); }
    Residue modulus() const { return p_; }
    Residue get(std::size_t i) const { return v_[i]; }
    void set(std::size_t i, Residue x) { v_[i] = x % p_; }
    void axpy(Residue c, const GFVec& y, std::size_t from = 0)
    {
        c %= p_;
        if (c == 0) return;
        for (std::size_t i = from; i < v_.size(); ++i)
            if (y.v_[i]) v_[i] = static_cast<Residue>((v_[i] + static_cast<std::uint64_t>(c) * y.v_[i]) % p_);
    }
    void scale(Residue c)
    {
        for (auto& x : v_) x = mul_mod(x, c % p_, p_);
    }
    bool is_zero() const
    {
        for (auto x : v_)
            if (x) return false;
        return true;
    }
    std::int64_t leading(std::size_t from = 0) const
    {
        for (std::size_t i = from; i < v_.size(); ++i)
            if (v_[i]) return static_cast<std::int64_t>(i);
        return -1;
    }
    bool operator==(const GFVec& o) const = default;

private:
    Residue p_ = 2;
    std::vector<Residue> v_;
};

template <class V>
V dense_from_sparse(const SparseRow& r, std::size_t n, Residue p)
{
    V v(n, p);
    for (const auto& e : r) v.set(e.col, e.val);
    return v;
}

template <class V>
SparseRow sparse_from_dense(const V& v)
{
    SparseRow r;
    for (std::int64_t c = v.leading(0); c >= 0; c = v.leading(static_cast<std::size_t>(c) + 1))
        r.push_back({static_cast<std::uint32_t>(c), v.get(static_cast<std::size_t>(c))});
    return r;
}

// Semi-echelon basis of dense vectors, rows normalized to a leading 1.
template <class V>
class DenseEchelon {
public:
    DenseEchelon(Residue p, std::size_t cols) : p_(p), cols_(cols), pivot_of_col_(cols, -1) {}

    // Reduces up to the first free column; stores v if nonzero. Returns the
    // pivot column or -1.
    std::int64_t insert(V v)
    {
        std::int64_t c = v.leading(0);
        while (c >= 0 && pivot_of_col_[c] >= 0) {
            v.axpy(p_ - v.get(c), rows_[pivot_of_col_[c]], static_cast<std::size_t>(c));
            c = v.leading(static_cast<std::size_t>(c));
        }
        if (c < 0) return -1;
        Residue lead = v.get(c);
        if (lead != 1) v.scale(inv_mod(lead, p_));
        pivot_of_col_[c] = static_cast<std::int64_t>(rows_.size());
        rows_.push_back(std::move(v));
        return c;
    }

    // Clears every pivot column of v.
    void reduce_full(V& v) const
    {
        std::int64_t c = v.leading(0);
        while (c >= 0) {
            if (pivot_of_col_[c] >= 0) {
                v.axpy(p_ - v.get(c), rows_[pivot_of_col_[c]], static_cast<std::size_t>(c));
                c = v.leading(static_cast<std::size_t>(c));
            } else {
                c = v.leading(static_cast<std::size_t>(c) + 1);
            }
        }
    }

    // Back-substitution to reduced row echelon form.
    void make_reduced()
    {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (pivot_of_col_[c] >= 0) cols.push_back(c);
        for (std::size_t t = cols.size(); t-- > 0;) {
            V& row = rows_[pivot_of_col_[cols[t]]];
            std::int64_t c = row.leading(cols[t] + 1);
            while (c >= 0) {
                if (pivot_of_col_[c] >= 0) {
                    row.axpy(p_ - row.get(c), rows_[pivot_of_col_[c]], static_cast<std::size_t>(c));
                    c = row.leading(static_cast<std::size_t>(c));
                } else {
                    c = row.leading(static_cast<std::size_t>(c) + 1);
                }
            }
        }
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const std::vector<V>& rows() const { return rows_; }
    const std::vector<std::int64_t>& pivot_of_col() const { return pivot_of_col_; }

    // Rows sorted by pivot column.
    std::vector<const V*> sorted_rows() const
    {
        std::vector<const V*> out;
        for (std::size_t c = 0; c < cols_; ++c)
            if (pivot_of_col_[c] >= 0) out.push_back(&rows_[pivot_of_col_[c]]);
        return out;
    }

private:
    Residue p_;
    std::size_t cols_;
    std::vector<V> rows_;
    std::vector<std::int64_t> pivot_of_col_;
};

} // namespace fpcoh::linalg
