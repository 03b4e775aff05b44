#include "fpcoh/fp_linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "fpcoh/errors.hpp"

namespace fpcoh::linalg {

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Residue inv_mod(Residue a, Residue p)
{
    // extended Euclid on signed 64-bit
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw ValidationError("inv_mod: " + std::to_string(a) + " not invertible mod " + std::to_string(p));
    return reduce(t, p);
}

// ---------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(Residue p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), data_(rows)
{
    if (!is_prime(p)) throw ValidationError("FpMatrix: modulus " + std::to_string(p) + " is not prime");
    if (cols > 0xffffffffULL) throw ResourceError("FpMatrix: too many columns");
}

FpMatrix FpMatrix::identity(Residue p, std::size_t n)
{
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({static_cast<std::uint32_t>(i), 1});
    return m;
}

FpMatrix FpMatrix::from_dense(Residue p, const std::vector<std::vector<std::int64_t>>& a)
{
    std::size_t c = a.empty() ? 0 : a[0].size();
    FpMatrix m(p, a.size(), c);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != c) throw ValidationError("from_dense: ragged rows");
        for (std::size_t j = 0; j < c; ++j) {
            Residue v = reduce(a[i][j], p);
            if (v) m.data_[i].push_back({static_cast<std::uint32_t>(j), v});
        }
    }
    return m;
}

template <class Row>
static auto find_col(Row& row, std::size_t c)
{
    return std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.col < col; });
}

Residue FpMatrix::get(std::size_t r, std::size_t c) const
{
    const auto& row = data_.at(r);
    auto it = find_col(row, c);
    return (it != row.end() && it->col == c) ? it->val : 0;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t v)
{
    if (r >= rows_ || c >= cols_) throw std::out_of_range("FpMatrix::set");
    Residue x = reduce(v, p_);
    auto& row = data_[r];
    auto it = find_col(row, c);
    bool present = it != row.end() && it->col == c;
    if (x == 0) {
        if (present) row.erase(it);
    } else if (present) {
        it->val = x;
    } else {
        row.insert(it, {static_cast<std::uint32_t>(c), x});
    }
}

void FpMatrix::add(std::size_t r, std::size_t c, std::int64_t v)
{
    set(r, c, static_cast<std::int64_t>(get(r, c)) + reduce(v, p_));
}

void FpMatrix::set_row(std::size_t r, SparseRow row)
{
    data_.at(r) = std::move(row);
}

std::size_t FpMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

double FpMatrix::density() const
{
    if (rows_ == 0 || cols_ == 0) return 0.0;
    return static_cast<double>(nnz()) / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

FpMatrix FpMatrix::transpose() const
{
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& e : data_[i]) t.data_[e.col].push_back({static_cast<std::uint32_t>(i), e.val});
    return t;
}

FpMatrix FpMatrix::operator*(const FpMatrix& b) const
{
    if (p_ != b.p_) throw ValidationError("FpMatrix multiply: modulus mismatch");
    if (cols_ != b.rows_) throw ValidationError("FpMatrix multiply: shape mismatch");
    FpMatrix c(p_, rows_, b.cols_);
    std::vector<std::uint64_t> acc(b.cols_, 0);
    std::vector<char> seen(b.cols_, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t i = 0; i < rows_; ++i) {
        touched.clear();
        for (const auto& e : data_[i]) {
            for (const auto& f : b.data_[e.col]) {
                if (!seen[f.col]) {
                    seen[f.col] = 1;
                    touched.push_back(f.col);
                }
                acc[f.col] = (acc[f.col] + static_cast<std::uint64_t>(e.val) * f.val) % p_;
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& out = c.data_[i];
        for (auto col : touched) {
            if (acc[col]) out.push_back({col, static_cast<Residue>(acc[col])});
            acc[col] = 0;
            seen[col] = 0;
        }
    }
    return c;
}

static SparseRow merge_rows(const SparseRow& a, const SparseRow& b, Residue sb, Residue p)
{
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].col < a[i].col) {
            Residue v = mul_mod(b[j].val, sb, p);
            if (v) out.push_back({b[j].col, v});
            ++j;
        } else {
            Residue v = static_cast<Residue>((a[i].val + static_cast<std::uint64_t>(b[j].val) * sb) % p);
            if (v) out.push_back({a[i].col, v});
            ++i;
            ++j;
        }
    }
    return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& b) const
{
    if (p_ != b.p_ || rows_ != b.rows_ || cols_ != b.cols_) throw ValidationError("FpMatrix add: shape mismatch");
    FpMatrix c(p_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) c.data_[i] = merge_rows(data_[i], b.data_[i], 1, p_);
    return c;
}

FpMatrix FpMatrix::operator-(const FpMatrix& b) const
{
    if (p_ != b.p_ || rows_ != b.rows_ || cols_ != b.cols_) throw ValidationError("FpMatrix sub: shape mismatch");
    FpMatrix c(p_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) c.data_[i] = merge_rows(data_[i], b.data_[i], p_ - 1, p_);
    return c;
}

FpMatrix FpMatrix::scaled(std::int64_t s) const
{
    Residue k = reduce(s, p_);
    FpMatrix c(p_, rows_, cols_);
    if (k == 0) return c;
    for (std::size_t i = 0; i < rows_; ++i) {
        c.data_[i] = data_[i];
        for (auto& e : c.data_[i]) e.val = mul_mod(e.val, k, p_);
    }
    return c;
}

bool FpMatrix::operator==(const FpMatrix& b) const
{
    return p_ == b.p_ && rows_ == b.rows_ && cols_ == b.cols_ && data_ == b.data_;
}

void FpMatrix::add_block(std::size_t r0, std::size_t c0, const FpMatrix& b, std::int64_t scale)
{
    if (b.p_ != p_ || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ValidationError("add_block: shape mismatch");
    Residue s = reduce(scale, p_);
    if (s == 0) return;
    for (std::size_t i = 0; i < b.rows_; ++i) {
        if (b.data_[i].empty()) continue;
        SparseRow shifted;
        shifted.reserve(b.data_[i].size());
        for (const auto& e : b.data_[i]) shifted.push_back({static_cast<std::uint32_t>(e.col + c0), e.val});
        data_[r0 + i] = merge_rows(data_[r0 + i], shifted, s, p_);
    }
}

std::vector<Residue> FpMatrix::apply(const std::vector<Residue>& x) const
{
    if (x.size() != cols_) throw ValidationError("apply: shape mismatch");
    std::vector<Residue> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t s = 0;
        for (const auto& e : data_[i]) s = (s + static_cast<std::uint64_t>(e.val) * x[e.col]) % p_;
        y[i] = static_cast<Residue>(s);
    }
    return y;
}

std::vector<std::vector<Residue>> FpMatrix::to_dense() const
{
    std::vector<std::vector<Residue>> d(rows_, std::vector<Residue>(cols_, 0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& e : data_[i]) d[i][e.col] = e.val;
    return d;
}

FpMatrix FpMatrix::vstack(const std::vector<const FpMatrix*>& parts)
{
    if (parts.empty()) throw ValidationError("vstack: no parts");
    std::size_t rows = 0;
    for (auto* m : parts) {
        if (m->cols_ != parts[0]->cols_ || m->p_ != parts[0]->p_) throw ValidationError("vstack: shape mismatch");
        rows += m->rows_;
    }
    FpMatrix out(parts[0]->p_, rows, parts[0]->cols_);
    std::size_t r = 0;
    for (auto* m : parts)
        for (std::size_t i = 0; i < m->rows_; ++i) out.data_[r++] = m->data_[i];
    return out;
}

FpMatrix FpMatrix::hstack(const std::vector<const FpMatrix*>& parts)
{
    if (parts.empty()) throw ValidationError("hstack: no parts");
    std::size_t cols = 0;
    for (auto* m : parts) {
        if (m->rows_ != parts[0]->rows_ || m->p_ != parts[0]->p_) throw ValidationError("hstack: shape mismatch");
        cols += m->cols_;
    }
    FpMatrix out(parts[0]->p_, parts[0]->rows_, cols);
    std::size_t c0 = 0;
    for (auto* m : parts) {
        for (std::size_t i = 0; i < m->rows_; ++i)
            for (const auto& e : m->data_[i]) out.data_[i].push_back({static_cast<std::uint32_t>(e.col + c0), e.val});
        c0 += m->cols_;
    }
    return out;
}

// ---------------------------------------------------------------- Echelon

Echelon::Echelon(Residue p, std::size_t cols) : p_(p), cols_(cols), pivot_of_col_(cols, -1), acc_(cols, 0), mark_(cols, 0)
{
}

SparseRow Echelon::reduce_impl(const SparseRow& v, bool stop_at_free) const
{
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
    for (const auto& e : v) {
        acc_[e.col] = e.val;
        mark_[e.col] = 1;
        heap.push(e.col);
    }
    SparseRow out;
    while (!heap.empty()) {
        std::uint32_t c = heap.top();
        heap.pop();
        mark_[c] = 0;
        Residue a = acc_[c];
        if (a == 0) continue;
        acc_[c] = 0;
        std::int64_t piv = pivot_of_col_[c];
        if (piv >= 0) {
            Residue f = p_ - a;
            for (const auto& e : rows_[piv]) {
                if (e.col == c) continue;
                acc_[e.col] = static_cast<Residue>((acc_[e.col] + static_cast<std::uint64_t>(f) * e.val) % p_);
                if (!mark_[e.col]) {
                    mark_[e.col] = 1;
                    heap.push(e.col);
                }
            }
        } else {
            out.push_back({c, a});
            if (stop_at_free) {
                while (!heap.empty()) {
                    std::uint32_t d = heap.top();
                    heap.pop();
                    mark_[d] = 0;
                    if (acc_[d]) out.push_back({d, acc_[d]});
                    acc_[d] = 0;
                }
            }
        }
    }
    return out;
}

bool Echelon::insert(const SparseRow& row)
{
    SparseRow r = reduce_impl(row, true);
    if (r.empty()) return false;
    Residue inv = inv_mod(r[0].val, p_);
    if (inv != 1)
        for (auto& e : r) e.val = mul_mod(e.val, inv, p_);
    pivot_of_col_[r[0].col] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
}

SparseRow Echelon::reduce(const SparseRow& v) const
{
    return reduce_impl(v, false);
}

std::vector<SparseRow> Echelon::reduced_basis() const
{
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows_[a][0].col > rows_[b][0].col; });

    Echelon done(p_, cols_);
    std::vector<SparseRow> out;
    out.reserve(rows_.size());
    for (std::size_t idx : order) {
        const SparseRow& row = rows_[idx];
        SparseRow tail(row.begin() + 1, row.end());
        SparseRow red = done.reduce(tail);
        SparseRow full;
        full.reserve(red.size() + 1);
        full.push_back(row[0]);
        full.insert(full.end(), red.begin(), red.end());
        done.pivot_of_col_[row[0].col] = static_cast<std::int64_t>(done.rows_.size());
        done.rows_.push_back(full);
        out.push_back(std::move(full));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::zero(Residue p, std::size_t n)
{
    Subspace s;
    s.p_ = p;
    s.n_ = n;
    return s;
}

Subspace Subspace::full(Residue p, std::size_t n)
{
    Subspace s = zero(p, n);
    for (std::size_t i = 0; i < n; ++i) s.basis_.push_back({{static_cast<std::uint32_t>(i), 1}});
    return s;
}

Subspace Subspace::from_rows(Residue p, std::size_t n, std::vector<SparseRow> rows)
{
    Echelon e(p, n);
    for (auto& r : rows) {
        for (const auto& x : r)
            if (x.col >= n || x.val == 0 || x.val >= p) throw ValidationError("Subspace::from_rows: bad row entry");
        e.insert(r);
    }
    Subspace s = zero(p, n);
    s.basis_ = e.reduced_basis();
    return s;
}

Subspace Subspace::from_reduced(Residue p, std::size_t n, std::vector<SparseRow> rows)
{
    std::vector<char> is_pivot(n, 0);
    std::int64_t last = -1;
    for (const auto& r : rows) {
        if (r.empty() || r[0].val != 1 || static_cast<std::int64_t>(r[0].col) <= last)
            throw ValidationError("Subspace::from_reduced: rows not in echelon order");
        last = r[0].col;
        is_pivot[r[0].col] = 1;
    }
    for (const auto& r : rows)
        for (std::size_t i = 1; i < r.size(); ++i)
            if (r[i].col >= n || r[i].val == 0 || r[i].val >= p || is_pivot[r[i].col])
                throw ValidationError("Subspace::from_reduced: row not reduced");
    Subspace s = zero(p, n);
    s.basis_ = std::move(rows);
    return s;
}

std::vector<std::uint32_t> Subspace::pivots() const
{
    std::vector<std::uint32_t> out;
    for (const auto& r : basis_) out.push_back(r[0].col);
    return out;
}

bool Subspace::contains(const SparseRow& v) const
{
    Echelon e(p_, n_);
    for (const auto& r : basis_) e.insert(r);
    return e.reduce(v).empty();
}

FpMatrix Subspace::as_matrix() const
{
    FpMatrix m(p_, basis_.size(), n_);
    for (std::size_t i = 0; i < basis_.size(); ++i) m.set_row(i, basis_[i]);
    return m;
}

// ---------------------------------------------------------------- ranks

std::size_t dense_rank(const FpMatrix& m)
{
    const Residue p = m.p();
    auto a = m.to_dense();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && a[piv][c] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[r]);
        Residue inv = inv_mod(a[r][c], p);
        for (std::size_t j = c; j < m.cols(); ++j) a[r][j] = mul_mod(a[r][j], inv, p);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            Residue f = a[i][c];
            if (f == 0) continue;
            Residue nf = p - f;
            for (std::size_t j = c; j < m.cols(); ++j)
                a[i][j] = static_cast<Residue>((a[i][j] + static_cast<std::uint64_t>(nf) * a[r][j]) % p);
        }
        ++r;
    }
    return r;
}

std::size_t sparse_rank(const FpMatrix& m)
{
    Echelon e(m.p(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!m.row(i).empty()) e.insert(m.row(i));
    return e.rank();
}

std::size_t rank(const FpMatrix& m)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.density() > kDenseThreshold) return dense_rank(m);
    return sparse_rank(m);
}

std::size_t nullity(const FpMatrix& m)
{
    return m.cols() - rank(m);
}

Subspace kernel(const FpMatrix& m)
{
    const Residue p = m.p();
    Echelon e(p, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!m.row(i).empty()) e.insert(m.row(i));
    auto rref = e.reduced_basis();
    std::vector<char> is_pivot(m.cols(), 0);
    for (const auto& r : rref) is_pivot[r[0].col] = 1;
    std::vector<std::int64_t> slot(m.cols(), -1);
    std::vector<SparseRow> vecs;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        slot[c] = static_cast<std::int64_t>(vecs.size());
        vecs.push_back({{static_cast<std::uint32_t>(c), 1}});
    }
    for (const auto& r : rref)
        for (std::size_t t = 1; t < r.size(); ++t)
            vecs[slot[r[t].col]].push_back({r[0].col, p - r[t].val});
    for (auto& v : vecs) std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    return Subspace::from_rows(p, m.cols(), std::move(vecs));
}

Subspace row_space(const FpMatrix& m)
{
    std::vector<SparseRow> rows;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!m.row(i).empty()) rows.push_back(m.row(i));
    return Subspace::from_rows(m.p(), m.cols(), std::move(rows));
}

Subspace image(const FpMatrix& m)
{
    return row_space(m.transpose());
}

Subspace sum(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim() || a.p() != b.p()) throw ValidationError("sum: dimension mismatch");
    std::vector<SparseRow> rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return Subspace::from_rows(a.p(), a.ambient_dim(), std::move(rows));
}

Subspace intersect(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim() || a.p() != b.p()) throw ValidationError("intersect: dimension mismatch");
    // Zassenhaus: rows (v | v) for v in a, (w | 0) for w in b.
    const std::size_t n = a.ambient_dim();
    Echelon e(a.p(), 2 * n);
    for (const auto& v : a.basis()) {
        SparseRow r = v;
        for (const auto& x : v) r.push_back({static_cast<std::uint32_t>(x.col + n), x.val});
        e.insert(r);
    }
    for (const auto& w : b.basis()) e.insert(w);
    std::vector<SparseRow> out;
    for (const auto& r : e.reduced_basis()) {
        if (r[0].col < n) continue;
        SparseRow v;
        for (const auto& x : r) v.push_back({static_cast<std::uint32_t>(x.col - n), x.val});
        out.push_back(std::move(v));
    }
    return Subspace::from_rows(a.p(), n, std::move(out));
}

} // namespace fpcoh::linalg
