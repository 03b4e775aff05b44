#include "fpcoh/algebra_trunc.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>

#include "fpcoh/cohomology.hpp"
#include "fpcoh/errors.hpp"
#include "fpcoh/f3_bits.hpp"

namespace fpcoh::trunc {

using congruence::Mat2;
using linalg::DenseEchelon;
using linalg::F3Vec;
using linalg::GFVec;
using linalg::Residue;
using linalg::SparseRow;
using linalg::Subspace;

namespace {

template <class V>
Subspace to_subspace(DenseEchelon<V>& e, Residue p, std::size_t n)
{
    e.make_reduced();
    std::vector<SparseRow> rows;
    rows.reserve(e.rank());
    for (const V* r : e.sorted_rows()) rows.push_back(linalg::sparse_from_dense(*r));
    return Subspace::from_reduced(p, n, std::move(rows));
}

template <class V>
std::vector<Subspace> filtration_impl(Residue p, std::size_t N, const std::vector<FpMatrix>& gens, int n)
{
    std::vector<FpMatrix> z;
    for (const auto& u : gens) {
        if (u.rows() != N || u.cols() != N || u.p() != p) throw ValidationError("augmentation_filtration: generator shape");
        z.push_back(FpMatrix::identity(p, N) - u);
    }
    std::vector<Subspace> out{Subspace::full(p, N)};
    std::vector<std::vector<Residue>> cur(N, std::vector<Residue>(N, 0));
    for (std::size_t i = 0; i < N; ++i) cur[i][i] = 1;
    for (int i = 0; i <= n; ++i) {
        DenseEchelon<V> e(p, N);
        for (const auto& v : cur)
            for (const auto& zm : z) {
                auto w = zm.apply(v);
                V x(N, p);
                for (std::size_t c = 0; c < N; ++c)
                    if (w[c]) x.set(c, w[c]);
                e.insert(std::move(x));
            }
        if (!cur.empty() && e.rank() == cur.size())
            throw ValidationError("augmentation_filtration: chain stalls at a nonzero term F^" + std::to_string(i) +
                                  " (generators do not act unipotently)");
        Subspace s = to_subspace(e, p, N);
        cur.clear();
        for (const auto& r : s.basis()) {
            std::vector<Residue> v(N, 0);
            for (const auto& x : r) v[x.col] = x.val;
            cur.push_back(std::move(v));
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Subspace> filtration_any(Residue p, std::size_t N, const std::vector<FpMatrix>& gens, int n)
{
    return p == 3 ? filtration_impl<F3Vec>(p, N, gens, n) : filtration_impl<GFVec>(p, N, gens, n);
}

struct Solver {
    virtual ~Solver() = default;
    // Coordinates in the monomial basis of x modulo I^{n+1}.
    virtual std::vector<Residue> coords(const std::vector<Residue>& x) const = 0;
};

template <class V>
struct SolverImpl : Solver {
    Residue p;
    std::size_t N, M;
    DenseEchelon<V> e;

    SolverImpl(Residue p_, std::size_t N_, std::size_t M_) : p(p_), N(N_), M(M_), e(p_, N_ + M_) {}

    std::vector<Residue> coords(const std::vector<Residue>& x) const override
    {
        V v(N + M, p);
        for (std::size_t c = 0; c < N; ++c)
            if (x[c]) v.set(c, x[c]);
        e.reduce_full(v);
        auto lead = v.leading(0);
        if (lead >= 0 && static_cast<std::size_t>(lead) < N)
            throw InvariantViolation("truncated algebra: element outside the monomial span");
        std::vector<Residue> out(M, 0);
        for (std::size_t b = 0; b < M; ++b) out[b] = (p - v.get(N + b)) % p;
        return out;
    }
};

std::size_t binom(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

std::vector<std::size_t> FilteredModule::graded_dims() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < filtration.size(); ++i) out.push_back(filtration[i].dim() - filtration[i + 1].dim());
    return out;
}

std::size_t FilteredModule::truncated_dim() const
{
    if (filtration.empty()) return 0;
    return filtration.front().dim() - filtration.back().dim();
}

FilteredModule augmentation_filtration(const GammaModule& mod, const std::vector<FpMatrix>& subgroup_gens, int n)
{
    if (n < 0) throw ValidationError("augmentation_filtration: negative degree");
    FilteredModule fm;
    fm.base = mod;
    fm.trunc_degree = n;
    fm.filtration = filtration_any(mod.p, mod.dim, subgroup_gens, n);
    return fm;
}

int minimal_working_level(std::uint32_t p, int n)
{
    if (n < 0) throw ValidationError("minimal_working_level: negative degree");
    int m = 1;
    std::uint64_t pm1 = 1; // p^{m-1}
    while (pm1 <= static_cast<std::uint64_t>(n)) {
        pm1 *= p;
        ++m;
    }
    return m;
}

std::vector<std::array<int, 3>> monomials(int n)
{
    std::vector<std::array<int, 3>> out;
    for (int deg = 0; deg <= n; ++deg)
        for (int a = deg; a >= 0; --a)
            for (int b = deg - a; b >= 0; --b) out.push_back({a, b, deg - a - b});
    return out;
}

struct TruncatedAlgebra::Impl {
    std::uint32_t p = 0;
    int m = 0, n = 0;
    std::uint64_t modulus = 1;
    std::vector<Mat2> elems;
    std::map<Mat2, std::uint32_t> index;
    std::vector<std::array<int, 3>> monos;
    std::vector<std::size_t> ideal_dims;
    std::vector<std::vector<Residue>> mono_vecs;
    std::unique_ptr<Solver> solver;

    std::vector<std::uint32_t> left_perm(const Mat2& h) const
    {
        std::vector<std::uint32_t> out(elems.size());
        for (std::size_t x = 0; x < elems.size(); ++x)
            out[x] = index.at(congruence::mat_mul(h, elems[x], modulus));
        return out;
    }
};

std::uint32_t TruncatedAlgebra::p() const { return impl->p; }
int TruncatedAlgebra::m() const { return impl->m; }
int TruncatedAlgebra::n() const { return impl->n; }
std::size_t TruncatedAlgebra::group_order() const { return impl->elems.size(); }
const std::vector<std::array<int, 3>>& TruncatedAlgebra::basis() const { return impl->monos; }
const std::vector<std::size_t>& TruncatedAlgebra::ideal_dims() const { return impl->ideal_dims; }

std::optional<std::uint32_t> TruncatedAlgebra::index_of(const Mat2& h) const
{
    auto it = impl->index.find(congruence::mat_reduce(h, impl->modulus));
    if (it == impl->index.end()) return std::nullopt;
    return it->second;
}

FpMatrix TruncatedAlgebra::left_mult(std::uint32_t h) const
{
    const auto& I = *impl;
    auto perm = I.left_perm(I.elems.at(h));
    std::size_t M = I.monos.size();
    FpMatrix out(I.p, M, M);
    for (std::size_t b = 0; b < M; ++b) {
        std::vector<Residue> y(I.elems.size(), 0);
        for (std::size_t x = 0; x < y.size(); ++x) y[perm[x]] = I.mono_vecs[b][x];
        auto c = I.solver->coords(y);
        for (std::size_t r = 0; r < M; ++r)
            if (c[r]) out.set(r, b, c[r]);
    }
    return out;
}

TruncatedAlgebra build_truncated_algebra(std::uint32_t p, int m, int n)
{
    if (!linalg::is_prime(p) || p == 2) throw ValidationError("build_truncated_algebra: p must be an odd prime");
    if (m < 1 || n < 0) throw ValidationError("build_truncated_algebra: need m >= 1, n >= 0");
    auto impl = std::make_shared<TruncatedAlgebra::Impl>();
    impl->p = p;
    impl->m = m;
    impl->n = n;
    impl->modulus = congruence::ipow(p, static_cast<unsigned>(m));
    std::uint64_t q = impl->modulus;
    if (congruence::ipow(p, static_cast<unsigned>(3 * (m - 1))) > 2000000)
        throw ResourceError("build_truncated_algebra: |G(p)/G(p^m)| too large");

    std::vector<Mat2> gens = {congruence::mat_from(1, p, 0, 1, q),
                              congruence::mat_from(1 + p, 0, 0, static_cast<std::int64_t>(congruence::inv_mod_n(1 + p, q)), q),
                              congruence::mat_from(1, 0, p, 1, q)};
    Mat2 one = congruence::mat_from(1, 0, 0, 1, q);
    impl->elems.push_back(one);
    impl->index[one] = 0;
    for (std::size_t i = 0; i < impl->elems.size(); ++i)
        for (const auto& g : gens) {
            Mat2 y = congruence::mat_mul(g, impl->elems[i], q);
            if (impl->index.emplace(y, static_cast<std::uint32_t>(impl->elems.size())).second) impl->elems.push_back(y);
        }
    std::size_t N = impl->elems.size();
    if (N != congruence::ipow(p, static_cast<unsigned>(3 * (m - 1))))
        throw InvariantViolation("build_truncated_algebra: generators do not span G(p)/G(p^m)");

    // Regular representation and its augmentation powers.
    std::vector<FpMatrix> reg;
    for (const auto& g : gens) reg.push_back(congruence::permutation_matrix(p, impl->left_perm(g)));
    auto ideals = filtration_any(p, N, reg, n);
    for (const auto& s : ideals) impl->ideal_dims.push_back(s.dim());

    impl->monos = monomials(n);
    std::size_t M = impl->monos.size();
    for (int i = 0; i <= n; ++i) {
        std::size_t expect = binom(static_cast<std::size_t>(i) + 2, 2);
        std::size_t got = impl->ideal_dims[i] - impl->ideal_dims[i + 1];
        if (got != expect)
            throw ValidationError("working level m = " + std::to_string(m) + " too small for degree " + std::to_string(n) +
                                  ": dim I^" + std::to_string(i) + "/I^" + std::to_string(i + 1) + " = " +
                                  std::to_string(got) + ", expected " + std::to_string(expect) + "; use m >= " +
                                  std::to_string(minimal_working_level(p, n)));
    }

    // z^alpha = z1^a1 z2^a2 z3^a3, applied right to left to the identity.
    std::vector<std::vector<std::uint32_t>> perms;
    for (const auto& g : gens) perms.push_back(impl->left_perm(g));
    auto apply_z = [&](std::vector<Residue> v, int s) {
        std::vector<Residue> w = v;
        for (std::size_t x = 0; x < N; ++x)
            if (v[x]) w[perms[s][x]] = (w[perms[s][x]] + p - v[x]) % p;
        return w;
    };
    for (const auto& a : impl->monos) {
        std::vector<Residue> v(N, 0);
        v[0] = 1;
        for (int s = 2; s >= 0; --s)
            for (int e = 0; e < a[s]; ++e) v = apply_z(v, s);
        impl->mono_vecs.push_back(std::move(v));
    }

    auto build_solver = [&]<class V>(std::unique_ptr<SolverImpl<V>> sv) {
        for (const auto& r : ideals.back().basis()) {
            V v(N + M, p);
            for (const auto& x : r) v.set(x.col, x.val);
            sv->e.insert(std::move(v));
        }
        for (std::size_t b = 0; b < M; ++b) {
            V v(N + M, p);
            for (std::size_t x = 0; x < N; ++x)
                if (impl->mono_vecs[b][x]) v.set(x, impl->mono_vecs[b][x]);
            v.set(N + b, 1);
            auto piv = sv->e.insert(std::move(v));
            if (piv < 0 || static_cast<std::size_t>(piv) >= N)
                throw ValidationError("build_truncated_algebra: monomials dependent modulo I^{n+1}; increase m");
        }
        if (sv->e.rank() != N) throw ValidationError("build_truncated_algebra: monomials do not span modulo I^{n+1}");
        impl->solver = std::move(sv);
    };
    if (p == 3) build_solver(std::make_unique<SolverImpl<F3Vec>>(p, N, M));
    else build_solver(std::make_unique<SolverImpl<GFVec>>(p, N, M));

    TruncatedAlgebra alg;
    alg.impl = std::move(impl);
    return alg;
}

TruncatedModule truncated_module(const group::GroupPresentation& pres, const congruence::CongruenceMap& hom_p,
                                 const congruence::CongruenceMap& hom_pbar, int d, const TruncatedAlgebra& alg)
{
    const std::uint32_t p = alg.p();
    const int m = alg.m();
    if (hom_p.p != p || hom_pbar.p != p) throw ValidationError("truncated_module: prime mismatch");
    if (hom_p.k < m) throw ValidationError("truncated_module: hom_p level below the working level");
    if (hom_pbar.k < 1) throw ValidationError("truncated_module: hom_pbar level must be >= 1");
    if (d < 0 || d >= static_cast<int>(p)) throw ValidationError("truncated_module: need 0 <= d < p");
    if (hom_p.images.size() != pres.n_generators || hom_pbar.images.size() != pres.n_generators)
        throw ValidationError("truncated_module: generator count mismatch");

    auto hm = hom_p.reduce_to(m);
    auto hb = hom_pbar.reduce_to(1);
    auto cs = congruence::enumerate_cosets(hm, congruence::SubgroupSpec::principal(1));
    const std::size_t J = cs.size();
    const std::size_t K = static_cast<std::size_t>(d) + 1;
    const std::size_t M = alg.basis().size();
    const std::size_t dim = J * K * M;
    const std::uint64_t q = hm.modulus;

    std::map<std::uint32_t, std::vector<std::vector<Residue>>> lcache;
    auto lmat = [&](std::uint32_t h) -> const std::vector<std::vector<Residue>>& {
        auto it = lcache.find(h);
        if (it == lcache.end()) it = lcache.emplace(h, alg.left_mult(h).to_dense()).first;
        return it->second;
    };

    // Column (j, k, beta) of rho(g): g gamma_j = gamma_j' h, so it goes to
    // sum_{k', beta'} S[k'][k] L_h[beta'][beta] e_(j', k', beta').
    auto build = [&](const Mat2& g, const Mat2& gbar, const std::vector<std::uint32_t>& perm) {
        auto S = congruence::sym_matrix(p, d, gbar).to_dense();
        FpMatrix T(p, dim, dim); // transpose of rho(g)
        for (std::size_t j = 0; j < J; ++j) {
            std::uint32_t j2 = perm[j];
            Mat2 h = congruence::mat_mul(congruence::mat_inv_sl2(cs.reps[j2], q), congruence::mat_mul(g, cs.reps[j], q), q);
            auto hi = alg.index_of(h);
            if (!hi) throw InvariantViolation("truncated_module: coset transversal error");
            const auto& L = lmat(*hi);
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t b = 0; b < M; ++b) {
                    SparseRow row;
                    for (std::size_t k2 = 0; k2 < K; ++k2) {
                        if (!S[k2][k]) continue;
                        for (std::size_t b2 = 0; b2 < M; ++b2)
                            if (L[b2][b])
                                row.push_back({static_cast<std::uint32_t>((j2 * K + k2) * M + b2),
                                               linalg::mul_mod(S[k2][k], L[b2][b], p)});
                    }
                    T.set_row((j * K + k) * M + b, std::move(row));
                }
        }
        return T.transpose();
    };

    TruncatedModule tm;
    tm.d = d;
    tm.n_cosets = J;
    tm.n_monomials = M;
    GammaModule& V = tm.fm.base;
    V.p = p;
    V.dim = dim;
    for (std::size_t g = 0; g < pres.n_generators; ++g) {
        V.act.push_back(build(hm.images[g], hb.images[g], cs.perm[g]));
        V.act_inv.push_back(build(congruence::mat_inv_sl2(hm.images[g], q), congruence::mat_inv_sl2(hb.images[g], p),
                                  cs.perm_inv[g]));
    }
    V.description = "V<=" + std::to_string(alg.n()) + " (x) Sym^" + std::to_string(d) + " over " + std::to_string(J) +
                    " cosets";
    congruence::check_module(V, &pres);

    GradedLayout lay;
    lay.n = alg.n();
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t k = 0; k < K; ++k) lay.block_labels.push_back("j=" + std::to_string(j) + ",k=" + std::to_string(k));
    lay.degree.resize(dim);
    lay.block.resize(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        const auto& a = alg.basis()[c % M];
        lay.degree[c] = a[0] + a[1] + a[2];
        lay.block[c] = static_cast<std::uint32_t>(c / M);
    }
    tm.fm.trunc_degree = alg.n();
    for (int i = 0; i <= alg.n() + 1; ++i) {
        std::vector<SparseRow> rows;
        for (std::size_t c = 0; c < dim; ++c)
            if (lay.degree[c] >= i) rows.push_back({{static_cast<std::uint32_t>(c), 1}});
        tm.fm.filtration.push_back(Subspace::from_reduced(p, dim, std::move(rows)));
    }
    tm.fm.layout = std::move(lay);
    return tm;
}

std::size_t CoverageReport::covered() const
{
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.found; }));
}

namespace {

template <class V>
CoverageReport coverage_impl(const FpMatrix& op, const GradedLayout& L)
{
    const std::size_t N = L.degree.size();
    const Residue p = op.p();
    if (op.rows() != N || L.block.size() != N) throw ValidationError("lowest_degree_coverage: layout does not match operator");
    for (std::size_t c = 0; c < N; ++c)
        if (L.degree[c] < 0 || L.degree[c] > L.n || L.block[c] >= L.n_blocks())
            throw ValidationError("lowest_degree_coverage: bad layout entry");

    std::vector<std::uint32_t> order(N);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (L.degree[a] != L.degree[b]) return L.degree[a] < L.degree[b];
        return L.block[a] < L.block[b];
    });
    std::vector<std::uint32_t> pos(N);
    for (std::size_t t = 0; t < N; ++t) pos[order[t]] = static_cast<std::uint32_t>(t);
    std::vector<std::size_t> start(static_cast<std::size_t>(L.n) + 2, 0);
    for (std::size_t c = 0; c < N; ++c) ++start[static_cast<std::size_t>(L.degree[c]) + 1];
    for (std::size_t i = 1; i < start.size(); ++i) start[i] += start[i - 1];

    DenseEchelon<V> E(p, N);
    FpMatrix T = op.transpose();
    for (std::size_t r = 0; r < T.rows() && E.rank() < N; ++r) {
        const auto& row = T.row(r);
        if (row.empty()) continue;
        V v(N, p);
        for (const auto& e : row) v.set(pos[e.col], e.val);
        E.insert(std::move(v));
    }

    CoverageReport rep;
    rep.n = L.n;
    rep.image_rank = E.rank();
    for (const auto& s : L.block_labels) rep.entries.push_back({s, false, -1});
    for (int delta = 0; delta <= L.n; ++delta) {
        const std::size_t s = start[delta], e = start[delta + 1], D = e - s;
        DenseEchelon<V> Ld(p, std::max<std::size_t>(D, 1));
        for (std::size_t c = s; c < e; ++c) {
            auto ri = E.pivot_of_col()[c];
            if (ri < 0) continue;
            const V& row = E.rows()[ri];
            V w(D, p);
            for (auto x = row.leading(c); x >= 0 && static_cast<std::size_t>(x) < e; x = row.leading(x + 1))
                w.set(x - s, row.get(x));
            Ld.insert(std::move(w));
        }
        Ld.make_reduced();
        rep.leading_ranks.push_back(Ld.rank());
        // A vector of the row space supported on block b exists iff the RREF
        // rows pivoting in b become dependent once b's columns are erased.
        std::size_t a = 0;
        while (a < D) {
            std::uint32_t b = L.block[order[s + a]];
            std::size_t z = a;
            while (z < D && L.block[order[s + z]] == b) ++z;
            if (!rep.entries[b].found) {
                DenseEchelon<V> small(p, D);
                for (std::size_t x = a; x < z; ++x) {
                    auto ri = Ld.pivot_of_col()[x];
                    if (ri < 0) continue;
                    V w = Ld.rows()[ri];
                    for (std::size_t y = a; y < z; ++y) w.set(y, 0);
                    if (small.insert(std::move(w)) < 0) {
                        rep.entries[b].found = true;
                        rep.entries[b].witness_degree = delta;
                        break;
                    }
                }
            }
            a = z;
        }
    }
    if (rep.covered() == rep.entries.size()) rep.status = "pass";
    else if (rep.image_rank == 0) rep.status = "fail";
    else rep.status = "inconclusive";
    return rep;
}

} // namespace

CoverageReport lowest_degree_coverage(const FpMatrix& op, const GradedLayout& layout)
{
    return op.p() == 3 ? coverage_impl<F3Vec>(op, layout) : coverage_impl<GFVec>(op, layout);
}

CoverageReport lowest_degree_coverage(const FilteredModule& fm, const group::FreeRingElement& op_element)
{
    if (!fm.layout) throw ValidationError("lowest_degree_coverage: module has no graded coordinates");
    return lowest_degree_coverage(cohomology::evaluate(op_element, fm.base), *fm.layout);
}

FpMatrix stacked_adjoint_operator(const group::GroupPresentation& pres, const GammaModule& mod)
{
    const std::size_t n = pres.n_generators, m = pres.relators.size(), A = mod.dim;
    auto bd = group::boundary_data(pres);
    std::vector<group::FreeRingElement> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(bd.d0[i]);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < n; ++j) xs.push_back(bd.d1[r][j].conjugate());
    auto mats = cohomology::evaluate_all(xs, mod);
    FpMatrix T(mod.p, n * A, A + m * A);
    for (std::size_t i = 0; i < n; ++i) T.add_block(i * A, 0, mats[i]);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < n; ++j) T.add_block(j * A, A + r * A, mats[n + r * n + j]);
    return T;
}

GradedLayout cochain1_layout(const GradedLayout& v, std::size_t n_generators)
{
    GradedLayout out;
    out.n = v.n;
    const std::size_t B = v.n_blocks(), A = v.degree.size();
    for (std::size_t i = 0; i < n_generators; ++i)
        for (const auto& s : v.block_labels) out.block_labels.push_back("g=" + std::to_string(i) + "," + s);
    for (std::size_t i = 0; i < n_generators; ++i)
        for (std::size_t c = 0; c < A; ++c) {
            out.degree.push_back(v.degree[c]);
            out.block.push_back(static_cast<std::uint32_t>(i * B + v.block[c]));
        }
    return out;
}

WeightHypothesisReport verify_weight_hypothesis(const group::GroupPresentation& pres,
                                                const congruence::CongruenceMap& hom_p,
                                                const std::optional<congruence::CongruenceMap>& hom_pbar, int n,
                                                int max_d, bool parallel)
{
    WeightHypothesisReport rep;
    rep.p = hom_p.p;
    rep.n = n;
    rep.m = minimal_working_level(hom_p.p, n);
    if (hom_p.k < rep.m)
        throw ValidationError("verify_weight_hypothesis: first prime map has level " + std::to_string(hom_p.k) +
                              ", need " + std::to_string(rep.m));
    if (auto bad = congruence::first_failing_relator(pres, hom_p))
        throw ValidationError("verify_weight_hypothesis: relator " + std::to_string(*bad) + " fails at the first prime");
    auto alg = build_truncated_algebra(hom_p.p, rep.m, n);
    for (int i = 0; i <= n; ++i) rep.graded_dims.push_back(alg.ideal_dims()[i] - alg.ideal_dims()[i + 1]);
    if (!hom_pbar) {
        rep.status = "partial";
        rep.notes.push_back("no map at the second prime; coverage runs skipped");
        return rep;
    }
    if (hom_pbar->p != hom_p.p) throw ValidationError("verify_weight_hypothesis: primes lie over different p");
    if (auto bad = congruence::first_failing_relator(pres, *hom_pbar))
        throw ValidationError("verify_weight_hypothesis: relator " + std::to_string(*bad) + " fails at the second prime");

    auto run_d = [&](int d) {
        auto tm = truncated_module(pres, hom_p, *hom_pbar, d, alg);
        std::vector<OperatorRun> runs;
        auto lap = cohomology::evaluate(group::laplacian_element(pres), tm.fm.base);
        runs.push_back({"laplacian", d, lowest_degree_coverage(lap, *tm.fm.layout)});
        auto T = stacked_adjoint_operator(pres, tm.fm.base);
        runs.push_back({"boundary+coboundary", d, lowest_degree_coverage(T, cochain1_layout(*tm.fm.layout, pres.n_generators))});
        return std::make_pair(tm.n_cosets, runs);
    };
    std::vector<std::pair<std::size_t, std::vector<OperatorRun>>> results;
    if (parallel) {
        std::vector<std::future<std::pair<std::size_t, std::vector<OperatorRun>>>> fs;
        for (int d = 0; d <= max_d; ++d) fs.push_back(std::async(std::launch::async, run_d, d));
        for (auto& f : fs) results.push_back(f.get());
    } else {
        for (int d = 0; d <= max_d; ++d) results.push_back(run_d(d));
    }
    bool all_pass = true, any_fail = false;
    for (auto& [J, runs] : results) {
        rep.n_cosets = J;
        for (auto& r : runs) {
            all_pass = all_pass && r.coverage.status == "pass";
            any_fail = any_fail || r.coverage.status == "fail";
            rep.runs.push_back(std::move(r));
        }
    }
    if (rep.n_cosets != congruence::sl2_order(hom_p.p, 1))
        rep.notes.push_back("image mod p is not all of SL(2, F_p): " + std::to_string(rep.n_cosets) + " cosets");
    rep.status = all_pass ? "pass" : (any_fail ? "fail" : "inconclusive");
    return rep;
}

} // namespace fpcoh::trunc
