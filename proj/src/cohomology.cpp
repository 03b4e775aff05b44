#include "fpcoh/cohomology.hpp"

#include <map>
#include <set>

#include "fpcoh/errors.hpp"

namespace fpcoh::cohomology {

using group::FreeRingElement;
using group::Word;
using linalg::Residue;

namespace {

class WordEvaluator {
public:
    explicit WordEvaluator(const GammaModule& m) : m_(m) {}

    const FpMatrix& word(const Word& w)
    {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        FpMatrix r;
        if (w.empty()) {
            r = FpMatrix::identity(m_.p, m_.dim);
        } else {
            const auto& last = w.letters().back();
            if (last.gen >= m_.n_generators()) throw ValidationError("evaluate: generator index out of range");
            const FpMatrix& pre = word(w.prefix(w.size() - 1));
            r = pre * (last.exp > 0 ? m_.act[last.gen] : m_.act_inv[last.gen]);
        }
        return cache_.emplace(w, std::move(r)).first->second;
    }

    FpMatrix element(const FreeRingElement& x)
    {
        FpMatrix out(m_.p, m_.dim, m_.dim);
        for (const auto& t : x.terms()) out.add_block(0, 0, word(t.word), t.coeff);
        return out;
    }

private:
    const GammaModule& m_;
    std::map<Word, FpMatrix> cache_;
};

bool is_identity(const FpMatrix& P)
{
    if (P.rows() != P.cols()) return false;
    for (std::size_t i = 0; i < P.rows(); ++i) {
        const auto& r = P.row(i);
        if (r.size() != 1 || r[0].col != i || r[0].val != 1) return false;
    }
    return true;
}

FpMatrix invert(const FpMatrix& P)
{
    const Residue p = P.p();
    const std::size_t n = P.rows();
    // generalized permutation matrices invert entrywise
    bool monomial = P.rows() == P.cols();
    std::vector<int> col_seen(n, 0);
    for (std::size_t i = 0; i < n && monomial; ++i) {
        if (P.row(i).size() != 1) monomial = false;
        else if (col_seen[P.row(i)[0].col]++) monomial = false;
    }
    if (monomial) {
        FpMatrix inv(p, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& e = P.row(i)[0];
            inv.set(e.col, i, linalg::inv_mod(e.val, p));
        }
        return inv;
    }
    if (n > 4000) throw ResourceError("pairing inverse: dense inversion above 4000 dims");
    auto a = P.to_dense();
    std::vector<std::vector<Residue>> b(n, std::vector<Residue>(n, 0));
    for (std::size_t i = 0; i < n; ++i) b[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw ValidationError("pairing is degenerate");
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        Residue iv = linalg::inv_mod(a[c][c], p);
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] = linalg::mul_mod(a[c][j], iv, p);
            b[c][j] = linalg::mul_mod(b[c][j], iv, p);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Residue f = p - a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = static_cast<Residue>((a[i][j] + static_cast<std::uint64_t>(f) * a[c][j]) % p);
                b[i][j] = static_cast<Residue>((b[i][j] + static_cast<std::uint64_t>(f) * b[c][j]) % p);
            }
        }
    }
    FpMatrix inv(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (b[i][j]) inv.set(i, j, b[i][j]);
    return inv;
}

} // namespace

FpMatrix evaluate(const FreeRingElement& x, const GammaModule& mod)
{
    WordEvaluator ev(mod);
    return ev.element(x);
}

std::vector<FpMatrix> evaluate_all(const std::vector<FreeRingElement>& xs, const GammaModule& mod)
{
    WordEvaluator ev(mod);
    std::vector<FpMatrix> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(ev.element(x));
    return out;
}

FpMatrix pairing_adjoint(const FpMatrix& block, const GammaModule& mod)
{
    if (!mod.pairing || is_identity(*mod.pairing)) return block.transpose();
    const FpMatrix& P = *mod.pairing;
    return invert(P) * block.transpose() * P;
}

ChainData build_chain(const group::GroupPresentation& pres, const GammaModule& mod, const Options& opt)
{
    pres.validate();
    if (pres.n_generators != mod.n_generators())
        throw ValidationError("build_chain: presentation has " + std::to_string(pres.n_generators) +
                              " generators, module has " + std::to_string(mod.n_generators()));
    if (mod.dim > opt.max_dim)
        throw ResourceError("build_chain: module dimension " + std::to_string(mod.dim) + " exceeds cap " +
                            std::to_string(opt.max_dim));
    const std::size_t n = pres.n_generators, m = pres.relators.size(), A = mod.dim;
    auto bd = group::boundary_data(pres);
    WordEvaluator ev(mod);
    if (opt.check_invariants) {
        const FpMatrix id = FpMatrix::identity(mod.p, A);
        for (std::size_t i = 0; i < m; ++i)
            if (!(ev.element(FreeRingElement::from_word(pres.relators[i])) == id))
                throw ValidationError("build_chain: relator " + std::to_string(i) + " \"" +
                                      pres.relators[i].to_string(pres.names) + "\" acts nontrivially on the module");
    }

    ChainData c;
    c.n = n;
    c.m = m;
    c.dim = A;
    c.d0 = FpMatrix(mod.p, n * A, A);
    c.adjoint_d0 = FpMatrix(mod.p, A, n * A);
    std::optional<FpMatrix> pinv;
    bool plain = !mod.pairing || is_identity(*mod.pairing);
    if (!plain) pinv = invert(*mod.pairing);
    for (std::size_t i = 0; i < n; ++i) {
        FpMatrix blk = ev.element(bd.d0[i]);
        c.d0.add_block(i * A, 0, blk);
        FpMatrix adj = plain ? blk.transpose() : (*pinv) * blk.transpose() * (*mod.pairing);
        c.adjoint_d0.add_block(0, i * A, adj);
    }
    c.d1 = FpMatrix(mod.p, m * A, n * A);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!bd.d1[i][j].is_zero()) c.d1.add_block(i * A, j * A, ev.element(bd.d1[i][j]));
    c.laplacian0 = ev.element(group::laplacian_element(pres));
    return c;
}

CohomologyResult cohomology_dims(const ChainData& c, const Options& opt)
{
    if (opt.check_invariants) {
        if (c.m > 0 && !(c.d1 * c.d0).is_zero()) throw InvariantViolation("d1 * d0 != 0");
        if (!(c.adjoint_d0 * c.d0 == c.laplacian0)) throw InvariantViolation("laplacian0 != adjoint_d0 * d0");
    }
    const std::size_t N1 = c.n * c.dim;
    CohomologyResult r;
    const std::size_t rank_d0 = linalg::rank(c.d0);
    const std::size_t rank_d1 = c.m > 0 ? linalg::rank(c.d1) : 0;
    r.h0 = c.dim - rank_d0;
    r.h1 = N1 - rank_d1 - rank_d0;
    r.delta0 = c.dim - linalg::rank(c.laplacian0);
    if (opt.explicit_intersection) {
        auto z1 = c.m > 0 ? linalg::kernel(c.d1) : linalg::Subspace::full(c.d0.p(), N1);
        auto cocl = linalg::kernel(c.adjoint_d0);
        r.omega1 = linalg::intersect(z1, cocl).dim();
    } else {
        FpMatrix stacked = c.m > 0 ? FpMatrix::vstack({&c.d1, &c.adjoint_d0}) : c.adjoint_d0;
        r.omega1 = N1 - linalg::rank(stacked);
    }
    const std::size_t gap = r.h1 > r.omega1 ? r.h1 - r.omega1 : r.omega1 - r.h1;
    if (gap > r.delta0)
        throw InvariantViolation("|h1 - omega1| = " + std::to_string(gap) + " exceeds delta0 = " + std::to_string(r.delta0));
    return r;
}

CohomologyResult cohomology_dims(const group::GroupPresentation& pres, const GammaModule& mod, const Options& opt)
{
    return cohomology_dims(build_chain(pres, mod, opt), opt);
}

CohomologyResult h1_of_subgroup(const group::GroupPresentation& pres, const congruence::CongruenceMap& hom,
                                const congruence::SubgroupSpec& sub, const Options& opt)
{
    auto mod = congruence::coset_module(hom, sub, opt.max_dim);
    return cohomology_dims(pres, mod, opt);
}

// ---------------------------------------------------------------- oracles

std::size_t brute_force_h1_oracle(const group::GroupPresentation& pres, const GammaModule& mod)
{
    const std::size_t n = pres.n_generators, A = mod.dim;
    const std::uint64_t p = mod.p;
    if (n != mod.n_generators()) throw ValidationError("oracle: generator count mismatch");
    long double total = 1;
    for (std::size_t i = 0; i < n * A; ++i) total *= static_cast<long double>(p);
    if (total > static_cast<long double>(kOracleCap)) throw ResourceError("oracle: |A|^n exceeds 10^7");

    using Vec = std::vector<std::uint64_t>;
    using Dense = std::vector<Vec>;
    std::vector<Dense> act(n), inv(n);
    for (std::size_t g = 0; g < n; ++g) {
        auto a = mod.act[g].to_dense();
        auto b = mod.act_inv[g].to_dense();
        act[g].assign(A, Vec(A));
        inv[g].assign(A, Vec(A));
        for (std::size_t i = 0; i < A; ++i)
            for (std::size_t j = 0; j < A; ++j) {
                act[g][i][j] = a[i][j];
                inv[g][i][j] = b[i][j];
            }
    }
    auto apply = [&](const Dense& M, const Vec& v) {
        Vec out(A, 0);
        for (std::size_t i = 0; i < A; ++i) {
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < A; ++j) s += M[i][j] * v[j];
            out[i] = s % p;
        }
        return out;
    };
    auto decode = [&](std::uint64_t code, std::size_t len) {
        Vec v(len);
        for (std::size_t i = 0; i < len; ++i) {
            v[i] = code % p;
            code /= p;
        }
        return v;
    };
    // Value of the crossed homomorphism on a word, letter by letter:
    // f(uv) = f(u) + u.f(v) and f(g^{-1}) = -g^{-1}.f(g).
    auto cocycle_on = [&](const Word& w, const std::vector<Vec>& f) {
        Vec val(A, 0);
        // track the action of the prefix as a dense matrix
        Dense pre(A, Vec(A, 0));
        for (std::size_t i = 0; i < A; ++i) pre[i][i] = 1;
        for (const auto& l : w.letters()) {
            Vec fl = l.exp > 0 ? f[l.gen] : apply(inv[l.gen], f[l.gen]);
            if (l.exp < 0)
                for (auto& x : fl) x = (p - x) % p;
            Vec add = apply(pre, fl);
            for (std::size_t i = 0; i < A; ++i) val[i] = (val[i] + add[i]) % p;
            const Dense& M = l.exp > 0 ? act[l.gen] : inv[l.gen];
            Dense next(A, Vec(A, 0));
            for (std::size_t i = 0; i < A; ++i)
                for (std::size_t k = 0; k < A; ++k) {
                    if (!pre[i][k]) continue;
                    for (std::size_t j = 0; j < A; ++j) next[i][j] = (next[i][j] + pre[i][k] * M[k][j]) % p;
                }
            pre = std::move(next);
        }
        return val;
    };

    const std::uint64_t count = static_cast<std::uint64_t>(total);
    std::uint64_t cocycles = 0;
    for (std::uint64_t code = 0; code < count; ++code) {
        Vec flat = decode(code, n * A);
        std::vector<Vec> f(n);
        for (std::size_t g = 0; g < n; ++g) f[g] = Vec(flat.begin() + g * A, flat.begin() + (g + 1) * A);
        bool ok = true;
        for (const auto& r : pres.relators) {
            Vec v = cocycle_on(r, f);
            for (auto x : v)
                if (x) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) ++cocycles;
    }
    // principal cocycles g -> g.a - a
    std::uint64_t asize = 1;
    for (std::size_t i = 0; i < A; ++i) asize *= p;
    std::set<Vec> principal;
    for (std::uint64_t code = 0; code < asize; ++code) {
        Vec a = decode(code, A);
        Vec tuple;
        for (std::size_t g = 0; g < n; ++g) {
            Vec ga = apply(act[g], a);
            for (std::size_t i = 0; i < A; ++i) tuple.push_back((ga[i] + p - a[i]) % p);
        }
        principal.insert(tuple);
    }
    auto logp = [&](std::uint64_t x) {
        std::size_t e = 0;
        while (x > 1) {
            if (x % p != 0) throw InvariantViolation("oracle: set size is not a power of p");
            x /= p;
            ++e;
        }
        return e;
    };
    return logp(cocycles) - logp(principal.size());
}

std::size_t abelianization_h1_oracle(const group::GroupPresentation& pres, std::uint32_t p)
{
    const std::size_t n = pres.n_generators, m = pres.relators.size();
    std::vector<std::vector<std::int64_t>> a(m, std::vector<std::int64_t>(n));
    const std::int64_t P = p;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = ((group::exponent_sum(pres.relators[i], static_cast<std::uint32_t>(j)) % P) + P) % P;
    // plain Gaussian elimination mod p
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t piv = rank;
        while (piv < m && a[piv][c] == 0) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[rank]);
        std::int64_t inv = 1;
        for (std::int64_t t = 1; t < P; ++t)
            if (a[rank][c] * t % P == 1) inv = t;
        for (std::size_t j = 0; j < n; ++j) a[rank][j] = a[rank][j] * inv % P;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank || a[i][c] == 0) continue;
            std::int64_t f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % P + P) % P;
        }
        ++rank;
    }
    return n - rank;
}

} // namespace fpcoh::cohomology
