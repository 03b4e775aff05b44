#include "fpcoh/rep_weights.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>

#include "fpcoh/errors.hpp"
#include "fpcoh/f3_bits.hpp"

namespace fpcoh::weights {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using congruence::Mat2;
using linalg::Residue;

const char* const kFlagH0Cancellation =
    "assumed: the copies of Sym^{p-3} in W and as a subrepresentation of V_{p-3} are cancelled by H^0(Gamma, F_p)";
const char* const kFlagH2Cancellation =
    "assumed: the quotient copy of Sym^{p-3} in V_{p-3} is cancelled by H^2(Gamma, Sym^{p-3}) "
    "(nondegeneration of the spectral sequence term)";

std::size_t BnComponent::factor_dim_sum() const
{
    std::size_t s = 0;
    for (int f : factors) s += static_cast<std::size_t>(f) + 1;
    return s;
}

std::size_t BnDecomposition::total_dim() const
{
    std::size_t s = 0;
    for (const auto& c : components) s += c.multiplicity * c.dim;
    return s;
}

BnDecomposition bn_decomposition(std::uint32_t p)
{
    if (!linalg::is_prime(p) || p < 5) throw ValidationError("bn_decomposition: need a prime p >= 5");
    BnDecomposition bn;
    bn.p = p;
    const int q = static_cast<int>(p);
    bn.components.push_back({"SymTop", p, p, {q - 1}});
    bn.components.push_back({"W", 1, p, {0, q - 3, 0}});
    for (int i = 2; i <= q - 3; i += 2)
        bn.components.push_back({"V_" + std::to_string(i), static_cast<std::size_t>(i) + 1, 2 * std::size_t{p},
                                 {i, q - i - 1, q - i - 3, i}});
    for (const auto& c : bn.components)
        if (c.factor_dim_sum() != c.dim) throw InvariantViolation("bn_decomposition: factor dimensions of " + c.name);
    if (bn.total_dim() != std::size_t{p} * (std::size_t{p} * p - 1) / 2)
        throw InvariantViolation("bn_decomposition: total dimension");
    return bn;
}

std::map<int, std::size_t> expected_h1_profile(std::uint32_t p)
{
    if (!linalg::is_prime(p) || p < 5) throw ValidationError("expected_h1_profile: need a prime p >= 5");
    std::map<int, std::size_t> out;
    for (int d = 0; d < static_cast<int>(p); ++d) out[d] = d == static_cast<int>(p) - 3 ? 1 : 0;
    return out;
}

H1Prediction predict_gamma_p_h1(std::uint32_t p, const std::map<int, std::size_t>& measured)
{
    auto profile = expected_h1_profile(p);
    H1Prediction r;
    r.measured = measured;
    const int top = static_cast<int>(p) - 3;
    auto it = measured.find(top);
    if (it == measured.end()) {
        r.note = "degree p-3 not measured";
        return r;
    }
    if (it->second == 0) {
        r.anomaly = true;
        r.note = "H^1(Gamma, Sym^{p-3}) = 0, but the class pulled back from PSL(2, F_p) should be nonzero";
        return r;
    }
    r.matches_profile = true;
    for (const auto& [d, v] : measured) {
        auto e = profile.find(d);
        if (e == profile.end() || e->second != v) r.matches_profile = false;
    }
    if (!r.matches_profile) {
        r.note = "measured profile differs from the minimal one; no prediction";
        return r;
    }
    r.predicted = 3;
    r.flags = {kFlagH0Cancellation, kFlagH2Cancellation};
    return r;
}

namespace {

// Coefficients of v in an independent family, or nullopt if v is outside its span.
class SpanSolver {
public:
    SpanSolver(Residue p, const std::vector<std::vector<Residue>>& basis)
        : p_(p), G_(basis.empty() ? 0 : basis[0].size()), B_(basis.size()), e_(p, G_ + B_)
    {
        for (std::size_t i = 0; i < B_; ++i) {
            linalg::GFVec v(G_ + B_, p);
            for (std::size_t x = 0; x < G_; ++x) v.set(x, basis[i][x]);
            v.set(G_ + i, 1);
            auto piv = e_.insert(std::move(v));
            if (piv < 0 || static_cast<std::size_t>(piv) >= G_) throw InvariantViolation("lattice_reduction: dependent basis");
        }
    }
    std::optional<std::vector<Residue>> solve(const std::vector<Residue>& w) const
    {
        linalg::GFVec v(G_ + B_, p_);
        for (std::size_t x = 0; x < G_; ++x) v.set(x, w[x]);
        e_.reduce_full(v);
        auto lead = v.leading(0);
        if (lead >= 0 && static_cast<std::size_t>(lead) < G_) return std::nullopt;
        std::vector<Residue> c(B_);
        for (std::size_t i = 0; i < B_; ++i) c[i] = (p_ - v.get(G_ + i)) % p_;
        return c;
    }

private:
    Residue p_;
    std::size_t G_, B_;
    linalg::DenseEchelon<linalg::GFVec> e_;
};

std::string poly_string(const std::vector<cpp_rational>& lam, int d)
{
    std::string out;
    for (int i = d; i >= 0; --i) {
        const auto& q = lam[static_cast<std::size_t>(i)];
        if (q == 0) continue;
        cpp_rational a = q < 0 ? cpp_rational(-q) : q;
        std::string mono;
        if (i > 0) mono += i == 1 ? "a" : "a^" + std::to_string(i);
        if (d - i > 0) mono += (d - i == 1) ? "c" : "c^" + std::to_string(d - i);
        auto num = boost::multiprecision::numerator(a), den = boost::multiprecision::denominator(a);
        std::string term;
        if (num != 1 || mono.empty()) term = num.str();
        term += mono;
        if (den != 1) term += "/" + den.str();
        out += out.empty() ? (q < 0 ? "-" : "") : (q < 0 ? " - " : " + ");
        out += term;
    }
    return out.empty() ? "0" : out;
}

} // namespace

LatticeReduction lattice_reduction(std::uint32_t p, int d, int k, int m)
{
    if (!linalg::is_prime(p)) throw ValidationError("lattice_reduction: p must be prime");
    if (d < 0 || k < 0) throw ValidationError("lattice_reduction: need d >= 0, k >= 0");
    if (congruence::ipow(p, static_cast<unsigned>(k)) < static_cast<std::uint64_t>(d))
        throw ValidationError("lattice_reduction: p^k < d");
    if (m < k + 2) throw ValidationError("lattice_reduction: working level m must be >= k + 2");
    const std::uint64_t S = congruence::ipow(p, static_cast<unsigned>(m - 1));
    const std::uint64_t q = S * p;
    if (S * S > 4000000) throw ResourceError("lattice_reduction: grid too large");
    const std::size_t G = static_cast<std::size_t>(S * S);
    const std::size_t B = static_cast<std::size_t>(d) + 1;

    // Exact values of a^i c^{d-i} at a = 1 + p s, c = p t.
    std::vector<std::vector<cpp_int>> w(B, std::vector<cpp_int>(G));
    std::vector<std::vector<cpp_rational>> lam(B, std::vector<cpp_rational>(B, 0));
    for (std::size_t i = 0; i < B; ++i) {
        lam[i][i] = 1;
        for (std::uint64_t s = 0; s < S; ++s)
            for (std::uint64_t t = 0; t < S; ++t) {
                cpp_int a = 1 + cpp_int(p) * s, c = cpp_int(p) * t;
                w[i][s * S + t] = boost::multiprecision::pow(a, static_cast<unsigned>(i)) *
                                  boost::multiprecision::pow(c, static_cast<unsigned>(d - static_cast<int>(i)));
            }
    }
    auto mod_p = [&](const cpp_int& x) {
        cpp_int r = x % p;
        if (r < 0) r += p;
        return static_cast<Residue>(r);
    };

    // Saturate: while the reductions are dependent, replace one vector of a
    // dependency by (combination)/p. The grid side p^{m-1} > d, so
    // integrality on the grid is integrality on all of G(p).
    while (true) {
        std::vector<std::vector<Residue>> red(B, std::vector<Residue>(G));
        for (std::size_t i = 0; i < B; ++i)
            for (std::size_t x = 0; x < G; ++x) red[i][x] = mod_p(w[i][x]);
        linalg::DenseEchelon<linalg::GFVec> e(p, G + B);
        std::optional<std::vector<Residue>> dep;
        for (std::size_t i = 0; i < B && !dep; ++i) {
            linalg::GFVec v(G + B, p);
            for (std::size_t x = 0; x < G; ++x) v.set(x, red[i][x]);
            v.set(G + i, 1);
            linalg::GFVec r = v;
            e.reduce_full(r);
            auto lead = r.leading(0);
            if (lead >= 0 && static_cast<std::size_t>(lead) < G) {
                e.insert(std::move(v));
                continue;
            }
            // r = [0 | mu] with sum mu_j red_j = 0 and mu_i = 1.
            std::vector<Residue> mu(B);
            for (std::size_t j = 0; j < B; ++j) mu[j] = r.get(G + j);
            dep = mu;
        }
        if (!dep) break;
        auto& mu = *dep;
        std::size_t j = B;
        for (std::size_t t = B; t-- > 0;)
            if (mu[t]) {
                j = t;
                break;
            }
        Residue sc = linalg::inv_mod(mu[j], p);
        for (auto& x : mu) x = linalg::mul_mod(x, sc, p);
        std::vector<cpp_int> nw(G, 0);
        std::vector<cpp_rational> nl(B, 0);
        for (std::size_t i = 0; i < B; ++i) {
            if (!mu[i]) continue;
            for (std::size_t x = 0; x < G; ++x) nw[x] += w[i][x] * mu[i];
            for (std::size_t y = 0; y < B; ++y) nl[y] += lam[i][y] * mu[i];
        }
        for (std::size_t x = 0; x < G; ++x) {
            if (nw[x] % p != 0) throw InvariantViolation("lattice_reduction: saturation step not divisible");
            nw[x] /= p;
        }
        for (auto& y : nl) y /= p;
        w[j] = std::move(nw);
        lam[j] = std::move(nl);
    }

    std::vector<std::vector<Residue>> F(B, std::vector<Residue>(G));
    for (std::size_t i = 0; i < B; ++i)
        for (std::size_t x = 0; x < G; ++x) F[i][x] = mod_p(w[i][x]);
    SpanSolver solver(p, F);

    auto point = [&](std::uint64_t s, std::uint64_t t) {
        return std::pair<std::uint64_t, std::uint64_t>{(1 + p * s) % q, (p * t) % q};
    };
    auto index_of = [&](std::uint64_t a, std::uint64_t c) -> std::size_t {
        if (a % p != 1 % p || c % p != 0) throw InvariantViolation("lattice_reduction: left G(p)");
        return static_cast<std::size_t>(((a + q - 1) % q / p) * S + c / p);
    };
    // (h.F)(x) = F(h^{-1} x) on first columns.
    auto translate = [&](const std::vector<Residue>& f, const Mat2& h) {
        Mat2 hi = congruence::mat_inv_sl2(h, q);
        std::vector<Residue> out(G);
        for (std::uint64_t s = 0; s < S; ++s)
            for (std::uint64_t t = 0; t < S; ++t) {
                auto [a, c] = point(s, t);
                std::uint64_t a2 = (hi.a * a + hi.b * c) % q, c2 = (hi.c * a + hi.d * c) % q;
                out[s * S + t] = f[index_of(a2, c2)];
            }
        return out;
    };
    auto gens_at = [&](std::uint64_t e) {
        std::int64_t pe = static_cast<std::int64_t>(e);
        return std::vector<Mat2>{congruence::mat_from(1, pe, 0, 1, q),
                                 congruence::mat_from(1 + pe, 0, 0, static_cast<std::int64_t>(congruence::inv_mod_n(1 + e, q)), q),
                                 congruence::mat_from(1, 0, pe, 1, q)};
    };

    LatticeReduction out;
    auto& cert = out.certificate;
    cert.p = p;
    cert.d = d;
    cert.k = k;
    cert.m = m;
    cert.grid_side = S;
    cert.dimension = B;
    for (std::size_t i = 0; i < B; ++i) cert.basis.push_back(poly_string(lam[i], d));

    cert.invariant = true;
    auto deep = gens_at(congruence::ipow(p, static_cast<unsigned>(k + 1)));
    for (std::size_t g = 0; g < deep.size() && cert.invariant; ++g)
        for (std::size_t i = 0; i < B; ++i)
            if (translate(F[i], deep[g]) != F[i]) {
                cert.invariant = false;
                cert.failures.push_back("basis function " + std::to_string(i) + " (" + cert.basis[i] +
                                        ") moves under generator " + std::to_string(g) + " of G(p^" + std::to_string(k + 1) + ")");
                break;
            }

    // Scaling the first column by 1 + p is right multiplication by the Borel
    // element diag(1+p, (1+p)^{-1}); the reduced functions must not see it.
    cert.contained_in_borel_induced = true;
    for (std::size_t i = 0; i < B && cert.contained_in_borel_induced; ++i)
        for (std::uint64_t s = 0; s < S; ++s)
            for (std::uint64_t t = 0; t < S; ++t) {
                auto [a, c] = point(s, t);
                if (F[i][index_of(a * (1 + p) % q, c * (1 + p) % q)] != F[i][s * S + t]) {
                    cert.contained_in_borel_induced = false;
                    cert.failures.push_back("basis function " + std::to_string(i) + " is not Borel-equivariant");
                    s = S;
                    break;
                }
            }

    auto& mod = out.module;
    mod.p = p;
    mod.dim = B;
    mod.description = "L/pL for Sym^" + std::to_string(d) + " at p = " + std::to_string(p);
    cert.submodule = true;
    for (const auto& g : gens_at(p)) {
        for (int inv = 0; inv < 2; ++inv) {
            Mat2 h = inv ? congruence::mat_inv_sl2(g, q) : g;
            linalg::FpMatrix A(p, B, B);
            for (std::size_t i = 0; i < B; ++i) {
                auto c = solver.solve(translate(F[i], h));
                if (!c) {
                    if (cert.submodule) cert.failures.push_back("span not stable under G(p)");
                    cert.submodule = false;
                    continue;
                }
                for (std::size_t r = 0; r < B; ++r)
                    if ((*c)[r]) A.set(r, i, (*c)[r]);
            }
            (inv ? mod.act_inv : mod.act).push_back(std::move(A));
        }
    }
    return out;
}

AdmissibleResult admissible_weights(const GaloisData& gd, const std::vector<std::uint64_t>& weight)
{
    const std::size_t n = gd.labels.size();
    auto check_perm = [&](const std::vector<std::uint32_t>& s, const char* what) {
        if (s.size() != n) throw ValidationError(std::string("admissible_weights: ") + what + " has wrong size");
        std::vector<char> seen(n, 0);
        for (auto x : s) {
            if (x >= n || seen[x]) throw ValidationError(std::string("admissible_weights: ") + what + " is not a permutation");
            seen[x] = 1;
        }
    };
    check_perm(gd.tau, "tau");
    for (std::size_t i = 0; i < n; ++i)
        if (gd.tau[gd.tau[i]] != i) throw ValidationError("admissible_weights: tau is not an involution");
    for (const auto& g : gd.group_elements) check_perm(g, "group element");
    if (weight.size() != n) throw ValidationError("admissible_weights: weight must be defined on every label");

    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); };
    for (std::uint32_t x = 0; x < n; ++x) unite(x, gd.tau[x]);
    for (const auto& g : gd.group_elements) {
        std::vector<std::uint32_t> ginv(n);
        for (std::uint32_t x = 0; x < n; ++x) ginv[g[x]] = x;
        for (std::uint32_t x = 0; x < n; ++x) unite(x, g[gd.tau[ginv[x]]]);
    }
    std::map<std::uint32_t, std::vector<std::uint32_t>> orbits;
    for (std::uint32_t x = 0; x < n; ++x) orbits[find(x)].push_back(x);
    AdmissibleResult r;
    for (auto& [root, o] : orbits) r.partition.push_back(o);
    std::sort(r.partition.begin(), r.partition.end());
    r.admissible = true;
    for (const auto& o : r.partition)
        for (auto x : o)
            if (weight[x] != weight[o.front()]) r.admissible = false;
    return r;
}

} // namespace fpcoh::weights
