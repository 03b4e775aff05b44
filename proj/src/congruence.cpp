#include "fpcoh/congruence.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "fpcoh/errors.hpp"

namespace fpcoh::congruence {

using u128 = unsigned __int128;

static std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t n)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

static std::uint64_t redm(std::int64_t v, std::uint64_t n)
{
    std::int64_t r = v % static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(n) : r);
}

std::uint64_t ipow(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

std::uint64_t inv_mod_n(std::uint64_t a, std::uint64_t n)
{
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(n), nr = static_cast<std::int64_t>(a % n);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw ValidationError("inv_mod_n: " + std::to_string(a) + " is not a unit mod " + std::to_string(n));
    return redm(t, n);
}

// ---------------------------------------------------------------- IntPoly

IntPoly IntPoly::parse(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ValidationError("empty polynomial string");
    IntPoly f;
    std::size_t i = 0;
    auto fail = [&]() { throw ValidationError("cannot parse polynomial \"" + text + "\""); };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            fail();
        }
        std::int64_t coef = 1;
        bool have_digits = false;
        std::int64_t num = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            num = num * 10 + (s[i] - '0');
            ++i;
            have_digits = true;
        }
        if (have_digits) coef = num;
        unsigned exp = 0;
        if (i < s.size() && s[i] == '*') {
            if (!have_digits) fail();
            ++i;
            if (i >= s.size() || s[i] != 'x') fail();
        }
        if (i < s.size() && s[i] == 'x') {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                unsigned e = 0;
                bool any = false;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    e = e * 10 + static_cast<unsigned>(s[i] - '0');
                    ++i;
                    any = true;
                }
                if (!any) fail();
                exp = e;
            }
        } else if (!have_digits) {
            fail();
        }
        if (f.c.size() <= exp) f.c.resize(exp + 1, 0);
        f.c[exp] += sign * coef;
    }
    while (f.c.size() > 1 && f.c.back() == 0) f.c.pop_back();
    return f;
}

int IntPoly::degree() const
{
    for (std::size_t i = c.size(); i-- > 0;)
        if (c[i] != 0) return static_cast<int>(i);
    return -1;
}

bool IntPoly::is_monic() const
{
    int d = degree();
    return d >= 0 && c[d] == 1;
}

IntPoly IntPoly::derivative() const
{
    IntPoly g;
    for (std::size_t i = 1; i < c.size(); ++i) g.c.push_back(c[i] * static_cast<std::int64_t>(i));
    if (g.c.empty()) g.c.push_back(0);
    return g;
}

std::uint64_t IntPoly::eval_mod(std::uint64_t x, std::uint64_t n) const
{
    std::uint64_t r = 0;
    x %= n;
    for (std::size_t i = c.size(); i-- > 0;) r = (mulm(r, x, n) + redm(c[i], n)) % n;
    return r;
}

std::string IntPoly::to_string() const
{
    std::string s;
    for (std::size_t i = c.size(); i-- > 0;) {
        std::int64_t v = c[i];
        if (v == 0) continue;
        std::int64_t a = v < 0 ? -v : v;
        if (!s.empty()) s += v < 0 ? " - " : " + ";
        else if (v < 0) s += "-";
        if (i == 0 || a != 1) s += std::to_string(a);
        if (i > 0 && a != 1) s += "*";
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

std::vector<std::uint64_t> roots_mod_p(const IntPoly& f, std::uint64_t p, bool simple_only)
{
    std::vector<std::uint64_t> out;
    IntPoly df = f.derivative();
    for (std::uint64_t a = 0; a < p; ++a) {
        if (f.eval_mod(a, p) != 0) continue;
        if (simple_only && df.eval_mod(a, p) == 0) continue;
        out.push_back(a);
    }
    return out;
}

std::uint64_t hensel_root(const IntPoly& f, std::uint64_t p, std::uint64_t a1, int k)
{
    if (k < 1) throw ValidationError("hensel_root: k must be >= 1");
    if (f.eval_mod(a1, p) != 0)
        throw ValidationError("hensel_root: " + std::to_string(a1) + " is not a root of " + f.to_string() + " mod " +
                              std::to_string(p));
    IntPoly df = f.derivative();
    if (df.eval_mod(a1, p) == 0)
        throw ValidationError("hensel_root: non-simple root " + std::to_string(a1) + " mod " + std::to_string(p) +
                              "; unusable prime");
    const std::uint64_t n = ipow(p, static_cast<unsigned>(k));
    std::uint64_t a = a1 % p;
    for (int it = 0; it < k; ++it) {
        std::uint64_t fa = f.eval_mod(a, n);
        if (fa == 0) break;
        std::uint64_t corr = mulm(fa, inv_mod_n(df.eval_mod(a, n), n), n);
        a = (a + n - corr) % n;
    }
    if (f.eval_mod(a, n) != 0) throw InvariantViolation("hensel_root: Newton lift did not converge");
    return a;
}

// ---------------------------------------------------------------- Mat2

Mat2 mat_mul(const Mat2& x, const Mat2& y, std::uint64_t n)
{
    return {(mulm(x.a, y.a, n) + mulm(x.b, y.c, n)) % n, (mulm(x.a, y.b, n) + mulm(x.b, y.d, n)) % n,
            (mulm(x.c, y.a, n) + mulm(x.d, y.c, n)) % n, (mulm(x.c, y.b, n) + mulm(x.d, y.d, n)) % n};
}

Mat2 mat_inv_sl2(const Mat2& x, std::uint64_t n)
{
    return {x.d % n, (n - x.b % n) % n, (n - x.c % n) % n, x.a % n};
}

std::uint64_t mat_det(const Mat2& x, std::uint64_t n)
{
    return (mulm(x.a, x.d, n) + n - mulm(x.b, x.c, n)) % n;
}

Mat2 mat_reduce(const Mat2& x, std::uint64_t n)
{
    return {x.a % n, x.b % n, x.c % n, x.d % n};
}

Mat2 mat_from(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::uint64_t n)
{
    return {redm(a, n), redm(b, n), redm(c, n), redm(d, n)};
}

Mat2 CongruenceMap::image_of(const group::Word& w) const
{
    Mat2 m;
    for (const auto& l : w.letters()) {
        if (l.gen >= images.size()) throw ValidationError("image_of: generator without image");
        const Mat2& g = images[l.gen];
        m = mat_mul(m, l.exp > 0 ? g : mat_inv_sl2(g, modulus), modulus);
    }
    return m;
}

CongruenceMap CongruenceMap::reduce_to(int k2) const
{
    if (k2 < 1 || k2 > k) throw ValidationError("reduce_to: level out of range");
    CongruenceMap r = *this;
    r.k = k2;
    r.modulus = ipow(p, static_cast<unsigned>(k2));
    r.root = root % r.modulus;
    for (auto& m : r.images) m = mat_reduce(m, r.modulus);
    return r;
}

CongruenceMap make_congruence_map(const RingSpec& ring, const std::vector<PolyMatrix>& images, std::uint32_t p,
                                  std::uint64_t a1, int k)
{
    if (!linalg::is_prime(p)) throw ValidationError("make_congruence_map: p = " + std::to_string(p) + " is not prime");
    if (!ring.min_poly.is_monic()) throw ValidationError("ring " + ring.label + ": min_poly must be monic");
    CongruenceMap h;
    h.p = p;
    h.k = k;
    h.modulus = ipow(p, static_cast<unsigned>(k));
    if (h.modulus > (std::uint64_t{1} << 32)) throw ResourceError("make_congruence_map: modulus too large");
    h.root = hensel_root(ring.min_poly, p, a1, k);
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto& pm = images[i];
        Mat2 m{pm[0].eval_mod(h.root, h.modulus), pm[1].eval_mod(h.root, h.modulus), pm[2].eval_mod(h.root, h.modulus),
               pm[3].eval_mod(h.root, h.modulus)};
        if (mat_det(m, h.modulus) != 1 % h.modulus)
            throw ValidationError("generator " + std::to_string(i) + " image has determinant != 1 mod " +
                                  std::to_string(h.modulus));
        h.images.push_back(m);
    }
    return h;
}

std::optional<std::size_t> first_failing_relator(const group::GroupPresentation& pres, const CongruenceMap& hom)
{
    if (hom.images.size() != pres.n_generators) return 0;
    for (std::size_t i = 0; i < pres.relators.size(); ++i)
        if (!(hom.image_of(pres.relators[i]) == Mat2{1, 0, 0, 1 % hom.modulus}))
            return i;
    return std::nullopt;
}

bool validate_presentation(const group::GroupPresentation& pres, const CongruenceMap& hom)
{
    return !first_failing_relator(pres, hom).has_value();
}

// ---------------------------------------------------------------- subgroups

SubgroupSpec SubgroupSpec::parse(const std::string& s)
{
    auto colon = s.find(':');
    std::string kind = s.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : s.substr(colon + 1);
    auto num = [&](const std::string& t) {
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            throw ValidationError("bad subgroup spec \"" + s + "\"");
        return std::stoi(t);
    };
    if (kind == "full") return full();
    if (kind == "principal") return principal(num(args));
    if (kind == "borel0") return borel0(num(args));
    if (kind == "H") return H(num(args));
    if (kind == "P") {
        auto comma = args.find(',');
        if (comma == std::string::npos) throw ValidationError("bad subgroup spec \"" + s + "\"");
        return P(num(args.substr(0, comma)), num(args.substr(comma + 1)));
    }
    throw ValidationError("unknown subgroup kind \"" + kind + "\"");
}

int SubgroupSpec::level() const
{
    switch (kind) {
    case Kind::Principal:
    case Kind::Borel0: return j;
    case Kind::H: return std::max(j, 1);
    case Kind::P: return std::max({j, l, 1});
    case Kind::Full: return 0;
    }
    return 0;
}

void SubgroupSpec::validate(int ambient_k) const
{
    if (j < 0 || l < 0) throw ValidationError("subgroup " + to_string() + ": negative parameter");
    if (kind == Kind::P && j + l < 1) throw ValidationError("subgroup P(0,0) is not a group");
    if (level() > ambient_k)
        throw ValidationError("subgroup " + to_string() + " needs level " + std::to_string(level()) +
                              " but the map is at level " + std::to_string(ambient_k));
}

std::string SubgroupSpec::to_string() const
{
    switch (kind) {
    case Kind::Principal: return "principal:" + std::to_string(j);
    case Kind::Borel0: return "borel0:" + std::to_string(j);
    case Kind::H: return "H:" + std::to_string(j);
    case Kind::P: return "P:" + std::to_string(j) + "," + std::to_string(l);
    case Kind::Full: return "full";
    }
    return "?";
}

// Canonical point of P^1(Z/m) for a primitive column (x, y).
static std::pair<std::uint64_t, std::uint64_t> proj_point(std::uint64_t x, std::uint64_t y, std::uint64_t p,
                                                          std::uint64_t m)
{
    x %= m;
    y %= m;
    if (m == 1) return {0, 0};
    if (x % p != 0) return {1 % m, mulm(y, inv_mod_n(x, m), m)};
    return {mulm(x, inv_mod_n(y, m), m), 1 % m};
}

CosetKey coset_label(const SubgroupSpec& sub, const Mat2& g, std::uint64_t p, std::uint64_t n)
{
    CosetKey key{};
    switch (sub.kind) {
    case SubgroupSpec::Kind::Full: return key;
    case SubgroupSpec::Kind::Principal: {
        std::uint64_t m = ipow(p, static_cast<unsigned>(sub.j));
        Mat2 r = mat_reduce(g, m);
        return {r.a, r.b, r.c, r.d, 0, 0};
    }
    case SubgroupSpec::Kind::Borel0: {
        auto pt = proj_point(g.a, g.c, p, ipow(p, static_cast<unsigned>(sub.j)));
        return {pt.first, pt.second, 0, 0, 0, 0};
    }
    case SubgroupSpec::Kind::H:
    case SubgroupSpec::Kind::P: {
        const int k = sub.j;
        const int l = sub.kind == SubgroupSpec::Kind::H ? 1 : sub.l;
        (void)n;
        Mat2 r = mat_reduce(g, p);
        // mod p the subgroup is trivial, lower unipotent (l = 0) or upper unipotent (k = 0)
        if (l == 0 || k == 0) {
            Mat2 best = r;
            for (std::uint64_t t = 1; t < p; ++t) {
                Mat2 s = l == 0 ? Mat2{1, 0, t, 1} : Mat2{1, t, 0, 1};
                Mat2 cand = mat_mul(r, s, p);
                if (cand < best) best = cand;
            }
            r = best;
        }
        std::uint64_t code = ((r.a * p + r.b) * p + r.c) * p + r.d;
        std::pair<std::uint64_t, std::uint64_t> c1{0, 0}, c2{0, 0};
        if (l >= 1) c1 = proj_point(g.a, g.c, p, ipow(p, static_cast<unsigned>(l)));
        if (k >= 1) c2 = proj_point(g.b, g.d, p, ipow(p, static_cast<unsigned>(k)));
        return {code, c1.first, c1.second, c2.first, c2.second, 0};
    }
    }
    return key;
}

bool subgroup_contains(const SubgroupSpec& sub, const Mat2& g, std::uint64_t p, std::uint64_t n)
{
    return coset_label(sub, g, p, n) == coset_label(sub, Mat2{1, 0, 0, 1}, p, n);
}

struct KeyHash {
    std::size_t operator()(const CosetKey& k) const
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto v : k) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

CosetSpace enumerate_cosets(const CongruenceMap& hom, const SubgroupSpec& sub, std::size_t cap,
                            const std::vector<std::size_t>& gen_order)
{
    sub.validate(hom.k);
    const std::size_t ng = hom.images.size();
    std::vector<std::size_t> order = gen_order;
    if (order.empty())
        for (std::size_t i = 0; i < ng; ++i) order.push_back(i);
    if (order.size() != ng) throw ValidationError("enumerate_cosets: generator order has wrong length");

    CosetSpace cs;
    cs.perm.assign(ng, {});
    std::unordered_map<CosetKey, std::uint32_t, KeyHash> index;
    Mat2 id{1 % hom.modulus, 0, 0, 1 % hom.modulus};
    index.emplace(coset_label(sub, id, hom.p, hom.modulus), 0);
    cs.reps.push_back(id);
    for (std::size_t i = 0; i < cs.reps.size(); ++i) {
        for (std::size_t g : order) {
            Mat2 h = mat_mul(hom.images[g], cs.reps[i], hom.modulus);
            auto key = coset_label(sub, h, hom.p, hom.modulus);
            auto it = index.find(key);
            std::uint32_t idx;
            if (it == index.end()) {
                if (cs.reps.size() >= cap)
                    throw ResourceError("coset enumeration for " + sub.to_string() + " exceeds cap " + std::to_string(cap));
                idx = static_cast<std::uint32_t>(cs.reps.size());
                index.emplace(key, idx);
                cs.reps.push_back(h);
            } else {
                idx = it->second;
            }
            if (cs.perm[g].size() <= i) cs.perm[g].resize(i + 1);
            cs.perm[g][i] = idx;
        }
    }
    cs.perm_inv.assign(ng, std::vector<std::uint32_t>(cs.reps.size()));
    for (std::size_t g = 0; g < ng; ++g) {
        cs.perm[g].resize(cs.reps.size());
        for (std::size_t i = 0; i < cs.reps.size(); ++i) cs.perm_inv[g][cs.perm[g][i]] = static_cast<std::uint32_t>(i);
    }
    return cs;
}

std::optional<std::uint64_t> generated_order(const CongruenceMap& hom, std::size_t cap)
{
    auto pack = [&](const Mat2& m) {
        CosetKey k{m.a, m.b, m.c, m.d, 0, 0};
        return k;
    };
    std::unordered_set<CosetKey, KeyHash> seen;
    std::deque<Mat2> queue;
    Mat2 id{1 % hom.modulus, 0, 0, 1 % hom.modulus};
    seen.insert(pack(id));
    queue.push_back(id);
    while (!queue.empty()) {
        Mat2 x = queue.front();
        queue.pop_front();
        for (const auto& g : hom.images) {
            Mat2 y = mat_mul(g, x, hom.modulus);
            if (seen.insert(pack(y)).second) {
                if (seen.size() > cap) return std::nullopt;
                queue.push_back(y);
            }
        }
    }
    return seen.size();
}

std::uint64_t sl2_order(std::uint64_t p, int k)
{
    return ipow(p, static_cast<unsigned>(3 * k - 2)) * (p * p - 1);
}

// ---------------------------------------------------------------- modules

FpMatrix kron(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p()) throw ValidationError("kron: modulus mismatch");
    FpMatrix out(a.p(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t r = 0; r < b.rows(); ++r) {
            linalg::SparseRow row;
            for (const auto& e : a.row(i))
                for (const auto& f : b.row(r))
                    row.push_back({static_cast<std::uint32_t>(e.col * b.cols() + f.col), linalg::mul_mod(e.val, f.val, a.p())});
            out.set_row(i * b.rows() + r, std::move(row));
        }
    return out;
}

FpMatrix word_action(const group::Word& w, const GammaModule& m)
{
    FpMatrix r = FpMatrix::identity(m.p, m.dim);
    for (const auto& l : w.letters()) {
        if (l.gen >= m.n_generators()) throw ValidationError("word_action: generator index out of range");
        r = r * (l.exp > 0 ? m.act[l.gen] : m.act_inv[l.gen]);
    }
    return r;
}

FpMatrix permutation_matrix(Residue p, const std::vector<std::uint32_t>& perm)
{
    // column i has its 1 in row perm[i]
    FpMatrix m(p, perm.size(), perm.size());
    std::vector<std::uint32_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<std::uint32_t>(i);
    for (std::size_t r = 0; r < perm.size(); ++r) m.set_row(r, {{inv[r], 1}});
    return m;
}

GammaModule trivial_module(Residue p, std::size_t n_generators)
{
    GammaModule m;
    m.p = p;
    m.dim = 1;
    m.act.assign(n_generators, FpMatrix::identity(p, 1));
    m.act_inv = m.act;
    m.pairing = FpMatrix::identity(p, 1);
    m.description = "trivial";
    return m;
}

GammaModule permutation_module(Residue p, const std::vector<std::vector<std::uint32_t>>& perms,
                               const std::vector<std::vector<std::uint32_t>>& perms_inv)
{
    GammaModule m;
    m.p = p;
    m.dim = perms.empty() ? 1 : perms[0].size();
    for (std::size_t g = 0; g < perms.size(); ++g) {
        m.act.push_back(permutation_matrix(p, perms[g]));
        m.act_inv.push_back(permutation_matrix(p, perms_inv[g]));
    }
    m.pairing = FpMatrix::identity(p, m.dim);
    m.description = "permutation";
    return m;
}

GammaModule coset_module(const CongruenceMap& hom, const SubgroupSpec& sub, std::size_t cap)
{
    CosetSpace cs = enumerate_cosets(hom, sub, cap);
    GammaModule m = permutation_module(hom.p, cs.perm, cs.perm_inv);
    m.description = "F_" + std::to_string(hom.p) + "[Q/" + sub.to_string() + "] at level " + std::to_string(hom.k);
    return m;
}

static std::uint64_t binom_mod(int n, int k, std::uint64_t p)
{
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<std::uint64_t> next(i + 1, 1);
        for (int j = 1; j < i; ++j) next[j] = (row[j - 1] + row[j]) % p;
        row = std::move(next);
    }
    return row[k];
}

FpMatrix sym_matrix(Residue p, int d, const Mat2& g)
{
    Mat2 gi = mat_inv_sl2(mat_reduce(g, p), p);
    // g.y = alpha y + beta x, g.x = gamma y + delta x
    const std::uint64_t alpha = gi.a, beta = gi.b, gamma = gi.c, delta = gi.d;
    FpMatrix m(p, d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        std::vector<std::uint64_t> poly{1}; // coefficients indexed by power of x
        auto mul_lin = [&](std::uint64_t c0, std::uint64_t c1) {
            std::vector<std::uint64_t> out(poly.size() + 1, 0);
            for (std::size_t t = 0; t < poly.size(); ++t) {
                out[t] = (out[t] + poly[t] * c0) % p;
                out[t + 1] = (out[t + 1] + poly[t] * c1) % p;
            }
            poly = std::move(out);
        };
        for (int t = 0; t < i; ++t) mul_lin(gamma, delta);
        for (int t = 0; t < d - i; ++t) mul_lin(alpha, beta);
        for (int r = 0; r <= d; ++r)
            if (poly[r]) m.set(r, i, static_cast<std::int64_t>(poly[r]));
    }
    return m;
}

FpMatrix sym_pairing(Residue p, int d)
{
    FpMatrix m(p, d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        std::uint64_t b = binom_mod(d, i, p);
        if (b == 0) throw ValidationError("sym_pairing: binomial vanishes mod p");
        std::int64_t v = static_cast<std::int64_t>(linalg::inv_mod(static_cast<Residue>(b), p));
        m.set(i, d - i, (i % 2 == 0) ? v : -v);
    }
    return m;
}

GammaModule sym_module(Residue p, int d, const CongruenceMap& hom)
{
    if (d < 0) throw ValidationError("sym_module: negative degree");
    if (d >= static_cast<int>(p)) throw ValidationError("sym_module: degree d >= p is not supported");
    if (hom.p != p) throw ValidationError("sym_module: prime mismatch");
    GammaModule m;
    m.p = p;
    m.dim = static_cast<std::size_t>(d) + 1;
    for (const auto& g : hom.images) {
        m.act.push_back(sym_matrix(p, d, g));
        m.act_inv.push_back(sym_matrix(p, d, mat_inv_sl2(mat_reduce(g, p), p)));
    }
    m.pairing = sym_pairing(p, d);
    m.description = "Sym^" + std::to_string(d);
    return m;
}

GammaModule tensor_module(const GammaModule& a, const GammaModule& b)
{
    if (a.p != b.p) throw ValidationError("tensor_module: modulus mismatch");
    if (a.n_generators() != b.n_generators()) throw ValidationError("tensor_module: generator count mismatch");
    GammaModule m;
    m.p = a.p;
    m.dim = a.dim * b.dim;
    for (std::size_t g = 0; g < a.n_generators(); ++g) {
        m.act.push_back(kron(a.act[g], b.act[g]));
        m.act_inv.push_back(kron(a.act_inv[g], b.act_inv[g]));
    }
    if (a.pairing && b.pairing) m.pairing = kron(*a.pairing, *b.pairing);
    m.description = "(" + a.description + ") x (" + b.description + ")";
    check_module(m);
    return m;
}

void check_module(const GammaModule& m, const group::GroupPresentation* pres)
{
    const FpMatrix id = FpMatrix::identity(m.p, m.dim);
    if (m.act.size() != m.act_inv.size()) throw ValidationError("module: action/inverse count mismatch");
    for (std::size_t g = 0; g < m.act.size(); ++g) {
        if (!(m.act[g] * m.act_inv[g] == id)) throw ValidationError("module " + m.description + ": generator " + std::to_string(g) + " inverse mismatch");
        if (m.pairing) {
            const FpMatrix& P = *m.pairing;
            if (!(m.act[g].transpose() * P * m.act[g] == P))
                throw ValidationError("module " + m.description + ": pairing not invariant under generator " + std::to_string(g));
        }
    }
    if (pres) {
        if (pres->n_generators != m.n_generators()) throw ValidationError("module/presentation generator count mismatch");
        for (std::size_t i = 0; i < pres->relators.size(); ++i)
            if (!(word_action(pres->relators[i], m) == id))
                throw ValidationError("module " + m.description + ": relator " + pres->relators[i].to_string(pres->names) +
                                      " acts nontrivially");
    }
}

} // namespace fpcoh::congruence
