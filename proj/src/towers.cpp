#include "fpcoh/towers.hpp"

#include <cmath>

#include "fpcoh/errors.hpp"

namespace fpcoh::towers {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

std::string rational_string(const cpp_rational& q)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

AnalyticResult check_analytic(std::uint32_t p, std::size_t h1, bool congruence)
{
    AnalyticResult r;
    r.congruence = congruence;
    r.threshold = static_cast<std::int64_t>(p) - (congruence ? 5 : 9);
    r.boston_ellenberg = h1 == 3;
    // h1 >= 3 whenever the closure is all of SL(2, Z_p): Hom(G(p), F_p) already has dimension 3.
    if (r.threshold < 3) {
        r.verdict = Verdict::NotApplicable;
        r.note = "threshold " + std::to_string(r.threshold) + " is below the floor dim Hom(G(p), F_p) = 3";
        return r;
    }
    r.verdict = static_cast<std::int64_t>(h1) <= r.threshold ? Verdict::Holds : Verdict::Fails;
    return r;
}

cpp_int uniform_index(std::uint32_t p, int d, int k)
{
    if (k < 1 || d < 0) throw ValidationError("uniform_index: need k >= 1, d >= 0");
    return boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(d * (k - 1)));
}

static cpp_int factorial(int d)
{
    cpp_int f = 1;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

SavingResult check_saving(std::uint32_t p, int d, int k, const cpp_int& h1)
{
    if (k < 1 || d < 1) throw ValidationError("check_saving: need k >= 1, d >= 1");
    if (h1 < 0) throw ValidationError("check_saving: negative h1");
    SavingResult r;
    cpp_int pk1 = boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(k - 1));
    r.factor = cpp_rational(1, factorial(d)) - cpp_rational(cpp_int(2 * d), pk1);
    r.threshold = r.factor * cpp_rational(uniform_index(p, d, k));
    if (r.factor <= 0) {
        r.verdict = Verdict::NotApplicable;
        return r;
    }
    r.verdict = cpp_rational(h1) < r.threshold ? Verdict::Holds : Verdict::Fails;
    return r;
}

CoimageResult check_coimage(const linalg::FpMatrix& T, int d, std::uint32_t p, int k0)
{
    if (d < 1 || k0 < 1) throw ValidationError("check_coimage: need d >= 1, k0 >= 1");
    CoimageResult r;
    r.d = d;
    r.k0 = k0;
    r.target_dim = T.rows();
    r.rank = linalg::rank(T);
    r.coimage_dim = r.target_dim - r.rank;
    r.threshold = cpp_rational(boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(d * k0)), factorial(d));
    r.verdict = cpp_rational(r.coimage_dim) < r.threshold ? Verdict::Holds : Verdict::Fails;
    return r;
}

std::optional<double> fitted_exponent(std::uint32_t p, const std::vector<TowerLevel>& levels)
{
    std::vector<double> xs, ys;
    for (const auto& l : levels) {
        if (l.dims.h1 == 0) continue;
        xs.push_back(l.k);
        ys.push_back(std::log(static_cast<double>(l.dims.h1)) / std::log(static_cast<double>(p)));
    }
    if (xs.size() < 3) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

TowerReport run_tower(const group::GroupPresentation& pres, const HomFamily& homs, const SubgroupTemplate& kinds,
                      int k_max, const TowerOptions& opt)
{
    TowerReport rep;
    std::optional<congruence::CongruenceMap> prev;
    for (int k = 1; k <= k_max; ++k) {
        try {
            auto hom = homs(k);
            if (rep.p == 0) rep.p = hom.p;
            if (hom.k != k) throw ValidationError("tower: map for level " + std::to_string(k) + " has level " + std::to_string(hom.k));
            if (!congruence::validate_presentation(pres, hom))
                throw ValidationError("tower: relators fail at level " + std::to_string(k));
            if (prev && !(hom.reduce_to(k - 1).images == prev->images))
                throw ValidationError("tower: level " + std::to_string(k) + " map does not reduce to level " + std::to_string(k - 1));
            if (k == 1) {
                rep.closure_order_level1 = congruence::generated_order(hom, opt.cohom.max_dim);
                rep.closure_full_level1 =
                    rep.closure_order_level1 && *rep.closure_order_level1 == congruence::sl2_order(hom.p, 1);
                auto sub1 = congruence::SubgroupSpec::principal(1);
                auto dims1 = cohomology::h1_of_subgroup(pres, hom, sub1, opt.cohom);
                if (rep.closure_full_level1) rep.analytic = check_analytic(hom.p, dims1.h1, opt.congruence);
            }
            auto sub = kinds(k);
            auto cs = congruence::enumerate_cosets(hom, sub, opt.cohom.max_dim);
            auto mod = congruence::permutation_module(hom.p, cs.perm, cs.perm_inv);
            TowerLevel lvl;
            lvl.k = k;
            lvl.subgroup = sub.to_string();
            lvl.index = cs.size();
            lvl.dims = cohomology::cohomology_dims(pres, mod, opt.cohom);
            if (!rep.levels.empty() && lvl.index <= rep.levels.back().index)
                throw ValidationError("tower: indices not strictly increasing at level " + std::to_string(k));
            rep.levels.push_back(lvl);
            prev = hom;
        } catch (const ResourceError& e) {
            rep.truncated = true;
            rep.truncation_reason = e.what();
            break;
        }
    }
    for (const auto& l : rep.levels)
        if (l.dims.h1 == 0) rep.excluded_levels.push_back(l.k);
    rep.fitted_exponent = fitted_exponent(rep.p, rep.levels);
    bool flat = !rep.levels.empty();
    for (const auto& l : rep.levels)
        if (l.dims.h1 != static_cast<std::size_t>(opt.pro_p_dim)) flat = false;
    rep.label = (flat && rep.analytic && rep.analytic->verdict == Verdict::Holds) ? "type (a) certified" : "uncertified";
    return rep;
}

} // namespace fpcoh::towers
