// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// checkable criterion fails, 3 if the approximation bound is ever breached.
#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>

#include "fpcoh/cohomology.hpp"
#include "fpcoh/corpus.hpp"
#include "fpcoh/errors.hpp"
#include "fpcoh/rep_weights.hpp"
#include "fpcoh/reports.hpp"
#include "fpcoh/survey.hpp"
#include "fpcoh/towers.hpp"
#include "instances.hpp"

using namespace fpcoh;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

bool approx_breached = false;

std::vector<survey::CorpusEntry> full_corpus()
{
    auto c = survey::load_corpus(std::string(FPCOH_CORPUS_DIR) + "/corpus.json");
    for (const auto& name : survey::builtin_names()) c.push_back(survey::builtin_entry(name));
    return c;
}

Outcome oracle_equivalence()
{
    auto inst = testing::oracle_instances();
    std::size_t agree = 0;
    std::string first_bad;
    for (const auto& i : inst) {
        if (cohomology::cohomology_dims(i.pres, i.mod).h1 == cohomology::brute_force_h1_oracle(i.pres, i.mod))
            ++agree;
        else if (first_bad.empty())
            first_bad = i.name;
    }
    Outcome o;
    o.pass = agree == inst.size() && inst.size() >= 20;
    o.detail = std::to_string(agree) + "/" + std::to_string(inst.size()) + " instances agree";
    if (!first_bad.empty()) o.detail += ", first mismatch: " + first_bad;
    return o;
}

// Every complex built for the corpus at p in {3, 5, 7}: coset modules of
// the full group, borel0:1 and principal:1, and Sym^d twists at p = 3.
// Shared by the approximation and Fox checks.
struct ComplexSweep {
    std::size_t complexes = 0, approx_ok = 0, d1d0_ok = 0;
    std::string first_bad;
};

ComplexSweep sweep_corpus()
{
    ComplexSweep s;
    auto record = [&](const std::string& name, const group::GroupPresentation& pres, const congruence::GammaModule& mod) {
        auto c = cohomology::build_chain(pres, mod);
        ++s.complexes;
        if ((c.d1 * c.d0).is_zero()) ++s.d1d0_ok;
        auto r = cohomology::cohomology_dims(c);
        std::size_t gap = r.h1 > r.omega1 ? r.h1 - r.omega1 : r.omega1 - r.h1;
        if (gap <= r.delta0)
            ++s.approx_ok;
        else if (s.first_bad.empty())
            s.first_bad = name;
    };
    for (const auto& e : full_corpus())
        for (std::uint32_t p : {3u, 5u, 7u})
            for (auto root : survey::degree_one_roots(e, p)) {
                auto hom = survey::entry_map(e, p, root, 1);
                for (auto sub : {congruence::SubgroupSpec::full(), congruence::SubgroupSpec::borel0(1),
                                 congruence::SubgroupSpec::principal(1)}) {
                    auto mod = congruence::coset_module(hom, sub);
                    std::string name = e.label + " p=" + std::to_string(p) + " " + sub.to_string();
                    record(name, e.presentation, mod);
                    if (p == 3 && sub != congruence::SubgroupSpec::principal(1))
                        for (int d = 1; d <= 2; ++d)
                            record(name + " Sym^" + std::to_string(d), e.presentation,
                                   congruence::tensor_module(mod, congruence::sym_module(p, d, hom)));
                }
            }
    for (const auto& i : testing::oracle_instances()) record(i.name, i.pres, i.mod);
    return s;
}

Outcome approximation_bound(const ComplexSweep& s)
{
    Outcome o;
    o.pass = s.approx_ok == s.complexes;
    approx_breached = !o.pass;
    o.detail = std::to_string(s.approx_ok) + "/" + std::to_string(s.complexes) + " complexes satisfy the bound";
    if (!s.first_bad.empty()) o.detail += ", breach at " + s.first_bad;
    return o;
}

Outcome pnormal()
{
    auto pairs = testing::pnormal_pairs();
    std::size_t ok = 0;
    for (const auto& np : pairs) {
        auto g = cohomology::cohomology_dims(np.pres, congruence::trivial_module(np.p, np.pres.n_generators));
        auto n = cohomology::cohomology_dims(np.pres, testing::cyclic_module(np.p, np.p, np.phi));
        ok += n.h1 <= np.p * g.h1;
    }
    return {ok == pairs.size() && pairs.size() >= 10,
            std::to_string(ok) + "/" + std::to_string(pairs.size()) + " pairs satisfy h1(N) <= p h1(G)"};
}

Outcome fox(const ComplexSweep& s)
{
    std::size_t relators = 0, ok = 0;
    for (const auto& e : full_corpus())
        for (const auto& r : e.presentation.relators) {
            ++relators;
            ok += group::fox_fundamental_identity(r, e.presentation.n_generators);
        }
    std::ostringstream d;
    d << ok << "/" << relators << " relators satisfy the identity, d1 d0 = 0 on " << s.d1d0_ok << "/" << s.complexes
      << " complexes";
    return {ok == relators && s.d1d0_ok == s.complexes, d.str()};
}

Outcome brauer_nesbitt()
{
    bool ok = true;
    std::ostringstream d;
    for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u}) {
        auto bn = weights::bn_decomposition(p);
        bool here = bn.total_dim() == p * (p * p - 1) / 2;
        for (const auto& c : bn.components)
            if (c.name.rfind("V_", 0) == 0) here = here && c.factor_dim_sum() == 2 * p;
        d << " p=" << p << ":" << bn.total_dim();
        ok = ok && here;
    }
    return {ok, "totals" + d.str()};
}

Outcome profiles()
{
    bool ok = true;
    for (std::uint32_t p : {5u, 7u, 13u}) {
        auto prof = weights::expected_h1_profile(p);
        ok = ok && prof.size() == p;
        for (const auto& [d, v] : prof) ok = ok && v == (d == static_cast<int>(p) - 3 ? 1u : 0u);
    }
    return {ok, "p = 5, 7, 13"};
}

Outcome lucas()
{
    bool ok = true;
    std::ostringstream d;
    for (auto [p, deg, k] : {std::tuple{3u, 1, 1}, std::tuple{3u, 2, 1}, std::tuple{3u, 3, 1}, std::tuple{5u, 4, 1}}) {
        auto cert = weights::lattice_reduction(p, deg, k, k + 2).certificate;
        d << " (" << p << "," << deg << "," << k << "):" << (cert.invariant ? "invariant" : "NOT invariant");
        if (!cert.invariant && !cert.failures.empty()) d << " [" << cert.failures.front() << "]";
        ok = ok && cert.invariant;
    }
    return {ok, d.str().substr(1)};
}

Outcome verify41()
{
    auto corpus = survey::load_corpus(std::string(FPCOH_CORPUS_DIR) + "/corpus.json");
    auto e = survey::resolve_entry(corpus, "SL2(O-2)");
    std::string status;
    auto j = nlohmann::json::parse(survey::cmd_verify41(e, 4, survey::RunOptions{}, &status));
    bool sourced = j.value("presentation_sourced", false);
    std::ostringstream d;
    d << "presentation " << (sourced ? "sourced and validated" : "UNSOURCED (flagged)") << ", overall " << status << ";";
    for (const auto& run : j["runs"]) {
        const auto& c = run["coverage"];
        d << " " << run["operator"].get<std::string>() << " d=" << run["d"].get<int>() << " "
          << c["covered"]["value"].get<std::size_t>() << "/" << c["coordinates"]["value"].get<std::size_t>();
    }
    return {sourced && status == "pass", d.str()};
}

// Independent evaluation of the two threshold tests.
towers::Verdict saving_reference(std::uint32_t p, int d, int k, const cpp_int& h1)
{
    cpp_rational f = 1;
    for (int i = 2; i <= d; ++i) f /= i;
    cpp_rational q = 1;
    for (int i = 1; i < k; ++i) q *= p;
    f -= cpp_rational(2 * d) / q;
    if (f <= 0) return towers::Verdict::NotApplicable;
    cpp_rational bound = f;
    for (int i = 0; i < d * (k - 1); ++i) bound *= p;
    return cpp_rational(h1) < bound ? towers::Verdict::Holds : towers::Verdict::Fails;
}

towers::Verdict analytic_reference(std::uint32_t p, std::size_t h1, bool congruence)
{
    long t = static_cast<long>(p) - (congruence ? 5 : 9);
    if (t < 3) return towers::Verdict::NotApplicable;
    return static_cast<long>(h1) <= t ? towers::Verdict::Holds : towers::Verdict::Fails;
}

Outcome thresholds()
{
    std::mt19937_64 rng(41);
    const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    std::size_t ok = 0, total = 0, na = 0;
    auto one = [&](std::uint32_t p, int d, int k, const cpp_int& h1) {
        ++total;
        auto v = towers::check_saving(p, d, k, h1).verdict;
        na += v == towers::Verdict::NotApplicable;
        ok += v == saving_reference(p, d, k, h1);
        std::size_t small = static_cast<std::size_t>(h1 % 20);
        for (bool c : {false, true}) ok += towers::check_analytic(p, small, c).verdict == analytic_reference(p, small, c);
    };
    one(5, 3, 2, 0);
    for (int t = 1; t < 50; ++t) {
        std::uint32_t p = primes[rng() % 8];
        int d = 1 + static_cast<int>(rng() % 4), k = 1 + static_cast<int>(rng() % 5);
        one(p, d, k, cpp_int(rng() % 10000000));
    }
    bool na_case = towers::check_saving(5, 3, 2, 0).verdict == towers::Verdict::NotApplicable;
    std::ostringstream d;
    d << ok << "/" << 3 * total << " verdicts agree over " << total << " tuples, " << na << " not applicable";
    return {ok == 3 * total && na_case, d.str()};
}

Outcome delta_constant()
{
    auto c = reports::delta_constant_check();
    std::ostringstream d;
    d << "[" << reports::decimal(c.lo, 10) << ", " << reports::decimal(c.hi, 10) << "]";
    return {c.exceeds_one_eighth && c.width_ok, d.str()};
}

} // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    bool all = true;
    auto run = [&](int id, const char* title, double budget_s, const std::function<Outcome()>& f) {
        auto t0 = clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        bool in_time = secs <= budget_s;
        bool pass = o.pass && in_time;
        all = all && pass;
        std::printf("[%s] %2d %s (%.2f s, budget %.0f s): %s\n", pass ? "PASS" : "FAIL", id, title, secs, budget_s,
                    o.detail.c_str());
        if (o.pass && !in_time) std::printf("       %2d over the time budget\n", id);
        std::fflush(stdout);
    };

    ComplexSweep sweep;
    run(1, "oracle equivalence", 10, oracle_equivalence);
    run(2, "approximation bound", 60, [&] {
        sweep = sweep_corpus();
        return approximation_bound(sweep);
    });
    run(3, "index-p normal subgroups", 60, pnormal);
    run(4, "Fox identity and d1 d0 = 0", 10, [&] { return fox(sweep); });
    run(5, "regular representation decomposition", 1, brauer_nesbitt);
    run(6, "expected H^1 profile", 1, profiles);
    run(7, "lattice invariance", 60, lucas);
    run(8, "lowest-degree coverage for SL(2, O_-2), n = 4", 900, verify41);
    run(9, "threshold checkers", 1, thresholds);
    run(10, "power-saving constant", 1, delta_constant);
    std::printf("[N/A ] 11 not reproducible at desk scale: the d^{15/8} upper and linear lower bounds for "
                "dim H^1(SL(2, O_-2), E_d), exact counts of the prime-survey table, and the asymptotic growth "
                "exponent; covered instead by the invariant and certificate checks 1-10\n");
    if (approx_breached) return 3;
    return all ? 0 : 1;
}
