#include "fpcoh/reports.hpp"

#include "fpcoh/errors.hpp"

namespace fpcoh::reports {

using boost::multiprecision::cpp_int;

std::string to_string(Provenance p)
{
    switch (p) {
    case Provenance::Computed: return "computed";
    case Provenance::PaperCited: return "paper-cited";
    case Provenance::AssumptionFlagged: return "assumption-flagged";
    }
    return "?";
}

json tagged(json value, Provenance p)
{
    return json{{"value", std::move(value)}, {"provenance", to_string(p)}};
}

json cohomology_json(const cohomology::CohomologyResult& r)
{
    return json{{"h0", tagged(r.h0)}, {"h1", tagged(r.h1)}, {"omega1", tagged(r.omega1)}, {"delta0", tagged(r.delta0)}};
}

json analytic_json(const towers::AnalyticResult& a)
{
    json j{{"verdict", towers::to_string(a.verdict)},
           {"threshold", tagged(a.threshold)},
           {"congruence", a.congruence},
           {"boston_ellenberg", a.boston_ellenberg}};
    if (!a.note.empty()) j["note"] = a.note;
    return j;
}

json saving_json(const towers::SavingResult& s)
{
    return json{{"verdict", towers::to_string(s.verdict)},
                {"factor", tagged(towers::rational_string(s.factor))},
                {"threshold", tagged(towers::rational_string(s.threshold))}};
}

json tower_json(const towers::TowerReport& r, std::optional<int> saving_d)
{
    json levels = json::array();
    for (const auto& l : r.levels) {
        json lj{{"k", l.k}, {"subgroup", l.subgroup}, {"index", tagged(l.index)}, {"dims", cohomology_json(l.dims)}};
        if (saving_d) lj["saving"] = saving_json(towers::check_saving(r.p, *saving_d, l.k, l.dims.h1));
        levels.push_back(std::move(lj));
    }
    json j{{"p", r.p},
           {"levels", levels},
           {"excluded_levels", r.excluded_levels},
           {"truncated", r.truncated},
           {"closure_full_level1", r.closure_full_level1},
           {"label", r.label}};
    j["fitted_exponent"] = r.fitted_exponent ? tagged(*r.fitted_exponent) : json(nullptr);
    if (r.truncated) j["truncation_reason"] = r.truncation_reason;
    j["closure_order_level1"] = r.closure_order_level1 ? tagged(*r.closure_order_level1) : json(nullptr);
    j["analytic"] = r.analytic ? analytic_json(*r.analytic) : json(nullptr);
    return j;
}

json coverage_json(const trunc::CoverageReport& c)
{
    json missing = json::array();
    std::map<std::string, std::size_t> by_degree;
    for (const auto& e : c.entries) {
        if (!e.found) missing.push_back(e.label);
        else ++by_degree[std::to_string(e.witness_degree)];
    }
    json witnesses = json::object();
    for (const auto& [k, v] : by_degree) witnesses[k] = tagged(v);
    return json{{"status", c.status},
                {"n", c.n},
                {"coordinates", tagged(c.entries.size())},
                {"covered", tagged(c.covered())},
                {"image_rank", tagged(c.image_rank)},
                {"leading_ranks", c.leading_ranks},
                {"witness_degrees", witnesses},
                {"uncovered", missing}};
}

json weight_hypothesis_json(const trunc::WeightHypothesisReport& r)
{
    json runs = json::array();
    for (const auto& x : r.runs) runs.push_back(json{{"operator", x.op}, {"d", x.d}, {"coverage", coverage_json(x.coverage)}});
    return json{{"p", r.p},     {"n", r.n},         {"m", r.m},       {"status", r.status},
                {"graded_dims", r.graded_dims}, {"cosets", tagged(r.n_cosets)}, {"runs", runs}, {"notes", r.notes}};
}

json bn_json(const weights::BnDecomposition& bn)
{
    json comps = json::array();
    for (const auto& c : bn.components)
        comps.push_back(json{{"name", c.name},
                             {"multiplicity", tagged(c.multiplicity, Provenance::PaperCited)},
                             {"dim", tagged(c.dim, Provenance::Computed)},
                             {"factors", c.factors}});
    return json{{"p", bn.p}, {"components", comps}, {"total_dim", tagged(bn.total_dim())}};
}

json profile_json(std::uint32_t p, const std::map<int, std::size_t>& profile)
{
    json prof = json::object();
    for (const auto& [d, v] : profile) prof[std::to_string(d)] = tagged(v, Provenance::PaperCited);
    return json{{"p", p}, {"profile", prof}, {"status", "expected minimal profile, not a theorem for a given group"}};
}

json prediction_json(const weights::H1Prediction& pr)
{
    json meas = json::object();
    for (const auto& [d, v] : pr.measured) meas[std::to_string(d)] = tagged(v);
    json j{{"measured", meas}, {"matches_profile", pr.matches_profile}, {"anomaly", pr.anomaly}, {"flags", pr.flags}};
    j["predicted_h1"] = pr.predicted ? tagged(*pr.predicted, Provenance::AssumptionFlagged) : json(nullptr);
    if (!pr.note.empty()) j["note"] = pr.note;
    return j;
}

json lattice_json(const weights::LatticeCertificate& c)
{
    return json{{"p", c.p},
                {"d", c.d},
                {"k", c.k},
                {"m", c.m},
                {"grid_side", c.grid_side},
                {"dimension", tagged(c.dimension)},
                {"basis", c.basis},
                {"invariant", c.invariant},
                {"contained_in_borel_induced", c.contained_in_borel_induced},
                {"submodule", c.submodule},
                {"failures", c.failures}};
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_record(const std::vector<std::string>& fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\r\n";
}

std::pair<cpp_rational, cpp_rational> sqrt_interval(const cpp_rational& x, const cpp_rational& width)
{
    if (x < 0) throw ValidationError("sqrt_interval: negative argument");
    cpp_rational lo = 0, hi = x < 1 ? cpp_rational(1) : x;
    while (hi - lo >= width) {
        cpp_rational mid = (lo + hi) / 2;
        if (mid * mid <= x) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

namespace {

// ln y for 1 <= y <= 2 by the artanh series; the tail after the last term
// is at most 2 u^{2K+3} / ((2K+3)(1-u^2)).
std::pair<cpp_rational, cpp_rational> ln_small(const cpp_rational& y, const cpp_rational& width)
{
    cpp_rational u = (y - 1) / (y + 1), u2 = u * u;
    cpp_rational sum = 0, pw = u;
    for (int k = 0;; ++k) {
        sum += 2 * pw / (2 * k + 1);
        pw *= u2;
        cpp_rational tail = 2 * pw / ((2 * k + 3) * (1 - u2));
        if (tail < width) return {sum, sum + tail};
    }
}

} // namespace

std::pair<cpp_rational, cpp_rational> ln_interval(const cpp_rational& y, const cpp_rational& width)
{
    if (y < 1) throw ValidationError("ln_interval: argument below 1");
    int j = 0;
    cpp_rational z = y;
    while (z > 2) {
        z /= 2;
        ++j;
    }
    cpp_rational w = width / (2 * (j + 1));
    auto [lo, hi] = ln_small(z, w);
    if (j > 0) {
        auto [l2lo, l2hi] = ln_small(cpp_rational(2), w / j);
        lo += j * l2lo;
        hi += j * l2hi;
    }
    return {lo, hi};
}

DeltaCheck delta_constant_check()
{
    const cpp_rational eps(1, cpp_int("1000000000000"));
    auto [s_lo, s_hi] = sqrt_interval(3, eps);
    // log2(1 + s) = 1 + ln((1 + s)/2) / ln 2, increasing in s.
    auto [a_lo, a_hi0] = ln_interval((1 + s_lo) / 2, eps);
    auto [a_lo1, a_hi] = ln_interval((1 + s_hi) / 2, eps);
    (void)a_hi0;
    (void)a_lo1;
    auto [l2_lo, l2_hi] = ln_interval(2, eps);
    cpp_rational log_lo = 1 + a_lo / l2_hi, log_hi = 1 + a_hi / l2_lo;
    DeltaCheck d;
    d.lo = (2 - log_hi) / 4;
    d.hi = (2 - log_lo) / 4;
    d.exceeds_one_eighth = d.lo > cpp_rational(1, 8);
    d.width_ok = d.hi - d.lo < cpp_rational(1, 1000000);
    return d;
}

std::string decimal(const cpp_rational& q, int digits)
{
    cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(digits));
    cpp_rational a = q < 0 ? cpp_rational(-q) : q;
    cpp_int v = boost::multiprecision::numerator(a) * scale / boost::multiprecision::denominator(a);
    std::string s = v.str();
    if (s.size() <= static_cast<std::size_t>(digits)) s = std::string(digits + 1 - s.size(), '0') + s;
    s.insert(s.size() - digits, ".");
    return (q < 0 ? "-" : "") + s;
}

json delta_json(const DeltaCheck& d)
{
    return json{{"constant", "(2 - log2(1 + sqrt 3)) / 4"},
                {"lower", tagged(decimal(d.lo, 12))},
                {"upper", tagged(decimal(d.hi, 12))},
                {"exceeds_one_eighth", d.exceeds_one_eighth},
                {"width_below_1e-6", d.width_ok}};
}

} // namespace fpcoh::reports
