#pragma once
// JSON reports with provenance tags, CSV output, and the constant check
// for the power-saving exponent.
#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "fpcoh/algebra_trunc.hpp"
#include "fpcoh/cohomology.hpp"
#include "fpcoh/rep_weights.hpp"
#include "fpcoh/towers.hpp"

namespace fpcoh::reports {

using boost::multiprecision::cpp_rational;
using nlohmann::json;

enum class Provenance { Computed, PaperCited, AssumptionFlagged };
std::string to_string(Provenance p);

// {"provenance": ..., "value": v}
json tagged(json value, Provenance p = Provenance::Computed);

json cohomology_json(const cohomology::CohomologyResult& r);
// saving_d: also report check_saving(p, saving_d, k, h1) per level.
json tower_json(const towers::TowerReport& r, std::optional<int> saving_d = std::nullopt);
json analytic_json(const towers::AnalyticResult& a);
json saving_json(const towers::SavingResult& s);
json coverage_json(const trunc::CoverageReport& c);
json weight_hypothesis_json(const trunc::WeightHypothesisReport& r);
json bn_json(const weights::BnDecomposition& bn);
json profile_json(std::uint32_t p, const std::map<int, std::size_t>& profile);
json prediction_json(const weights::H1Prediction& pr);
json lattice_json(const weights::LatticeCertificate& c);

// Stable text form: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

// RFC 4180: fields quoted when they contain a comma, quote or line break;
// records end in CRLF.
std::string csv_field(const std::string& s);
std::string csv_record(const std::vector<std::string>& fields);

// Rational enclosure of sqrt(x) by bisection to the given width.
std::pair<cpp_rational, cpp_rational> sqrt_interval(const cpp_rational& x, const cpp_rational& width);
// Enclosure of ln(y) for y >= 1 via ln y = 2 artanh((y-1)/(y+1)).
std::pair<cpp_rational, cpp_rational> ln_interval(const cpp_rational& y, const cpp_rational& width);

struct DeltaCheck {
    cpp_rational lo, hi; // enclosure of (2 - log2(1 + sqrt 3)) / 4
    bool exceeds_one_eighth = false;
    bool width_ok = false; // hi - lo < 1e-6
};
DeltaCheck delta_constant_check();
json delta_json(const DeltaCheck& d);

std::string decimal(const cpp_rational& q, int digits);

} // namespace fpcoh::reports
