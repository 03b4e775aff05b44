#pragma once
// Congruence towers: per-level dimensions and the executable criteria.
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fpcoh/cohomology.hpp"
#include "fpcoh/congruence.hpp"

namespace fpcoh::towers {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

enum class Verdict { Holds, Fails, NotApplicable };
std::string to_string(Verdict v);

struct AnalyticResult {
    Verdict verdict = Verdict::NotApplicable;
    std::int64_t threshold = 0; // p - 9, or p - 5 for congruence lattices
    bool congruence = false;
    bool boston_ellenberg = false; // h1 == 3
    std::string note;
};

// h1 is dim H^1(Gamma(p), F_p) at level 1.
AnalyticResult check_analytic(std::uint32_t p, std::size_t h1, bool congruence);

// Index |G : G_k| of the k-th lower p-series term of a uniform group of dimension d.
cpp_int uniform_index(std::uint32_t p, int d, int k);

struct SavingResult {
    Verdict verdict = Verdict::NotApplicable;
    cpp_rational factor;    // 1/d! - 2d p^{-(k-1)}
    cpp_rational threshold; // factor * p^{d(k-1)}
};

SavingResult check_saving(std::uint32_t p, int d, int k, const cpp_int& h1);

struct CoimageResult {
    Verdict verdict = Verdict::Fails;
    std::size_t target_dim = 0;
    std::size_t rank = 0;
    std::size_t coimage_dim = 0; // target_dim - rank
    cpp_rational threshold;      // p^{d k0} / d!
    int d = 0, k0 = 0;
};

// T maps the level-k0 quotient module (columns) to itself or a quotient (rows).
CoimageResult check_coimage(const linalg::FpMatrix& T, int d, std::uint32_t p, int k0);

struct TowerLevel {
    int k = 0;
    std::string subgroup;
    std::uint64_t index = 0;
    cohomology::CohomologyResult dims;
};

struct TowerReport {
    std::uint32_t p = 0;
    std::vector<TowerLevel> levels;
    std::optional<double> fitted_exponent;
    std::vector<int> excluded_levels; // h1 == 0, left out of the fit
    bool truncated = false;
    std::string truncation_reason;
    std::optional<std::uint64_t> closure_order_level1;
    bool closure_full_level1 = false;
    std::optional<AnalyticResult> analytic;
    std::string label; // "type (a) certified" or "uncertified"
};

using HomFamily = std::function<congruence::CongruenceMap(int k)>;
using SubgroupTemplate = std::function<congruence::SubgroupSpec(int k)>;

struct TowerOptions {
    cohomology::Options cohom;
    bool congruence = false;
    int pro_p_dim = 3;
};

TowerReport run_tower(const group::GroupPresentation& pres, const HomFamily& homs, const SubgroupTemplate& kinds,
                      int k_max, const TowerOptions& opt = {});

// Least-squares slope of log_p h1 against k over levels with h1 > 0; needs three such levels.
std::optional<double> fitted_exponent(std::uint32_t p, const std::vector<TowerLevel>& levels);

std::string rational_string(const cpp_rational& q);

} // namespace fpcoh::towers
