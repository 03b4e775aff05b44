#pragma once
// Representations of PSL(2, F_p), the expected H^1 profile and its
// prediction, integral-lattice reduction of Sym^d, and admissible weights.
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpcoh/congruence.hpp"

namespace fpcoh::weights {

struct BnComponent {
    std::string name; // "SymTop", "W", "V_i"
    std::size_t multiplicity = 0;
    std::size_t dim = 0;              // dimension of one copy
    std::vector<int> factors;         // composition factors as Sym-degrees
    std::size_t factor_dim_sum() const; // sum of (degree + 1)
};

struct BnDecomposition {
    std::uint32_t p = 0;
    std::vector<BnComponent> components;
    std::size_t total_dim() const;
};

// F_p[PSL(2,F_p)] = (Sym^{p-1})^p + W + sum over even 2 <= i <= p-3 of V_i^{i+1}.
BnDecomposition bn_decomposition(std::uint32_t p);

// d -> 1 for d = p-3, 0 otherwise, for d = 0..p-1. This is the smallest
// profile compatible with the pulled-back class, not a theorem about a given group.
std::map<int, std::size_t> expected_h1_profile(std::uint32_t p);

struct H1Prediction {
    std::optional<std::size_t> predicted;
    std::vector<std::string> flags;
    bool matches_profile = false;
    bool anomaly = false;
    std::string note;
    std::map<int, std::size_t> measured;
};

extern const char* const kFlagH0Cancellation;
extern const char* const kFlagH2Cancellation;

H1Prediction predict_gamma_p_h1(std::uint32_t p, const std::map<int, std::size_t>& measured);

struct LatticeCertificate {
    std::uint32_t p = 0;
    int d = 0, k = 0, m = 0;
    std::size_t grid_side = 0;           // p^{m-1}
    std::size_t dimension = 0;           // F_p-dimension of L/pL
    std::vector<std::string> basis;      // rational combinations of a^i c^{d-i}
    bool invariant = false;              // under G(p^{k+1}) by left translation
    bool contained_in_borel_induced = false;
    bool submodule = false;              // stable under G(p)
    std::vector<std::string> failures;   // first failing check per kind
};

struct LatticeReduction {
    congruence::GammaModule module; // action of u1, u2, u3 generating G(p)
    LatticeCertificate certificate;
};

// Functions (s, t) -> F_p on the image of G(p) mod p^m, first column
// a = 1 + p s, c = p t. Requires p^k >= d and m >= k + 2.
LatticeReduction lattice_reduction(std::uint32_t p, int d, int k, int m);

struct GaloisData {
    std::vector<std::string> labels;
    std::vector<std::uint32_t> tau;
    std::vector<std::vector<std::uint32_t>> group_elements;
};

struct AdmissibleResult {
    bool admissible = false;
    std::vector<std::vector<std::uint32_t>> partition; // orbits, sorted
};

// Orbits of the group generated by g tau g^{-1}, g in group_elements (and
// tau itself); admissible iff the weight is constant on each orbit.
AdmissibleResult admissible_weights(const GaloisData& gd, const std::vector<std::uint64_t>& weight);

} // namespace fpcoh::weights
