#pragma once
// Cochain complex of a presentation with coefficients in a finite module,
// and the dimensions H^0, H^1, Omega^1, Delta^0.
#include <cstddef>

#include "fpcoh/congruence.hpp"
#include "fpcoh/fp_linalg.hpp"
#include "fpcoh/group_core.hpp"

namespace fpcoh::cohomology {

using congruence::GammaModule;
using linalg::FpMatrix;

// C^0 = A, C^1 = A^n, C^2 = A^m. Delta acts on Hom(M_0, A), which is C^0
// here even though it is sometimes written as a space of 1-chains.
struct ChainData {
    std::size_t n = 0, m = 0, dim = 0;
    FpMatrix d0;         // (n dim) x dim, block i = I - rho(g_i)
    FpMatrix d1;         // (m dim) x (n dim), block (i,j) = rho(dR_i/dg_j)
    FpMatrix laplacian0; // rho(sum 2 - g_i - g_i^{-1})
    FpMatrix adjoint_d0; // dim x (n dim), pairing adjoint of d0
};

struct CohomologyResult {
    std::size_t h1 = 0;
    std::size_t omega1 = 0;
    std::size_t delta0 = 0;
    std::size_t h0 = 0;
    bool operator==(const CohomologyResult&) const = default;
};

struct Options {
    std::size_t max_dim = congruence::kDefaultMaxDim;
    bool check_invariants = true;
    // Omega^1 through an explicit Subspace intersection instead of a stacked kernel.
    bool explicit_intersection = false;
};

// rho(x) for x in Z[F]; words are evaluated through a prefix cache.
FpMatrix evaluate(const group::FreeRingElement& x, const GammaModule& mod);
// Several elements sharing one prefix cache.
std::vector<FpMatrix> evaluate_all(const std::vector<group::FreeRingElement>& xs, const GammaModule& mod);

// Pairing adjoint P^{-1} B^T P of a block B; identity pairing when absent.
FpMatrix pairing_adjoint(const FpMatrix& block, const GammaModule& mod);

ChainData build_chain(const group::GroupPresentation& pres, const GammaModule& mod, const Options& opt = {});

CohomologyResult cohomology_dims(const group::GroupPresentation& pres, const GammaModule& mod, const Options& opt = {});
CohomologyResult cohomology_dims(const ChainData& chain, const Options& opt = {});

// H^1 of the preimage of sub, via the induction formula.
CohomologyResult h1_of_subgroup(const group::GroupPresentation& pres, const congruence::CongruenceMap& hom,
                                const congruence::SubgroupSpec& sub, const Options& opt = {});

inline constexpr std::uint64_t kOracleCap = 10000000;

// Enumerates all maps generators -> A, keeps those whose cocycle extension
// kills every relator, and divides out principal cocycles.
std::size_t brute_force_h1_oracle(const group::GroupPresentation& pres, const GammaModule& mod);

// n minus the F_p-rank of the exponent-sum matrix.
std::size_t abelianization_h1_oracle(const group::GroupPresentation& pres, std::uint32_t p);

} // namespace fpcoh::cohomology
