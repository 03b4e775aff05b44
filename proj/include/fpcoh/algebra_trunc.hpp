#pragma once
// Degree-filtered truncations of F_p[[G(p)]] realized in finite quotients,
// and the lowest-degree coverage check for an operator's image.
#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpcoh/congruence.hpp"
#include "fpcoh/fp_linalg.hpp"
#include "fpcoh/group_core.hpp"

namespace fpcoh::trunc {

using congruence::GammaModule;
using linalg::FpMatrix;

// Coordinates of a module adapted to a filtration: coordinate c has degree
// degree[c] and belongs to free-basis block block[c].
struct GradedLayout {
    int n = 0; // truncation degree; every degree is <= n
    std::vector<std::string> block_labels;
    std::vector<int> degree;
    std::vector<std::uint32_t> block;
    std::size_t n_blocks() const { return block_labels.size(); }
};

struct FilteredModule {
    GammaModule base;
    std::vector<linalg::Subspace> filtration; // F^0 .. F^{n+1}
    int trunc_degree = 0;
    std::optional<GradedLayout> layout;

    // dim F^i / F^{i+1} for i = 0..n.
    std::vector<std::size_t> graded_dims() const;
    // dim F^0 / F^{n+1}.
    std::size_t truncated_dim() const;
};

// F^{i+1} = span of (1-u) F^i over u in subgroup_gens, up to i = n.
// Throws ValidationError if the chain stalls at a nonzero term.
FilteredModule augmentation_filtration(const GammaModule& mod, const std::vector<FpMatrix>& subgroup_gens, int n);

// Smallest m with p^{m-1} > n: elements of G(p^m) are p^{m-1}-th powers in
// G(p), so they are congruent to 1 modulo I^{p^{m-1}} and F_p[G(p)/G(p^m)]
// then carries the degree <= n truncation.
int minimal_working_level(std::uint32_t p, int n);

// Monomials z^alpha in z_i = 1 - u_i for u1 = [[1,p],[0,1]],
// u2 = diag(1+p, (1+p)^{-1}), u3 = [[1,0],[p,1]], ordered by degree.
std::vector<std::array<int, 3>> monomials(int n);

class TruncatedAlgebra {
public:
    struct Impl;

    std::uint32_t p() const;
    int m() const;
    int n() const;
    std::size_t group_order() const; // |G(p)/G(p^m)|
    const std::vector<std::array<int, 3>>& basis() const;
    // dim I^i for i = 0..n+1.
    const std::vector<std::size_t>& ideal_dims() const;
    // Element of G(p)/G(p^m) as an index, or nullopt if h is not = 1 mod p.
    std::optional<std::uint32_t> index_of(const congruence::Mat2& h) const;
    // Left multiplication by element h in the monomial basis of A / I^{n+1}.
    FpMatrix left_mult(std::uint32_t h) const;

    std::shared_ptr<const Impl> impl;
};

// Validates the monomial basis: dim I^i / I^{i+1} equals the number of
// degree-i monomials for every i <= n. Throws ValidationError (advising a
// larger m) otherwise.
TruncatedAlgebra build_truncated_algebra(std::uint32_t p, int m, int n);

// V^{<=n} = (F_p[[G]] / I^{n+1}) (x) Sym^d with G acting through hom_p on
// the left factor and through hom_pbar mod p on Sym^d. Coordinates are
// (coset j, Sym basis k, monomial beta); blocks are (j, k).
struct TruncatedModule {
    FilteredModule fm;
    int d = 0;
    std::size_t n_cosets = 0;
    std::size_t n_monomials = 0;
};

TruncatedModule truncated_module(const group::GroupPresentation& pres, const congruence::CongruenceMap& hom_p,
                                 const congruence::CongruenceMap& hom_pbar, int d, const TruncatedAlgebra& alg);

struct CoverageEntry {
    std::string label;
    bool found = false;
    int witness_degree = -1;
};

struct CoverageReport {
    int n = 0;
    std::size_t image_rank = 0;
    std::vector<std::size_t> leading_ranks; // rank of the degree-delta leading parts
    std::vector<CoverageEntry> entries;
    // "pass": every block covered. "fail": nothing in the image at all.
    // "inconclusive": the image is nonzero but some block has no witness up
    // to degree n, so a deeper truncation may still find one.
    std::string status;
    std::size_t covered() const;
};

// Coverage for the column space of op, whose rows follow layout.
CoverageReport lowest_degree_coverage(const FpMatrix& op, const GradedLayout& layout);
// op_element evaluated on fm.base; fm must carry a layout.
CoverageReport lowest_degree_coverage(const FilteredModule& fm, const group::FreeRingElement& op_element);

// [d0 | d1*] : C^0 + C^2 -> C^1 with d1* block (j, r) = rho(conj(dR_r/dg_j)),
// the transpose-side of the stacked operator whose kernel is Omega^1.
FpMatrix stacked_adjoint_operator(const group::GroupPresentation& pres, const GammaModule& mod);
// Layout of C^1 = V^n: blocks (generator, j, k).
GradedLayout cochain1_layout(const GradedLayout& v, std::size_t n_generators);

struct OperatorRun {
    std::string op; // "laplacian" or "boundary+coboundary"
    int d = 0;
    CoverageReport coverage;
};

struct WeightHypothesisReport {
    std::uint32_t p = 0;
    int n = 0;
    int m = 0;
    std::string status; // pass / fail / inconclusive / partial
    std::vector<std::size_t> graded_dims;
    std::size_t n_cosets = 0;
    std::vector<OperatorRun> runs;
    std::vector<std::string> notes;
};

// For d = 0..max_d: builds V^{<=n}, checks the relators on it, and runs the
// coverage test for the Laplacian and the stacked operator. hom_p must have
// level >= minimal_working_level(p, n). Without hom_pbar the d-loop is
// skipped and the report is partial.
WeightHypothesisReport verify_weight_hypothesis(const group::GroupPresentation& pres,
                                                const congruence::CongruenceMap& hom_p,
                                                const std::optional<congruence::CongruenceMap>& hom_pbar, int n,
                                                int max_d = 2, bool parallel = true);

} // namespace fpcoh::trunc
