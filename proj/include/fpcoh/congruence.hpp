#pragma once
// Reduction of presentations into SL(2, Z/p^k), coset spaces of congruence
// subgroups, and the finite modules built from them.
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpcoh/fp_linalg.hpp"
#include "fpcoh/group_core.hpp"

namespace fpcoh::congruence {

using linalg::FpMatrix;
using linalg::Residue;

// Integer polynomial, coefficients low degree first.
struct IntPoly {
    std::vector<std::int64_t> c;

    static IntPoly parse(const std::string& s);
    int degree() const;
    bool is_monic() const;
    IntPoly derivative() const;
    std::uint64_t eval_mod(std::uint64_t x, std::uint64_t n) const;
    std::string to_string() const;
    bool operator==(const IntPoly&) const = default;
};

struct RingSpec {
    IntPoly min_poly; // O_F ~ Z[x]/(f)
    std::string label;
};

std::uint64_t inv_mod_n(std::uint64_t a, std::uint64_t n);
std::uint64_t ipow(std::uint64_t b, unsigned e);

// Residues a mod p with f(a) = 0; only simple roots when simple_only.
std::vector<std::uint64_t> roots_mod_p(const IntPoly& f, std::uint64_t p, bool simple_only);

// Newton lift of a simple root a1 mod p to a root mod p^k.
std::uint64_t hensel_root(const IntPoly& f, std::uint64_t p, std::uint64_t a1, int k);

struct Mat2 {
    std::uint64_t a = 1, b = 0, c = 0, d = 1;
    bool operator==(const Mat2&) const = default;
    auto operator<=>(const Mat2&) const = default;
};

Mat2 mat_mul(const Mat2& x, const Mat2& y, std::uint64_t n);
Mat2 mat_inv_sl2(const Mat2& x, std::uint64_t n); // adjugate; assumes det 1
std::uint64_t mat_det(const Mat2& x, std::uint64_t n);
Mat2 mat_reduce(const Mat2& x, std::uint64_t n);
Mat2 mat_from(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::uint64_t n);

using PolyMatrix = std::array<IntPoly, 4>; // row-major entries in x

// Homomorphism from the free group on the generators into SL(2, Z/p^k).
struct CongruenceMap {
    std::uint32_t p = 0;
    int k = 0;
    std::uint64_t modulus = 1; // p^k
    std::uint64_t root = 0;    // root of min_poly mod p^k
    std::vector<Mat2> images;

    Mat2 image_of(const group::Word& w) const;
    CongruenceMap reduce_to(int k2) const;
};

CongruenceMap make_congruence_map(const RingSpec& ring, const std::vector<PolyMatrix>& images, std::uint32_t p,
                                  std::uint64_t a1, int k);

// Index of the first relator that does not map to the identity, if any.
std::optional<std::size_t> first_failing_relator(const group::GroupPresentation& pres, const CongruenceMap& hom);
bool validate_presentation(const group::GroupPresentation& pres, const CongruenceMap& hom);

struct SubgroupSpec {
    enum class Kind { Principal, Borel0, H, P, Full };
    Kind kind = Kind::Full;
    int j = 0; // level (Principal, Borel0), k for H and P
    int l = 0; // l for P

    static SubgroupSpec principal(int j) { return {Kind::Principal, j, 0}; }
    static SubgroupSpec borel0(int j) { return {Kind::Borel0, j, 0}; }
    static SubgroupSpec H(int k) { return {Kind::H, k, 1}; }
    static SubgroupSpec P(int k, int l) { return {Kind::P, k, l}; }
    static SubgroupSpec full() { return {Kind::Full, 0, 0}; }
    static SubgroupSpec parse(const std::string& s);

    int level() const; // largest exponent the conditions involve
    void validate(int ambient_k) const;
    std::string to_string() const;
    bool operator==(const SubgroupSpec&) const = default;
};

using CosetKey = std::array<std::uint64_t, 6>;

// Invariant of the left coset gU: equal keys iff h^{-1}g in U.
CosetKey coset_label(const SubgroupSpec& sub, const Mat2& g, std::uint64_t p, std::uint64_t n);
bool subgroup_contains(const SubgroupSpec& sub, const Mat2& g, std::uint64_t p, std::uint64_t n);

struct CosetSpace {
    std::vector<Mat2> reps;
    std::vector<std::vector<std::uint32_t>> perm;     // perm[g][i] = index of g * coset i
    std::vector<std::vector<std::uint32_t>> perm_inv; // same for g^{-1}
    std::size_t size() const { return reps.size(); }
};

inline constexpr std::size_t kDefaultMaxDim = 200000;

// Breadth-first orbit of the identity coset; generators tried in gen_order
// (default 0..n-1).
CosetSpace enumerate_cosets(const CongruenceMap& hom, const SubgroupSpec& sub, std::size_t cap = kDefaultMaxDim,
                            const std::vector<std::size_t>& gen_order = {});

// Order of the subgroup generated by the images, or nullopt past cap.
std::optional<std::uint64_t> generated_order(const CongruenceMap& hom, std::size_t cap);
std::uint64_t sl2_order(std::uint64_t p, int k);

// Finite F_p module with an action per generator.
struct GammaModule {
    Residue p = 2;
    std::size_t dim = 0;
    std::vector<FpMatrix> act;     // rho(g_i)
    std::vector<FpMatrix> act_inv; // rho(g_i^{-1})
    std::optional<FpMatrix> pairing;
    std::string description;

    std::size_t n_generators() const { return act.size(); }
};

FpMatrix kron(const FpMatrix& a, const FpMatrix& b);
FpMatrix word_action(const group::Word& w, const GammaModule& m);
FpMatrix permutation_matrix(Residue p, const std::vector<std::uint32_t>& perm);

GammaModule trivial_module(Residue p, std::size_t n_generators);
GammaModule permutation_module(Residue p, const std::vector<std::vector<std::uint32_t>>& perms,
                               const std::vector<std::vector<std::uint32_t>>& perms_inv);
GammaModule coset_module(const CongruenceMap& hom, const SubgroupSpec& sub, std::size_t cap = kDefaultMaxDim);

// Monomials x^i y^{d-i}, i = 0..d, with x the coordinate dual to e2 and y
// dual to e1; (g.f)(v) = f(g^{-1} v).
FpMatrix sym_matrix(Residue p, int d, const Mat2& g);
FpMatrix sym_pairing(Residue p, int d);
GammaModule sym_module(Residue p, int d, const CongruenceMap& hom);

GammaModule tensor_module(const GammaModule& a, const GammaModule& b);

// Throws ValidationError on a bad module: inverse mismatch, non-invariant
// pairing, or (when pres is given) a relator acting nontrivially.
void check_module(const GammaModule& m, const group::GroupPresentation* pres = nullptr);

} // namespace fpcoh::congruence
