#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "fpcoh/algebra_trunc.hpp"
#include "fpcoh/corpus.hpp"
#include "fpcoh/errors.hpp"

using namespace fpcoh;
using namespace fpcoh::trunc;
using congruence::Mat2;

namespace {

std::size_t binom(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Left multiplication by fixed matrices on the cosets of principal(k) in the
// image of hom.
std::vector<FpMatrix> left_actions(const congruence::CongruenceMap& hom, const std::vector<Mat2>& elts)
{
    auto sub = congruence::SubgroupSpec::principal(hom.k);
    auto cs = congruence::enumerate_cosets(hom, sub);
    std::map<congruence::CosetKey, std::uint32_t> index;
    for (std::uint32_t i = 0; i < cs.size(); ++i) index[congruence::coset_label(sub, cs.reps[i], hom.p, hom.modulus)] = i;
    std::vector<FpMatrix> out;
    for (const auto& u : elts) {
        std::vector<std::uint32_t> perm(cs.size());
        for (std::uint32_t i = 0; i < cs.size(); ++i)
            perm[i] = index.at(congruence::coset_label(sub, congruence::mat_mul(u, cs.reps[i], hom.modulus), hom.p, hom.modulus));
        out.push_back(congruence::permutation_matrix(hom.p, perm));
    }
    return out;
}

std::vector<Mat2> level_one_generators(std::uint64_t p, std::uint64_t n)
{
    std::uint64_t a = 1 + p;
    return {Mat2{1, p, 0, 1}, Mat2{a, 0, 0, congruence::inv_mod_n(a, n)}, Mat2{1, 0, p, 1}};
}

struct Setup {
    survey::CorpusEntry e = survey::load_corpus(std::string(FPCOH_CORPUS_DIR) + "/corpus.json").at(0);
    congruence::CongruenceMap hom_p, hom_pbar;
    Setup()
    {
        REQUIRE(e.label == "SL2(O-2)");
        auto roots = survey::degree_one_roots(e, 3);
        hom_p = survey::entry_map(e, 3, roots[0], 3);
        hom_pbar = survey::entry_map(e, 3, roots[1], 1);
    }
};

} // namespace

TEST_CASE("working level and monomials")
{
    CHECK(minimal_working_level(3, 1) == 2);
    CHECK(minimal_working_level(3, 2) == 2);
    CHECK(minimal_working_level(3, 3) == 3);
    CHECK(minimal_working_level(3, 4) == 3);
    CHECK(minimal_working_level(3, 9) == 4);
    CHECK(minimal_working_level(5, 4) == 2);
    auto mons = monomials(4);
    CHECK(mons.size() == 35);
    for (std::size_t i = 1; i < mons.size(); ++i) {
        int a = mons[i - 1][0] + mons[i - 1][1] + mons[i - 1][2];
        int b = mons[i][0] + mons[i][1] + mons[i][2];
        CHECK(a <= b);
    }
}

TEST_CASE("truncated algebra dimensions")
{
    for (auto [p, n] : {std::pair{3u, 4}, std::pair{3u, 2}, std::pair{5u, 4}}) {
        int m = minimal_working_level(p, n);
        auto alg = build_truncated_algebra(p, m, n);
        CHECK(alg.group_order() == static_cast<std::size_t>(std::pow(p, 3 * (m - 1))));
        const auto& dims = alg.ideal_dims();
        REQUIRE(dims.size() == static_cast<std::size_t>(n + 2));
        for (int i = 0; i <= n; ++i) CHECK(dims[i] - dims[i + 1] == binom(i + 2, 2));
    }
    CHECK_THROWS_AS(build_truncated_algebra(3, 2, 4), ValidationError);
}

TEST_CASE("filtration of the trivial module")
{
    auto triv = congruence::trivial_module(3, 1);
    auto fm = augmentation_filtration(triv, {FpMatrix::identity(3, 1)}, 3);
    CHECK(fm.filtration.at(1).dim() == 0);
    CHECK(fm.graded_dims() == std::vector<std::size_t>{1, 0, 0, 0});
}

TEST_CASE("filtration of the level-two coset module")
{
    Setup s;
    auto hom9 = s.hom_p.reduce_to(2);
    auto mod = congruence::coset_module(hom9, congruence::SubgroupSpec::principal(2));
    REQUIRE(mod.dim == 648);
    auto fm = augmentation_filtration(mod, left_actions(hom9, level_one_generators(3, 9)), 1);
    auto g = fm.graded_dims();
    CHECK(g[0] == 24);
    CHECK(g[1] == 72);
    CHECK(g[0] + g[1] == fm.truncated_dim());
}

TEST_CASE("truncated module dimension identity")
{
    Setup s;
    auto alg = build_truncated_algebra(3, 3, 4);
    for (int d = 0; d <= 2; ++d) {
        auto tm = truncated_module(s.e.presentation, s.hom_p, s.hom_pbar, d, alg);
        std::size_t sym = static_cast<std::size_t>(d + 1);
        CHECK(tm.n_cosets == 24);
        CHECK(tm.fm.base.dim == 24 * 35 * sym);
        auto g = tm.fm.graded_dims();
        std::size_t total = 0;
        for (int i = 0; i <= 4; ++i) {
            CHECK(g[i] == 24 * binom(i + 2, 2) * sym);
            total += g[i];
        }
        CHECK(total == tm.fm.truncated_dim());
        REQUIRE(tm.fm.layout);
        CHECK(tm.fm.layout->n_blocks() == 24 * sym);
    }
}

TEST_CASE("coverage of trivial operators")
{
    GradedLayout lay;
    lay.n = 2;
    for (std::uint32_t b = 0; b < 3; ++b) {
        lay.block_labels.push_back("b" + std::to_string(b));
        for (int deg : {0, 1, 1, 2}) {
            lay.degree.push_back(deg);
            lay.block.push_back(b);
        }
    }
    auto id = lowest_degree_coverage(FpMatrix::identity(3, 12), lay);
    CHECK(id.status == "pass");
    for (const auto& e : id.entries) CHECK(e.witness_degree == 0);
    auto zero = lowest_degree_coverage(FpMatrix(3, 12, 12), lay);
    CHECK(zero.status == "fail");
    CHECK(zero.covered() == 0);

    // Image spanned by b0 + b1 in degree 0 and b2 in degree 1.
    FpMatrix op(3, 12, 2);
    op.set(0, 0, 1);
    op.set(4, 0, 1);
    op.set(9, 1, 1);
    auto part = lowest_degree_coverage(op, lay);
    CHECK(part.status == "inconclusive");
    CHECK_FALSE(part.entries[0].found);
    CHECK_FALSE(part.entries[1].found);
    CHECK(part.entries[2].found);
    CHECK(part.entries[2].witness_degree == 1);
}

TEST_CASE("coverage is monotone in the truncation degree")
{
    Setup s;
    auto alg3 = build_truncated_algebra(3, 3, 3);
    auto alg4 = build_truncated_algebra(3, 3, 4);
    auto lap = group::laplacian_element(s.e.presentation);
    for (int d : {1, 2}) {
        auto c3 = lowest_degree_coverage(truncated_module(s.e.presentation, s.hom_p, s.hom_pbar, d, alg3).fm, lap);
        auto c4 = lowest_degree_coverage(truncated_module(s.e.presentation, s.hom_p, s.hom_pbar, d, alg4).fm, lap);
        REQUIRE(c3.entries.size() == c4.entries.size());
        for (std::size_t i = 0; i < c3.entries.size(); ++i) {
            if (!c3.entries[i].found) continue;
            CHECK(c4.entries[i].found);
            CHECK(c4.entries[i].witness_degree <= c3.entries[i].witness_degree);
        }
        for (const auto& e : c4.entries)
            if (e.found) CHECK(e.witness_degree <= 4);
    }
}

TEST_CASE("weight hypothesis plumbing")
{
    Setup s;
    auto partial = verify_weight_hypothesis(s.e.presentation, s.hom_p, std::nullopt, 2, 2, false);
    CHECK(partial.status == "partial");
    CHECK(partial.runs.empty());

    auto zero = lowest_degree_coverage(
        truncated_module(s.e.presentation, s.hom_p, s.hom_pbar, 1, build_truncated_algebra(3, 3, 2)).fm,
        group::FreeRingElement());
    CHECK(zero.status == "fail");
    CHECK(zero.covered() == 0);

    // n = 1 is too shallow to find every witness.
    auto shallow = verify_weight_hypothesis(s.e.presentation, s.hom_p.reduce_to(2), s.hom_pbar, 1);
    CHECK(shallow.status == "inconclusive");
    CHECK_THROWS_AS(verify_weight_hypothesis(s.e.presentation, s.hom_p.reduce_to(2), s.hom_pbar, 4), ValidationError);
}

TEST_CASE("stacked operator shape")
{
    Setup s;
    auto mod = congruence::coset_module(s.hom_p.reduce_to(1), congruence::SubgroupSpec::principal(1));
    auto T = stacked_adjoint_operator(s.e.presentation, mod);
    CHECK(T.rows() == 3 * 24);
    CHECK(T.cols() == 24 + 6 * 24);
    // the column span is the orthogonal complement of Omega^1 = 5
    CHECK(T.rows() - linalg::rank(T) == 5);
}
