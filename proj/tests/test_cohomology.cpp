#include <catch_amalgamated.hpp>

#include "fpcoh/cohomology.hpp"
#include "fpcoh/corpus.hpp"
#include "fpcoh/errors.hpp"
#include "instances.hpp"

using namespace fpcoh;
using namespace fpcoh::cohomology;
using congruence::trivial_module;

TEST_CASE("chain examples")
{
    auto f2 = group::make_presentation(2, {}, "F2");
    auto c = build_chain(f2, trivial_module(5, 2));
    CHECK(c.d0.rows() == 2);
    CHECK(c.d0.cols() == 1);
    CHECK(c.d0.is_zero());
    CHECK(c.m == 0);

    auto c2 = group::make_presentation(1, {"aa"}, "Z/2");
    auto cc = build_chain(c2, trivial_module(2, 1));
    CHECK(cc.d0.is_zero());
    CHECK(cc.d1.rows() == 1);
    CHECK(cc.d1.is_zero());

    auto z2 = group::make_presentation(2, {"abAB"}, "Z^2");
    auto ct = build_chain(z2, testing::torus_module(3, 3));
    CHECK((ct.d1 * ct.d0).is_zero());
    CHECK(ct.adjoint_d0 * ct.d0 == ct.laplacian0);
}

TEST_CASE("h1 examples")
{
    auto f2 = group::make_presentation(2, {}, "F2");
    auto z2 = group::make_presentation(2, {"abAB"}, "Z^2");
    auto fig8 = group::make_presentation(2, {"XyxYxyXYxY"}, "figure-eight", "xy");
    for (linalg::Residue p : {2u, 3u, 5u, 7u}) {
        CHECK(cohomology_dims(f2, trivial_module(p, 2)).h1 == 2);
        CHECK(cohomology_dims(z2, trivial_module(p, 2)).h1 == 2);
        CHECK(cohomology_dims(fig8, trivial_module(p, 2)).h1 == 1);
        CHECK(abelianization_h1_oracle(fig8, p) == 1);
    }
    // every finite-index subgroup of Z^2 is Z^2
    CHECK(cohomology_dims(z2, testing::torus_module(3, 3)).h1 == 2);
    CHECK(brute_force_h1_oracle(z2, testing::torus_module(2, 2)) == 2);
    // 3^18 cochains: past the oracle's enumeration cap
    CHECK_THROWS_AS(brute_force_h1_oracle(z2, testing::torus_module(3, 3)), ResourceError);
}

TEST_CASE("oracle examples")
{
    auto f2 = group::make_presentation(2, {}, "F2");
    CHECK(brute_force_h1_oracle(f2, trivial_module(3, 2)) == 2);
    CHECK(brute_force_h1_oracle(group::make_presentation(2, {"abAB"}, "Z^2"), trivial_module(3, 2)) == 2);
    CHECK(brute_force_h1_oracle(group::make_presentation(1, {"aa"}, "Z/2"), trivial_module(2, 1)) == 1);
    CHECK(abelianization_h1_oracle(group::make_presentation(3, {}, "F3"), 5) == 3);
    CHECK(abelianization_h1_oracle(group::make_presentation(1, {"aaa"}, "Z/3"), 3) == 1);
    CHECK(abelianization_h1_oracle(group::make_presentation(1, {"aaa"}, "Z/3"), 2) == 0);
    CHECK_THROWS_AS(brute_force_h1_oracle(f2, trivial_module(3, 3)), ValidationError);
}

TEST_CASE("h1 equals the brute-force oracle")
{
    for (const auto& inst : testing::oracle_instances()) {
        INFO(inst.name);
        auto r = cohomology_dims(inst.pres, inst.mod);
        CHECK(r.h1 == brute_force_h1_oracle(inst.pres, inst.mod));
        Options o;
        o.explicit_intersection = true;
        CHECK(cohomology_dims(inst.pres, inst.mod, o) == r);
    }
}

TEST_CASE("trivial coefficients agree with the abelianization")
{
    for (const auto& inst : testing::oracle_instances()) {
        if (inst.mod.dim != 1) continue;
        INFO(inst.name);
        CHECK(cohomology_dims(inst.pres, inst.mod).h1 == abelianization_h1_oracle(inst.pres, inst.mod.p));
    }
}

TEST_CASE("index-p normal subgroups")
{
    for (const auto& np : testing::pnormal_pairs()) {
        INFO(np.name << " p=" << np.p);
        auto g = cohomology_dims(np.pres, trivial_module(np.p, np.pres.n_generators));
        auto n = cohomology_dims(np.pres, testing::cyclic_module(np.p, np.p, np.phi));
        CHECK(n.h1 <= np.p * g.h1);
    }
}

TEST_CASE("subgroup cohomology through the induction formula")
{
    auto z2 = survey::builtin_entry("Z2");
    auto hom = survey::entry_map(z2, 3, survey::degree_one_roots(z2, 3)[0], 1);
    CHECK(h1_of_subgroup(z2.presentation, hom, congruence::SubgroupSpec::principal(1)).h1 == 2);
    auto full = h1_of_subgroup(z2.presentation, hom, congruence::SubgroupSpec::full());
    CHECK(full == cohomology_dims(z2.presentation, trivial_module(3, 2)));

    // Nielsen-Schreier: a subgroup of index i in F2 is free of rank i + 1.
    auto f2 = survey::builtin_entry("F2");
    for (std::uint32_t p : {3u, 5u}) {
        auto h = survey::entry_map(f2, p, 0, 1);
        for (auto sub : {congruence::SubgroupSpec::principal(1), congruence::SubgroupSpec::borel0(1)}) {
            auto mod = congruence::coset_module(h, sub);
            CHECK(cohomology_dims(f2.presentation, mod).h1 == mod.dim + 1);
        }
    }
}

TEST_CASE("corpus complexes and the approximation bound")
{
    auto corpus = survey::load_corpus(std::string(FPCOH_CORPUS_DIR) + "/corpus.json");
    for (const auto& e : corpus) {
        INFO(e.label);
        for (const auto& r : e.presentation.relators) CHECK(group::fox_fundamental_identity(r, e.presentation.n_generators));
        for (std::uint32_t p : {3u, 5u, 7u}) {
            auto roots = survey::degree_one_roots(e, p);
            if (roots.empty()) continue;
            auto hom = survey::entry_map(e, p, roots[0], 1);
            for (auto sub : {congruence::SubgroupSpec::full(), congruence::SubgroupSpec::borel0(1)}) {
                auto mod = congruence::coset_module(hom, sub);
                auto c = build_chain(e.presentation, mod);
                CHECK((c.d1 * c.d0).is_zero());
                auto r = cohomology_dims(c);
                std::size_t gap = r.h1 > r.omega1 ? r.h1 - r.omega1 : r.omega1 - r.h1;
                CHECK(gap <= r.delta0);
            }
        }
    }
}

TEST_CASE("a module violating a relator is rejected")
{
    auto c3 = group::make_presentation(1, {"aaa"}, "Z/3");
    CHECK_THROWS_AS(cohomology_dims(c3, testing::cyclic_module(3, 2, {1})), ValidationError);
}
