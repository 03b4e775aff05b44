#include <catch_amalgamated.hpp>

#include <random>

#include "fpcoh/errors.hpp"
#include "fpcoh/group_core.hpp"

using namespace fpcoh::group;

namespace {

FreeRingElement w(const std::string& s, std::int64_t c = 1)
{
    return FreeRingElement::from_word(parse_word(s), c);
}

FreeRingElement one()
{
    return FreeRingElement::constant(1);
}

} // namespace

TEST_CASE("words reduce freely")
{
    CHECK(parse_word("aAbB").empty());
    CHECK(parse_word("abBc").to_string() == "ac");
    CHECK((parse_word("ab") * parse_word("Ba")).to_string() == "aa");
    CHECK(parse_word("abC").inverse().to_string() == "cBA");
    CHECK_THROWS_AS(parse_word("a?"), fpcoh::ValidationError);
    CHECK_THROWS_AS(make_presentation(1, {"ab"}, "bad"), fpcoh::ValidationError);
}

TEST_CASE("Fox derivative examples")
{
    CHECK(fox_derivative(parse_word("ab"), 0, 2) == one());
    Word comm = parse_word("abAB");
    CHECK(fox_derivative(comm, 0, 2) == one() - w("abA"));
    CHECK(fox_derivative(comm, 1, 2) == w("a") - w("abAB"));
    CHECK(fox_derivative(parse_word("aa"), 0, 1) == one() + w("a"));
    CHECK(fox_derivative(parse_word("A"), 0, 1) == w("A", -1));
}

TEST_CASE("boundary data examples")
{
    auto f2 = make_presentation(2, {}, "F2");
    auto bd = boundary_data(f2);
    CHECK(bd.d1.empty());
    REQUIRE(bd.d0.size() == 2);
    CHECK(bd.d0[0] == one() - w("a"));
    CHECK(bd.d0[1] == one() - w("b"));

    auto z2 = make_presentation(2, {"abAB"}, "Z2");
    auto bz = boundary_data(z2);
    REQUIRE(bz.d1.size() == 1);
    CHECK(bz.d1[0][0] == one() - w("abA"));
    CHECK(bz.d1[0][1] == w("a") - w("abAB"));

    auto c2 = make_presentation(1, {"aa"}, "Z/2");
    CHECK(boundary_data(c2).d1[0][0] == one() + w("a"));
}

TEST_CASE("Laplacian element examples")
{
    auto p1 = make_presentation(1, {}, "Z");
    CHECK(laplacian_element(p1) == FreeRingElement::constant(2) - w("a") - w("A"));
    auto p2 = make_presentation(2, {}, "F2");
    CHECK(laplacian_element(p2) == FreeRingElement::constant(4) - w("a") - w("A") - w("b") - w("B"));
    for (std::size_t n = 1; n <= 4; ++n) {
        auto p = make_presentation(n, {}, "F");
        CHECK(laplacian_element(p) == laplacian_element_alt(p));
    }
}

TEST_CASE("fundamental identity on random words")
{
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 1 + rng() % 4;
        std::vector<Letter> raw;
        std::size_t len = rng() % 14;
        for (std::size_t i = 0; i < len; ++i)
            raw.push_back({static_cast<std::uint32_t>(rng() % n), rng() % 2 ? 1 : -1});
        Word r(raw);
        REQUIRE(fox_fundamental_identity(r, n));
    }
}

TEST_CASE("ring operations")
{
    auto x = one() - w("a");
    CHECK((x * x) == one() - w("a", 2) + w("aa"));
    CHECK(x.conjugate() == one() - w("A"));
    CHECK((x - x).is_zero());
    CHECK(exponent_sum(parse_word("abAAb"), 0) == -1);
    CHECK(exponent_sum(parse_word("abAAb"), 1) == 2);
}
