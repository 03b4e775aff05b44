#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "fpcoh/errors.hpp"
#include "fpcoh/f3_bits.hpp"
#include "fpcoh/fp_linalg.hpp"

using namespace fpcoh::linalg;

namespace {

FpMatrix random_matrix(Residue p, std::size_t r, std::size_t c, double fill, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<std::int64_t> v(1, p - 1);
    FpMatrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (u(rng) < fill) m.set(i, j, v(rng));
    return m;
}

// Rank by enumerating the row space, for tiny matrices only.
std::size_t brute_rank(const FpMatrix& m)
{
    Residue p = m.p();
    std::size_t n = m.rows(), c = m.cols();
    std::set<std::vector<Residue>> span;
    std::vector<Residue> coef(n, 0);
    for (;;) {
        std::vector<Residue> v(c, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < c; ++j) v[j] = (v[j] + coef[i] * m.get(i, j)) % p;
        span.insert(v);
        std::size_t i = 0;
        while (i < n && ++coef[i] == p) coef[i++] = 0;
        if (i == n) break;
    }
    std::size_t r = 0, s = span.size();
    while (s > 1) {
        s /= p;
        ++r;
    }
    return r;
}

} // namespace

TEST_CASE("rank examples")
{
    CHECK(rank(FpMatrix::identity(5, 3)) == 3);
    CHECK(rank(FpMatrix(3, 4, 7)) == 0);
    CHECK(rank(FpMatrix::from_dense(5, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples")
{
    CHECK(kernel(FpMatrix::identity(7, 4)).dim() == 0);
    CHECK(kernel(FpMatrix(3, 5, 5)).dim() == 5);
    auto k = kernel(FpMatrix::from_dense(2, {{1, 1, 1}}));
    CHECK(k.dim() == 2);
    for (const auto& row : k.basis()) {
        Residue s = 0;
        for (const auto& e : row) s += e.val;
        CHECK(s % 2 == 0);
    }
}

TEST_CASE("intersection examples")
{
    auto b = Subspace::from_rows(3, 2, {{{0, 1}, {1, 2}}});
    CHECK(intersect(Subspace::full(3, 2), b) == b);
    auto l1 = Subspace::from_rows(3, 2, {{{0, 1}}});
    auto l2 = Subspace::from_rows(3, 2, {{{0, 1}, {1, 1}}});
    CHECK(intersect(l1, l2).dim() == 0);
    auto a = Subspace::from_rows(5, 3, {{{0, 1}}, {{1, 1}}});
    auto c = Subspace::from_rows(5, 3, {{{1, 1}}, {{2, 1}}});
    auto x = intersect(a, c);
    REQUIRE(x.dim() == 1);
    CHECK(x.basis()[0] == SparseRow{{1, 1}});
}

TEST_CASE("image examples")
{
    CHECK(image(FpMatrix::identity(3, 4)).dim() == 4);
    CHECK(image(FpMatrix(3, 4, 4)).dim() == 0);
    auto im = image(FpMatrix::from_dense(2, {{1, 0}, {1, 0}}));
    REQUIRE(im.dim() == 1);
    CHECK(im.basis()[0] == SparseRow{{0, 1}, {1, 1}});
}

TEST_CASE("rank agrees with enumeration of the row space")
{
    std::mt19937_64 rng(17);
    for (Residue p : {2u, 3u, 5u})
        for (int t = 0; t < 30; ++t) {
            auto m = random_matrix(p, 1 + rng() % 4, 1 + rng() % 5, 0.5, rng);
            CHECK(rank(m) == brute_rank(m));
        }
}

TEST_CASE("rank-nullity and dense/sparse agreement")
{
    std::mt19937_64 rng(5);
    for (Residue p : {2u, 3u, 7u})
        for (int t = 0; t < 20; ++t) {
            std::size_t r = 1 + rng() % 40, c = 1 + rng() % 40;
            auto m = random_matrix(p, r, c, t % 2 ? 0.05 : 0.6, rng);
            CHECK(rank(m) + nullity(m) == c);
            CHECK(dense_rank(m) == sparse_rank(m));
            CHECK(rank(m) == rank(m.transpose()));
            auto k = kernel(m);
            for (const auto& row : k.basis()) {
                std::vector<Residue> x(c, 0);
                for (const auto& e : row) x[e.col] = e.val;
                for (auto y : m.apply(x)) CHECK(y == 0);
            }
        }
}

TEST_CASE("subspace sum and intersection dimensions")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        auto a = row_space(random_matrix(3, 4, 8, 0.4, rng));
        auto b = row_space(random_matrix(3, 5, 8, 0.4, rng));
        CHECK(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
        auto both = intersect(a, b);
        for (const auto& v : both.basis()) {
            CHECK(a.contains(v));
            CHECK(b.contains(v));
        }
    }
}

TEST_CASE("F3 word addition on every pair")
{
    for (Residue x = 0; x < 3; ++x)
        for (Residue y = 0; y < 3; ++y) {
            std::uint64_t z1, z2;
            f3_add_word(x == 1, x == 2, y == 1, y == 2, z1, z2);
            Residue z = (x + y) % 3;
            CHECK(z1 == (z == 1 ? 1u : 0u));
            CHECK(z2 == (z == 2 ? 1u : 0u));
        }
}

TEST_CASE("F3Vec matches GFVec")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + rng() % 150;
        F3Vec a(n), b(n);
        GFVec ga(n, 3), gb(n, 3);
        for (std::size_t i = 0; i < n; ++i) {
            Residue x = rng() % 3, y = rng() % 3;
            a.set(i, x);
            ga.set(i, x);
            b.set(i, y);
            gb.set(i, y);
        }
        Residue c = rng() % 3;
        a.axpy(c, b);
        ga.axpy(c, gb);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(a.get(i) == ga.get(i));
        CHECK(a.leading(0) == ga.leading(0));
    }
}

TEST_CASE("dense echelon rank matches sparse rank")
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        auto m = random_matrix(3, 30, 70, 0.3, rng);
        DenseEchelon<F3Vec> e3(3, 70);
        DenseEchelon<GFVec> eg(3, 70);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            e3.insert(dense_from_sparse<F3Vec>(m.row(i), 70, 3));
            eg.insert(dense_from_sparse<GFVec>(m.row(i), 70, 3));
        }
        CHECK(e3.rank() == rank(m));
        CHECK(eg.rank() == rank(m));
        e3.make_reduced();
        auto rows = e3.sorted_rows();
        std::vector<SparseRow> sparse;
        for (auto* r : rows) sparse.push_back(sparse_from_dense(*r));
        CHECK(Subspace::from_reduced(3, 70, sparse) == row_space(m));
    }
}

TEST_CASE("from_reduced rejects rows that are not reduced")
{
    CHECK_THROWS_AS(Subspace::from_reduced(3, 2, {{{0, 1}, {1, 1}}, {{1, 1}}}), fpcoh::ValidationError);
}
