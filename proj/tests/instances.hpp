#pragma once
// Small presentations and modules shared by the unit tests and the
// acceptance runner.
#include <string>
#include <vector>

#include "fpcoh/congruence.hpp"
#include "fpcoh/group_core.hpp"

namespace fpcoh::testing {

struct Instance {
    std::string name;
    group::GroupPresentation pres;
    congruence::GammaModule mod;
};

// Module on F_p[Z/n] where generator i shifts by shift[i].
inline congruence::GammaModule cyclic_module(linalg::Residue p, std::uint32_t n, const std::vector<std::uint32_t>& shift)
{
    std::vector<std::vector<std::uint32_t>> perms, inv;
    for (auto s : shift) {
        std::vector<std::uint32_t> f(n), b(n);
        for (std::uint32_t x = 0; x < n; ++x) {
            f[x] = (x + s) % n;
            b[x] = (x + n - s % n) % n;
        }
        perms.push_back(f);
        inv.push_back(b);
    }
    return congruence::permutation_module(p, perms, inv);
}

// Regular module of Z/n x Z/n, generator 0 moving the first coordinate and
// generator 1 the second.
inline congruence::GammaModule torus_module(linalg::Residue p, std::uint32_t n)
{
    std::vector<std::vector<std::uint32_t>> perms(2, std::vector<std::uint32_t>(n * n)), inv = perms;
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y) {
            perms[0][x * n + y] = ((x + 1) % n) * n + y;
            inv[0][x * n + y] = ((x + n - 1) % n) * n + y;
            perms[1][x * n + y] = x * n + (y + 1) % n;
            inv[1][x * n + y] = x * n + (y + n - 1) % n;
        }
    return congruence::permutation_module(p, perms, inv);
}

// Dihedral group of order 2n as <r, s | r^n, s^2, srsr>, acting on the n
// vertices of the polygon.
inline congruence::GammaModule dihedral_vertices(linalg::Residue p, std::uint32_t n)
{
    std::vector<std::uint32_t> r(n), ri(n), s(n);
    for (std::uint32_t x = 0; x < n; ++x) {
        r[x] = (x + 1) % n;
        ri[x] = (x + n - 1) % n;
        s[x] = (n - x) % n;
    }
    return congruence::permutation_module(p, {r, s}, {ri, s});
}

inline std::string power(char c, int n)
{
    return std::string(static_cast<std::size_t>(n), c);
}

inline std::vector<Instance> oracle_instances()
{
    using group::make_presentation;
    using congruence::trivial_module;
    std::vector<Instance> out;
    auto f1 = make_presentation(1, {}, "F1");
    auto f2 = make_presentation(2, {}, "F2");
    auto z2 = make_presentation(2, {"abAB"}, "Z^2");
    auto c2 = make_presentation(1, {"aa"}, "Z/2");
    auto c3 = make_presentation(1, {"aaa"}, "Z/3");
    auto d3 = make_presentation(2, {"aaa", "bb", "baba"}, "D3");
    auto d4 = make_presentation(2, {"aaaa", "bb", "baba"}, "D4");
    auto d5 = make_presentation(2, {"aaaaa", "bb", "baba"}, "D5");
    for (linalg::Residue p : {2u, 3u, 5u}) {
        std::string s = " F_" + std::to_string(p);
        out.push_back({"F1 trivial" + s, f1, trivial_module(p, 1)});
        out.push_back({"F2 trivial" + s, f2, trivial_module(p, 2)});
        out.push_back({"Z^2 trivial" + s, z2, trivial_module(p, 2)});
        out.push_back({"Z/2 trivial" + s, c2, trivial_module(p, 1)});
        out.push_back({"Z/3 trivial" + s, c3, trivial_module(p, 1)});
        out.push_back({"D3 trivial" + s, d3, trivial_module(p, 2)});
        out.push_back({"D4 trivial" + s, d4, trivial_module(p, 2)});
    }
    for (linalg::Residue p : {2u, 3u}) {
        std::string s = " F_" + std::to_string(p);
        out.push_back({"F1 on Z/3" + s, f1, cyclic_module(p, 3, {1})});
        out.push_back({"F2 on Z/3" + s, f2, cyclic_module(p, 3, {1, 2})});
        out.push_back({"Z^2 on Z/3" + s, z2, cyclic_module(p, 3, {1, 1})});
        out.push_back({"Z^2 on Z/2 x Z/2" + s, z2, torus_module(p, 2)});
        out.push_back({"Z/3 regular" + s, c3, cyclic_module(p, 3, {1})});
        out.push_back({"Z/2 regular" + s, c2, cyclic_module(p, 2, {1})});
        out.push_back({"D3 on triangle" + s, d3, dihedral_vertices(p, 3)});
        out.push_back({"D4 on square" + s, d4, dihedral_vertices(p, 4)});
        out.push_back({"D5 on pentagon" + s, d5, dihedral_vertices(p, 5)});
    }
    return out;
}

struct NormalPair {
    std::string name;
    group::GroupPresentation pres;
    linalg::Residue p;
    std::vector<std::uint32_t> phi; // G -> Z/p on generators; N is its kernel
};

inline std::vector<NormalPair> pnormal_pairs()
{
    using group::make_presentation;
    auto f2 = make_presentation(2, {}, "F2");
    auto f3 = make_presentation(3, {}, "F3");
    auto z2 = make_presentation(2, {"abAB"}, "Z^2");
    auto z3 = make_presentation(3, {"abAB", "acAC", "bcBC"}, "Z^3");
    auto surf = make_presentation(4, {"abABcdCD"}, "genus 2");
    auto fig8 = make_presentation(2, {"XyxYxyXYxY"}, "figure-eight", "xy");
    std::vector<NormalPair> out;
    for (linalg::Residue p : {2u, 3u, 5u}) {
        out.push_back({"F2", f2, p, {1, 0}});
        out.push_back({"F3", f3, p, {1, 1, 0}});
        out.push_back({"Z^2", z2, p, {0, 1}});
        out.push_back({"Z^3", z3, p, {1, 2 % p, 0}});
        out.push_back({"genus 2", surf, p, {1, 0, 0, 1}});
        out.push_back({"figure-eight", fig8, p, {1, 1}});
        auto c = make_presentation(1, {power('a', static_cast<int>(p))}, "Z/" + std::to_string(p));
        out.push_back({c.label, c, p, {1}});
    }
    return out;
}

} // namespace fpcoh::testing
