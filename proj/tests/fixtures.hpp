#pragma once

#include <random>
#include <string>

#include "hhcalc/parse.hpp"

// Shared corpus for the test suites. All algebras come through the text
// parser so the front end is exercised on every path.
namespace fixtures {

using namespace hhcalc;

// k[x]/(x^2): one vertex, one degree-0 loop
inline AlgebraInput dual_numbers(uint32_t p = 0) {
    std::string text =
        "[field] q\n"
        "[quiver]\n"
        "vertices 1\n"
        "arrow x 1 1 0\n"
        "relation x.x\n"
        "[trace] degree 0\n"
        "x = 1\n";
    return parse_algebra_text(text, "dual_numbers", p == 0 ? UINT32_MAX : p);
}

// 2-vertex cyclic Nakayama kC2/J^3 with its socle trace
inline AlgebraInput nakayama2(uint32_t p = 0) {
    std::string text =
        "[field] q\n"
        "[quiver]\n"
        "vertices 2\n"
        "arrow a 1 2 0\n"
        "arrow b 2 1 0\n"
        "truncate 3\n"
        "[trace] degree 0\n"
        "a.b = 1\n"
        "b.a = 1\n";
    return parse_algebra_text(text, "nakayama2", p == 0 ? UINT32_MAX : p);
}

// A2 path algebra: 1 -> 2, no relations
inline AlgebraInput a2_path(uint32_t p = 0) {
    std::string text =
        "[field] q\n"
        "[quiver]\n"
        "vertices 2\n"
        "arrow a 1 2 0\n";
    return parse_algebra_text(text, "a2_path", p == 0 ? UINT32_MAX : p);
}

// exterior algebra on one degree -1 generator (graded signs live here)
inline AlgebraInput exterior_deg1() {
    std::string text =
        "[field] q\n"
        "[idempotents] 1\n"
        "[basis]\n"
        "x 1 1 -1\n"
        "[product]\n"
        "x*x = 0\n";
    return parse_algebra_text(text, "exterior");
}

// typical dg example: u in degree -2, v = d(u) in degree -3, zero products
inline AlgebraInput dg_typical() {
    std::string text =
        "[field] q\n"
        "[idempotents] 1\n"
        "[basis]\n"
        "u 1 1 -2\n"
        "v 1 1 -3\n"
        "[product]\n"
        "u*u = 0\n"
        "u*v = 0\n"
        "v*u = 0\n"
        "v*v = 0\n"
        "[differential]\n"
        "u = v\n";
    return parse_algebra_text(text, "dg_typical");
}

// k[x]/(x^2 - 1) with eps(x) = 1: complete over k[x]... not complete as K-ring
inline AlgebraInput group_z2() {
    std::string text =
        "[field] q\n"
        "[idempotents] 1\n"
        "[basis]\n"
        "x 1 1 0\n"
        "[product]\n"
        "x*x = e1\n"
        "[augmentation]\n"
        "x = e1\n";
    return parse_algebra_text(text, "group_z2");
}

// seeded random nilpotent bound quiver algebra (degree 0, J^3 = 0)
inline AlgebraInput random_nilpotent_quiver(uint64_t seed, uint32_t p = 0) {
    std::mt19937_64 rng(seed);
    int verts = 2 + static_cast<int>(rng() % 2);
    int narrows = 2 + static_cast<int>(rng() % 3);
    std::string text = "[field] q\n[quiver]\nvertices " + std::to_string(verts) + "\n";
    for (int i = 0; i < narrows; ++i) {
        int s = 1 + static_cast<int>(rng() % verts);
        int t = 1 + static_cast<int>(rng() % verts);
        text += "arrow r" + std::to_string(i) + " " + std::to_string(s) + " " +
                std::to_string(t) + " 0\n";
    }
    text += "truncate 3\n";
    return parse_algebra_text(text, "random_quiver", p == 0 ? UINT32_MAX : p);
}

inline DgKRing ring_of(const AlgebraInput& in) { return DgKRing::normalize(in.ring); }

}  // namespace fixtures
