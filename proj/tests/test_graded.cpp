#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hhcalc/graded.hpp"

using namespace hhcalc;

namespace {
Scalar q(long n) { return Scalar(n, 0u); }
}

static SpaceRef two_elt_space() {
    // t = 2: x in e2 A e1 degree 0, y in e1 A e2 degree 1
    return make_space(2, 0, {{"x", 1, 0, 0}, {"y", 0, 1, 1}});
}

TEST_CASE("tensor over K respects idempotent composability") {
    auto sp = two_elt_space();
    auto t = tensor_space(sp, sp);
    // x (x) y needs ri(x) = li(y): ri(x)=0, li(y)=0: yes
    // y (x) x: ri(y)=1 = li(x)=1: yes; x (x) x: ri(x)=0 vs li(x)=1: no
    CHECK(t->dim() == 2);
    CHECK(t->pair_index.count({0, 1}) == 1);
    CHECK(t->pair_index.count({1, 0}) == 1);
    CHECK(t->pair_index.count({0, 0}) == 0);

    // dimension formula: dim(M (x) N) = sum_l dim(M e_l) dim(e_l N)
    int total = 0;
    for (int l = 0; l < 2; ++l) {
        int me = 0, en = 0;
        for (const auto& b : sp->basis) {
            if (b.ri == l) ++me;
            if (b.li == l) ++en;
        }
        total += me * en;
    }
    CHECK(total == t->dim());
}

TEST_CASE("K (x) M = M under unit constraint") {
    auto sp = two_elt_space();
    auto k = k_unit_space(2, 0);
    auto t = tensor_space(k, sp);
    CHECK(t->dim() == sp->dim());
}

TEST_CASE("shift composes to identity") {
    auto sp = two_elt_space();
    auto s1 = shift_space(sp, 1);
    CHECK(s1->basis[0].deg == 1);
    auto back = shift_space(s1, -1);
    CHECK(same_space(back, sp));
    CHECK(same_space(shift_space(sp, 0), sp));
}

TEST_CASE("dual space swaps idempotents and negates degrees") {
    auto sp = two_elt_space();
    auto d = dual_space(sp);
    CHECK(d->basis[0].li == 0);
    CHECK(d->basis[0].ri == 1);
    CHECK(d->basis[0].deg == 0);
    CHECK(d->basis[1].deg == -1);
}

TEST_CASE("block map rejects inhomogeneous and idempotent-mismatched entries") {
    auto sp = two_elt_space();
    BlockMap f(sp, sp, 0);
    CHECK_THROWS(f.add(1, 0, q(1)));  // degree mismatch
    f.add(0, 0, q(2));
    CHECK(f.apply(SparseVec{{0, q(3)}}) == SparseVec{{0, q(6)}});
}

TEST_CASE("tensor_map carries the Koszul sign") {
    // V: one odd generator; f = identity on V, g: V -> V of odd degree... use
    // f of degree -1 on a two-term space and check (id (x) f) picks up signs
    auto v = make_space(1, 0, {{"a", 0, 0, 1}, {"b", 0, 0, 0}});
    BlockMap f(v, v, -1);
    f.add(1, 0, q(1));  // f(a) = b
    auto vv = tensor_space(v, v);
    BlockMap idv = identity_map(v);
    BlockMap m = tensor_map(idv, f, vv, vv);
    // (id (x) f)(a (x) a) = (-1)^{|f||a|} a (x) f(a) = -(a (x) b)
    int aa = vv->pair_index.at({0, 0});
    int ab = vv->pair_index.at({0, 1});
    CHECK(m.col(aa) == SparseVec{{ab, q(-1)}});
    // (id (x) f)(b (x) a) = + b (x) b  (|b| even)
    int ba = vv->pair_index.at({1, 0});
    int bb = vv->pair_index.at({1, 1});
    CHECK(m.col(ba) == SparseVec{{bb, q(1)}});
}

TEST_CASE("dual_map convention and composition") {
    auto v = make_space(1, 0, {{"a", 0, 0, 1}, {"b", 0, 0, 0}});
    auto dv = dual_space(v);
    BlockMap f(v, v, -1);
    f.add(1, 0, q(1));  // f(a) = b
    BlockMap fd = dual_map(f, dv, dv);
    // f^(b^) = (-1)^{|f||b|} b^ o f = a^ with sign (+1) since |b| = 0
    CHECK(fd.col(1) == SparseVec{{0, q(1)}});
    CHECK(fd.col(0).empty());
    // double transpose under the unsigned evaluation pairing: (f^)^ = (-1)^{|f|} f
    auto ddv = dual_space(dv);
    BlockMap fdd = dual_map(fd, ddv, ddv);
    BlockMap want = map_scale(f, Scalar(pow_sign(f.deg()), 0u));
    for (int i = 0; i < v->dim(); ++i) CHECK(fdd.col(i) == want.col(i));
}

TEST_CASE("omega and tau maps") {
    auto u = make_space(1, 0, {{"a", 0, 0, 1}});
    auto v = make_space(1, 0, {{"c", 0, 0, 2}, {"d", 0, 0, 1}});
    auto uv = tensor_space(u, v);
    auto vdud = tensor_space(dual_space(v), dual_space(u));
    auto uvd = dual_space(uv);
    BlockMap om = omega_map(u, v, vdud, uvd);
    // omega(c^ (x) a^) = (a (x) c)^ with coefficient 1
    int src = vdud->pair_index.at({0, 0});
    int dst = uv->pair_index.at({0, 0});
    CHECK(om.col(src) == SparseVec{{dst, q(1)}});

    auto vu = tensor_space(v, u);
    BlockMap t = tau_map(uv, vu);
    // tau(a (x) d) = (-1)^{1*1} d (x) a
    int ad = uv->pair_index.at({0, 1});
    int da = vu->pair_index.at({1, 0});
    CHECK(t.col(ad) == SparseVec{{da, q(-1)}});
    int ac = uv->pair_index.at({0, 0});
    int ca = vu->pair_index.at({0, 0});
    CHECK(t.col(ac) == SparseVec{{ca, q(1)}});
}
