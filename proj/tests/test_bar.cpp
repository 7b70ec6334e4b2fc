#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "hhcalc/bar.hpp"

using namespace hhcalc;
using namespace fixtures;

namespace {

void check_bar_squares(const BarConstruction& b, int cap) {
    for (int n = 1; n <= cap; ++n) {
        CHECK(compose(b.d0[n], b.d0[n]).is_zero());
        if (n >= 2) {
            CHECK(compose(b.d1[n - 1], b.d1[n]).is_zero());
            BlockMap anti = map_add(compose(b.d0[n - 1], b.d1[n]),
                                    compose(b.d1[n], b.d0[n]));
            CHECK(anti.is_zero());
        }
    }
}

void check_cobar_squares(const CobarConstruction& o) {
    for (int n = 1; n <= o.cap; ++n) CHECK(compose(o.d0[n], o.d0[n]).is_zero());
    for (int n = 1; n + 2 <= o.cap; ++n)
        CHECK(compose(o.d1[n + 1], o.d1[n]).is_zero());
    for (int n = 1; n + 1 <= o.cap; ++n) {
        BlockMap anti =
            map_add(compose(o.d0[n + 1], o.d1[n]), compose(o.d1[n], o.d0[n]));
        CHECK(anti.is_zero());
    }
}

}  // namespace

TEST_CASE("bar of k[x]/(x^2): weight n is 1-dim in degree n, d1 = 0") {
    DgKRing a = ring_of(dual_numbers());
    auto b = BarConstruction::build(a, 5);
    for (int n = 1; n <= 5; ++n) {
        CHECK(b.wspace[n]->dim() == 1);
        CHECK(b.wspace[n]->basis[0].deg == n);
        CHECK(b.d1[n].is_zero());
        CHECK(b.d0[n].is_zero());
    }
    check_bar_squares(b, 5);
}

TEST_CASE("bar of A2: weight 2 vanishes by idempotent composability") {
    DgKRing a = ring_of(a2_path());
    auto b = BarConstruction::build(a, 3);
    CHECK(b.wspace[1]->dim() == 1);
    CHECK(b.wspace[2]->dim() == 0);
    CHECK(b.wspace[3]->dim() == 0);
}

TEST_CASE("bar of kC2/J^3: d1 matches hand sign and squares vanish") {
    DgKRing a = ring_of(nakayama2());
    auto b = BarConstruction::build(a, 6);
    check_bar_squares(b, 6);
    // d1[a|b] = (-1)^{|a|+1-1+...}: printed sign (-1)^{|a_1|+i-1} with i=1:
    // (-1)^{0+0} = +1? The formula gives (-1)^{|a_1|+1+1-1}... evaluate via
    // the built map and pin the value: d1([a|b]) = -[a.b] or +[a.b]; freeze
    // the coderivation-extension result and check d1^2/anticommute instead.
    int ia = a.space->index_of("a");
    int ib = a.space->index_of("b");
    int iab = a.space->index_of("a.b");
    int w2 = b.index(2, {ia, ib});
    REQUIRE(w2 >= 0);
    int w1 = b.index(1, {iab});
    REQUIRE(w1 >= 0);
    // degree-0 letters: the printed sign (-1)^{|a_1|+i-1} at i=1 is +... the
    // displayed d1 formula exponent is |a_1| + i - 1 = 0: coefficient +1
    CHECK(b.d1[2].col(w2) == SparseVec{{w1, Scalar(1, 0u)}});
    // dg example: d0 anticommutes with d1 when the differential is nonzero
    DgKRing t = ring_of(dg_typical());
    auto bt = BarConstruction::build(t, 4);
    check_bar_squares(bt, 4);
    CHECK(!bt.d0[1].is_zero());
}

TEST_CASE("bar as honest coring validates") {
    DgKRing a = ring_of(nakayama2());
    auto b = BarConstruction::build(a, 4);
    DgKCoring c = b.as_coring();  // normalize() validates all axioms
    CHECK(c.dim() > 0);
    auto cc = cocompleteness_check(c);
    CHECK(cc.cocomplete);
}

TEST_CASE("cobar of dual(k[x]/x^2): free on one degree -1 letter") {
    DgKRing a = ring_of(dual_numbers());
    DgKCoring c = graded_dual_ring_to_coring(a);
    auto o = CobarConstruction::build(c, 5);
    for (int n = 1; n <= 5; ++n) {
        CHECK(o.wspace[n]->dim() == 1);
        CHECK(o.wspace[n]->basis[0].deg == -n);
        CHECK(o.d0[n].is_zero());
        if (n < 5) CHECK(o.d1[n].is_zero());
    }
    check_cobar_squares(o);
}

TEST_CASE("cobar of dual(kC2/J^3): d1 nonzero, squares vanish") {
    DgKRing a = ring_of(nakayama2());
    DgKCoring c = graded_dual_ring_to_coring(a);
    auto o = CobarConstruction::build(c, 5);
    CHECK(!o.d1[1].is_zero());
    check_cobar_squares(o);
}

TEST_CASE("cobar rejects non-cocomplete corings") {
    // the dual of k[x]/(x^2-1) with eps(x)=1 is not... that ring is not even
    // complete; instead build a non-cocomplete coring directly: dualize the
    // group algebra (complete fails => dual not cocomplete)
    DgKRing a = ring_of(group_z2());
    DgKCoring c = graded_dual_ring_to_coring(a);
    CHECK_FALSE(cocompleteness_check(c).cocomplete);
    CHECK_THROWS(CobarConstruction::build(c, 3));
}

TEST_CASE("universal pi satisfies Maurer-Cartan exactly") {
    for (auto mk : {&dual_numbers, &nakayama2}) {
        DgKRing a = ring_of(mk(0));
        auto b = BarConstruction::build(a, 4);
        auto tw = universal_pi(b);
        CHECK(tw.report.ok());
    }
    DgKRing t = ring_of(dg_typical());
    auto bt = BarConstruction::build(t, 4);
    CHECK(universal_pi(bt).report.ok());
}

TEST_CASE("universal iota satisfies Maurer-Cartan exactly") {
    DgKRing a = ring_of(nakayama2());
    DgKCoring c = graded_dual_ring_to_coring(a);
    auto o = CobarConstruction::build(c, 4);
    auto tw = universal_iota(o);
    CHECK(tw.report.ok());
}

TEST_CASE("convolution: unit is a two-sided star-unit; pi*pi matches") {
    DgKRing a = ring_of(nakayama2());
    auto b = BarConstruction::build(a, 4);
    DgKCoring bc = b.as_coring();
    BlockMap u = convolution_unit(bc, a);
    auto tw = universal_pi(b);
    BlockMap lhs = convolution(bc, a, u, tw.map);
    BlockMap rhs = convolution(bc, a, tw.map, u);
    CHECK(map_equal(lhs, tw.map));
    CHECK(map_equal(rhs, tw.map));
    // MC residual via the generic convolution machinery
    BlockMap mc = map_add(hom_diff(bc, a, tw.map), convolution(bc, a, tw.map, tw.map));
    CHECK(mc.is_zero());
}

TEST_CASE("coderivation extension reproduces d1") {
    DgKRing a = ring_of(nakayama2());
    auto b = BarConstruction::build(a, 5);
    // f = the product-induced component on weight 2
    std::vector<BlockMap> f(3);
    f[2] = b.d1[2];  // weight 2 -> weight 1 is exactly f'
    for (int n = 2; n <= 5; ++n) {
        BlockMap ext = extend_coderivation(b, f, -1, n, 2);
        CHECK(map_equal(ext, b.d1[n]));
    }
}

TEST_CASE("derivation extension reproduces cobar d1") {
    DgKRing a = ring_of(nakayama2());
    DgKCoring c = graded_dual_ring_to_coring(a);
    auto o = CobarConstruction::build(c, 5);
    BlockMap g = o.d1[1];  // weight 1 -> weight 2
    for (int n = 1; n <= 4; ++n) {
        BlockMap ext = extend_derivation(o, g, -1, n);
        CHECK(map_equal(ext, o.d1[n]));
    }
}

TEST_CASE("one-sided bar resolution: homotopy identities and homology K") {
    for (auto mk : {&dual_numbers, &nakayama2}) {
        DgKRing a = ring_of(mk(0));
        auto r = one_sided_bar_right(a, 5);
        CHECK(r.window().check_d_squared("BA(x)A").ok());
        CHECK(r.verify().ok());
        // homology = K on valid degrees
        auto cw = r.window();
        for (long q = cw.lo; q <= cw.hi; ++q) {
            if (!cw.valid_at(q)) continue;
            int h = cw.homology(q).dim();
            CHECK(h == (q == 0 ? a.t : 0));
        }
    }
    DgKRing t = ring_of(dg_typical());
    auto rt = one_sided_bar_right(t, 4);
    CHECK(rt.window().check_d_squared("BA(x)A dg").ok());
    CHECK(rt.verify().ok());
}

TEST_CASE("one-sided cobar resolution: homotopy identities and homology K") {
    DgKRing a = ring_of(dual_numbers());
    DgKCoring c = graded_dual_ring_to_coring(a);
    auto r = one_sided_cobar(c, 5, true);
    CHECK(r.window().check_d_squared("OmegaC(x)C").ok());
    CHECK(r.verify().ok());
    auto cw = r.window();
    int valid = 0;
    for (long q = cw.lo; q <= cw.hi; ++q) {
        if (!cw.valid_at(q)) continue;
        ++valid;
        CHECK(cw.homology(q).dim() == (q == 0 ? a.t : 0));
    }
    CHECK(valid >= 3);

    DgKRing n = ring_of(nakayama2());
    DgKCoring cn = graded_dual_ring_to_coring(n);
    auto rn = one_sided_cobar(cn, 5, true);
    CHECK(rn.window().check_d_squared("OmegaC(x)C nakayama").ok());
    CHECK(rn.verify().ok());
}

TEST_CASE("two-sided bar resolution: homotopy identities") {
    for (auto mk : {&dual_numbers, &nakayama2}) {
        DgKRing a = ring_of(mk(0));
        auto r = two_sided_bar(a, 4);
        CHECK(r.window().check_d_squared("A(x)BA(x)A").ok());
        CHECK(r.verify().ok());
        // mu~(1 (x) 1 (x) 1) = 1
        SparseVec one;
        for (int l = 0; l < a.t; ++l)
            vec_axpy(one, Scalar(1, 0u),
                     r.incl.col(a.unit_index(l)));
        CHECK(r.mu_tilde.apply(one) == a.unit());
    }
    DgKRing t = ring_of(dg_typical());
    auto rt = two_sided_bar(t, 4);
    CHECK(rt.window().check_d_squared("A(x)BA(x)A dg").ok());
    CHECK(rt.verify().ok());
}

TEST_CASE("OmegaBA counit: eps lambda = id and homotopy identity") {
    for (auto mk : {&dual_numbers, &nakayama2}) {
        DgKRing a = ring_of(mk(0));
        auto r = cobar_bar_counit(a, 3, 3);
        CHECK(r.verify().ok());
        // eps(<[x]>) = x
        int xi = a.dim() > 1 ? a.t : -1;
        if (xi >= 0) {
            SparseVec lx = r.lambda.col(xi);
            REQUIRE(!lx.empty());
            CHECK(r.eps.apply(lx) == SparseVec{{xi, Scalar(1, 0u)}});
        }
    }
}

TEST_CASE("BOmegaC unit: rho nu = id and homotopy identity") {
    DgKRing a = ring_of(dual_numbers());
    DgKCoring c = graded_dual_ring_to_coring(a);
    auto r = bar_omega_unit(c, 4, 4);
    CHECK(r.verify().ok());
    // nu(x^) = [<x^>] with no higher terms (coradical length 1)
    int xd = c.t;  // first Cbar element
    SparseVec img = r.nu.col(xd);
    CHECK(img.size() == 1);

    DgKRing n = ring_of(nakayama2());
    DgKCoring cn = graded_dual_ring_to_coring(n);
    auto rn = bar_omega_unit(cn, 5, 4);
    CHECK(rn.verify().ok());
}
