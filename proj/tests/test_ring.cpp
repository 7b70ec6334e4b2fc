#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "hhcalc/parse.hpp"
#include "hhcalc/quiver.hpp"

using namespace hhcalc;
using namespace fixtures;

TEST_CASE("quiver_compile: k[x]/(x^2) has dimension 2 and validates") {
    auto in = dual_numbers();
    CHECK(in.ring.space->dim() == 2);
    Report rep = validate_ring(in.ring);
    CHECK(rep.ok());
    DgKRing a = ring_of(in);
    CHECK(a.dim() == 2);
    // x*x = 0
    CHECK(a.mul(SparseVec{{1, Scalar(1, 0u)}}, SparseVec{{1, Scalar(1, 0u)}}).empty());
}

TEST_CASE("quiver_compile: A2 path algebra has dimension 3") {
    auto in = a2_path();
    CHECK(in.ring.space->dim() == 3);
    CHECK(validate_ring(in.ring).ok());
}

TEST_CASE("quiver_compile: kC2/J^3 has dimension 6 and hand-checked products") {
    auto in = nakayama2();
    CHECK(in.ring.space->dim() == 6);
    CHECK(validate_ring(in.ring).ok());
    DgKRing a = ring_of(in);
    int ia = a.space->index_of("a");
    int ib = a.space->index_of("b");
    int iab = a.space->index_of("a.b");
    int iba = a.space->index_of("b.a");
    REQUIRE(ia >= 0);
    REQUIRE(ib >= 0);
    REQUIRE(iab >= 0);
    REQUIRE(iba >= 0);
    auto one = [&](int i) { return SparseVec{{i, Scalar(1, 0u)}}; };
    // function-composition order: a*b = "b then a"
    CHECK(a.mul(one(ia), one(ib)) == one(iab));
    CHECK(a.mul(one(ib), one(ia)) == one(iba));
    CHECK(a.mul(one(ia), one(iab)).empty());   // length 3 dies
    CHECK(a.mul(one(iab), one(iab)).empty());
    // idempotent composability: a*a = 0 by endpoints
    CHECK(a.mul(one(ia), one(ia)).empty());
}

TEST_CASE("validate_ring catches an injected associativity fault") {
    auto in = dual_numbers();
    RawRingData bad = in.ring;
    // corrupt x*x from 0 to x: (xx)x = x^2 = x vs x(xx) = x^2 = x ... use
    // x*x = e1 instead: then (xx)x = x but x(xx) = x, still associative;
    // corrupt to x*x = x: (xx)x = xx = x, x(xx) = xx = x: associative too.
    // Use a genuinely non-associative corruption on the Nakayama algebra.
    auto in2 = nakayama2();
    RawRingData bad2 = in2.ring;
    const auto& sp = *bad2.space;
    int ia = sp.index_of("a"), ib = sp.index_of("b"), iab = sp.index_of("a.b");
    int ie1 = sp.index_of("e1");
    // corrupt a*b = ab into a*b = e2-part... set a*b = 0 while b*(a*b)-chains
    bad2.mu[{ia, ib}] = SparseVec{};  // a*b := 0 but (a*b)*? vs ?: a*(b*a)...
    // (b*a)*... check associativity directly fails: b*(a*b)=0 vs (b*a)*b:
    // (b.a)*b = path b then b.a = b.a.b length 3 = 0. Try corrupting to e-part:
    bad2.mu[{ia, ib}] = SparseVec{{ie1, Scalar(1, 0u)}};
    (void)iab;
    Report rep = validate_ring(bad2);
    CHECK_FALSE(rep.ok());
    (void)bad;
}

TEST_CASE("graded dual of k[x]/(x^2) is a valid coring with primitive x^") {
    DgKRing a = ring_of(dual_numbers());
    DgKCoring c = graded_dual_ring_to_coring(a);
    CHECK(c.dim() == 2);
    // reduced coproduct of x^ vanishes
    CHECK(c.reduced_delta(1).empty());
    auto cc = cocompleteness_check(c);
    CHECK(cc.cocomplete);
    CHECK(cc.coradical_length == 1);
}

TEST_CASE("graded dual of kC2/J^3 and double dual round trip") {
    DgKRing a = ring_of(nakayama2());
    DgKCoring c = graded_dual_ring_to_coring(a);
    CHECK(c.dim() == 6);
    auto cc = cocompleteness_check(c);
    CHECK(cc.cocomplete);
    CHECK(cc.coradical_length == 2);
    // double dual: structure constants return (canonical relabeling)
    DgKRing back = graded_dual_coring_to_ring(c);
    REQUIRE(back.dim() == a.dim());
    for (const auto& [key, img] : a.mu) {
        auto it = back.mu.find(key);
        if (img.empty()) {
            CHECK((it == back.mu.end() || it->second.empty()));
        } else {
            REQUIRE(it != back.mu.end());
            CHECK(it->second == img);
        }
    }
}

TEST_CASE("dual of the graded exterior algebra validates (sign check)") {
    DgKRing a = ring_of(exterior_deg1());
    DgKCoring c = graded_dual_ring_to_coring(a);
    CHECK(c.dim() == 2);
    DgKRing back = graded_dual_coring_to_ring(c);
    CHECK(back.dim() == 2);
}

TEST_CASE("dual of a dg ring validates chain axioms") {
    DgKRing a = ring_of(dg_typical());
    CHECK(a.has_differential());
    DgKCoring c = graded_dual_ring_to_coring(a);
    CHECK(c.dim() == 3);
    CHECK(!c.diff.is_zero());
}

TEST_CASE("opposite ring: involution and sign rule") {
    DgKRing a = ring_of(nakayama2());
    DgKRing op = opposite_ring(a);
    DgKRing opop = opposite_ring(op);
    REQUIRE(opop.dim() == a.dim());
    for (const auto& [key, img] : a.mu) {
        auto it = opop.mu.find(key);
        REQUIRE(it != opop.mu.end());
        CHECK(it->second == img);
    }
    // commutative degree-0 algebra: opposite equals input
    DgKRing d = ring_of(dual_numbers());
    DgKRing dop = opposite_ring(d);
    for (const auto& [key, img] : d.mu) CHECK(dop.mu.at(key) == img);
    // graded: exterior x odd: x *op x = (-1)^{|x||x|} x x = 0 still fine
    DgKRing e = ring_of(exterior_deg1());
    DgKRing eop = opposite_ring(e);
    CHECK(eop.dim() == e.dim());
}

TEST_CASE("completeness: nilpotency index and the group algebra counterexample") {
    auto r1 = completeness_check(ring_of(dual_numbers()));
    CHECK(r1.complete);
    CHECK(r1.nilpotency_index == 2);
    auto r2 = completeness_check(ring_of(nakayama2()));
    CHECK(r2.complete);
    CHECK(r2.nilpotency_index == 3);
    auto r3 = completeness_check(ring_of(group_z2()));
    CHECK_FALSE(r3.complete);
}

TEST_CASE("typicality") {
    CHECK(typicality_check(ring_of(dual_numbers())));
    CHECK(typicality_check(ring_of(dg_typical())));
    // generator in degree -1 breaks simple connectivity
    CHECK_FALSE(typicality_check(ring_of(exterior_deg1())));
}

TEST_CASE("tensor_over_k builds the enveloping-sized space") {
    DgKRing a = ring_of(nakayama2());
    auto ae = tensor_over_k(a.space, a.space);
    CHECK(ae->t == 4);
    CHECK(ae->dim() == 36);
}

TEST_CASE("parser errors carry position info") {
    CHECK_THROWS_AS(parse_algebra_text("[field] q\n[basis]\nbad line here\n", "t"),
                    ParseError);
    CHECK_THROWS_AS(parse_algebra_text("[field] fp 6\n", "t"), ParseError);
    CHECK_THROWS_AS(parse_algebra_text("junk\n", "t"), ParseError);
}

TEST_CASE("random nilpotent quiver algebras validate and are complete") {
    for (uint64_t seed : {101u, 202u, 303u}) {
        auto in = random_nilpotent_quiver(seed);
        CHECK(validate_ring(in.ring).ok());
        DgKRing a = ring_of(in);
        CHECK(completeness_check(a).complete);
        CHECK(typicality_check(a));
    }
}
