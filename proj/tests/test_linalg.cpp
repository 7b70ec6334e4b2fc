#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hhcalc/sparse.hpp"

using namespace hhcalc;

namespace {
Scalar q(long n, long d = 1) { return Scalar(n, d, 0); }
}

TEST_CASE("scalar arithmetic is exact") {
    CHECK(q(1, 3) + q(1, 6) == q(1, 2));
    CHECK(q(2) * q(3, 4) == q(3, 2));
    CHECK((q(5) / q(5)).is_one());
    CHECK((-q(0)).is_zero());
    CHECK_THROWS(q(1) / q(0));
    Scalar big = Scalar::from_string("123456789012345678901234567890", 0);
    CHECK(big - big == q(0));
    // prime field residues are canonical in [0, p)
    Scalar m = Scalar(-3, 7);
    CHECK(m == Scalar(4, 7));
    CHECK((Scalar(3, 7) * Scalar(5, 7)) == Scalar(1, 7));
    CHECK(Scalar(3, 7).inverse() == Scalar(5, 7));
    CHECK_THROWS(Scalar(1, 7) + Scalar(1, 0));
}

TEST_CASE("rank: identity, zero, rank-1") {
    SparseMatrix id2(2, 2);
    id2.set(0, 0, q(1));
    id2.set(1, 1, q(1));
    CHECK(id2.rank() == 2);

    SparseMatrix z(3, 4);
    CHECK(z.rank() == 0);

    // [[1,2],[2,4]] over Q has rank 1 (hand elimination)
    SparseMatrix m(2, 2);
    m.set(0, 0, q(1));
    m.set(0, 1, q(2));
    m.set(1, 0, q(2));
    m.set(1, 1, q(4));
    CHECK(m.rank() == 1);
}

TEST_CASE("kernel_basis: identity, zero, proportional rows") {
    SparseMatrix id2(2, 2);
    id2.set(0, 0, q(1));
    id2.set(1, 1, q(1));
    CHECK(id2.kernel_basis().empty());

    SparseMatrix z(2, 3);
    CHECK(z.kernel_basis().size() == 3);

    SparseMatrix m(2, 2);
    m.set(0, 0, q(1));
    m.set(0, 1, q(2));
    m.set(1, 0, q(2));
    m.set(1, 1, q(4));
    auto k = m.kernel_basis();
    REQUIRE(k.size() == 1);
    // proportional to (2, -1): x0 + 2 x1 = 0
    Scalar x0 = vec_get(k[0], 0, 0), x1 = vec_get(k[0], 1, 0);
    CHECK(x0 + q(2) * x1 == q(0));
    CHECK_FALSE(k[0].empty());
    CHECK(m.apply(k[0]).empty());
}

TEST_CASE("solve: identity, inconsistent, underdetermined") {
    SparseMatrix id2(2, 2);
    id2.set(0, 0, q(1));
    id2.set(1, 1, q(1));
    SparseVec b{{0, q(3)}, {1, q(-2, 1)}};
    auto x = id2.solve(b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    SparseMatrix z(2, 2);
    CHECK_FALSE(z.solve(SparseVec{{0, q(1)}}).has_value());

    SparseMatrix m(2, 2);
    m.set(0, 0, q(1));
    m.set(0, 1, q(2));
    m.set(1, 0, q(2));
    m.set(1, 1, q(4));
    auto y = m.solve(SparseVec{{0, q(1)}, {1, q(2)}});
    REQUIRE(y.has_value());
    CHECK(m.apply(*y) == SparseVec{{0, q(1)}, {1, q(2)}});
}

TEST_CASE("quotient_basis: full, zero, partial") {
    // subspace = full space
    std::vector<SparseVec> full{{{0, q(1)}}, {{1, q(1)}}};
    QuotientBasis qb1(full, 2, 0);
    CHECK(qb1.rep_cols.empty());

    QuotientBasis qb2({}, 2, 0);
    CHECK(qb2.rep_cols.size() == 2);

    // span{(1,1,0)} in dim 3 -> 2 representatives, express((1,1,0)) = 0
    std::vector<SparseVec> sub{{{0, q(1)}, {1, q(1)}}};
    QuotientBasis qb3(sub, 3, 0);
    CHECK(qb3.rep_cols.size() == 2);
    auto coords = qb3.rep_coords(SparseVec{{0, q(1)}, {1, q(1)}});
    for (const auto& c : coords) CHECK(c.is_zero());
    auto coords2 = qb3.rep_coords(SparseVec{{2, q(5)}});
    bool nonzero = false;
    for (const auto& c : coords2) nonzero = nonzero || !c.is_zero();
    CHECK(nonzero);
}

TEST_CASE("property: kernel exactness and rank-nullity, random sparse") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 120; ++trial) {
        uint32_t p = trial % 3 == 2 ? 7 : 0;
        int rows = 1 + static_cast<int>(rng() % 30);
        int cols = 1 + static_cast<int>(rng() % 30);
        SparseMatrix m(rows, cols, p);
        int fill = static_cast<int>(rng() % (rows * cols / 2 + 1));
        for (int e = 0; e < fill; ++e) {
            int r = static_cast<int>(rng() % rows);
            int c = static_cast<int>(rng() % cols);
            long v = static_cast<long>(rng() % 7) - 3;
            m.set(r, c, Scalar(v, p));
        }
        int rk = m.rank();
        auto ker = m.kernel_basis();
        CHECK(static_cast<int>(ker.size()) + rk == cols);
        for (const auto& v : ker) CHECK(m.apply(v).empty());
        CHECK(m.transpose().rank() == rk);

        // solve returns an exact solution whenever consistent
        SparseVec xs;
        for (int c = 0; c < cols; ++c) {
            long v = static_cast<long>(rng() % 5) - 2;
            if (v != 0) xs[c] = Scalar(v, p);
        }
        SparseVec b = m.apply(xs);
        auto sol = m.solve(b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
    }
}
