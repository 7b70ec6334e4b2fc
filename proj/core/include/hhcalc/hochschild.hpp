#pragma once

#include <random>

#include "hhcalc/bar.hpp"

namespace hhcalc {

// K-reduced Hochschild (co)chain machinery of an augmented dg K-ring,
// materialized against a weight-capped bar construction. Operators strictly
// raising the weight (Connes B, S, weight-0 L insertions, delta) overflow
// past the cap; callers keep operands in the interior. apply-style methods
// throw on overflow rather than silently truncating.
class Hochschild {
public:
    DgKRing A;
    BarConstruction bar;
    int cap = 0;

    // chains: cyclic pairs a (x) [w] with li(a) = ri(w) and ri(a) = li(w)
    SpaceRef chain_total;
    std::vector<std::tuple<int, int, int>> ctuples;  // (a, weight, word)
    std::map<std::tuple<int, int, int>, int> cindex;

    static Hochschild build(const DgKRing& a, int weight_cap);

    int chain_weight(int idx) const { return std::get<1>(ctuples[idx]); }
    int chain_dim() const { return chain_total->dim(); }

    // A cochain: one weight component per stored weight, all of one total
    // degree; comp[n] : bar.wspace[n] -> A.space (invalid handle = zero).
    struct Cochain {
        long deg = 0;
        std::vector<BlockMap> comp;
        bool truncated = false;  // some component fell past the weight cap
        bool is_zero() const {
            for (const auto& m : comp)
                if (m.valid() && !m.is_zero()) return false;
            return true;
        }
    };

    Cochain zero_cochain(long deg) const;
    Cochain unit_cochain() const;  // eta_A o eps_BA
    Cochain add(const Cochain& f, const Cochain& g) const;
    Cochain scale(const Cochain& f, const Scalar& c) const;
    bool equal(const Cochain& f, const Cochain& g) const;

    Cochain delta0(const Cochain& f) const;
    Cochain delta1(const Cochain& f) const;
    Cochain delta(const Cochain& f) const;
    Cochain cup(const Cochain& f, const Cochain& g) const;
    Cochain circle(const Cochain& f, const Cochain& g) const;
    Cochain bracket(const Cochain& f, const Cochain& g) const;

    // chain operators; SparseVec coordinates over chain_total
    SparseVec apply_b0(const SparseVec& x) const { return b0_.apply(x); }
    SparseVec apply_b1(const SparseVec& x) const { return b1_.apply(x); }
    SparseVec apply_b(const SparseVec& x) const;
    SparseVec connes_B(const SparseVec& x) const;
    SparseVec cap_i(const Cochain& f, const SparseVec& x) const;
    SparseVec lie_L(const Cochain& f, const SparseVec& x) const;
    SparseVec homotopy_S(const Cochain& f, const SparseVec& x) const;
    SparseVec homotopy_T(const Cochain& f, const Cochain& g, const SparseVec& x) const;

    const BlockMap& b0_map() const { return b0_; }
    const BlockMap& b1_map() const { return b1_; }

    // random homogeneous operands (coefficients in [-3, 3])
    Cochain random_cochain(int weight, std::mt19937_64& rng) const;
    SparseVec random_chain(int max_weight, std::mt19937_64& rng) const;

    std::string describe(const Cochain& f) const;

    // ---- materialized cochain window -------------------------------------
    struct CochainSpace {
        SpaceRef total;
        std::vector<std::tuple<int, int, int>> tuples;  // (weight, word, a)
        std::map<std::tuple<int, int, int>, int> index;
    };
    CochainSpace cochain_space(long lo, long hi) const;
    Cochain to_cochain(const CochainSpace& cs, const SparseVec& v) const;
    SparseVec from_cochain(const CochainSpace& cs, const Cochain& f) const;

    // complexes over a degree window (weights taken from the stored cap;
    // space_complete reflects which degrees the cap leaves exact)
    ComplexWindow cochain_window(const CochainSpace& cs, long lo, long hi) const;
    ComplexWindow chain_window(long lo, long hi) const;

    struct LetterRangeInfo {
        bool any = false;
        long smin = 0, smax = 0;  // suspended Abar degree range
        long amin = 0, amax = 0;  // A degree range
    };
    LetterRangeInfo letter_info() const;

private:
    BlockMap b0_, b1_;

    SparseVec chain_vec(int a, int n, const std::vector<int>& w, const Scalar& c) const;
    // value of a cochain component on a word index, zero when absent
    SparseVec coch_val(const Cochain& f, int n, int wi) const;
    SparseVec coch_val_word(const Cochain& f, const std::vector<int>& w) const;
};

// independent oracles (acceptance criterion 4)
int center_dimension(const DgKRing& a);          // solve xz = zx over the basis
int hh0_dimension_direct(const DgKRing& a);      // (+) e_iAe_i / im b1, directly

// the identity suite (Lemmas of the calculus section); each check reports the
// first counterexample with its operands
Report calculus_suite(const DgKRing& a, int weight_cap, int trials, uint64_t seed);
// cohomology-level module/Lie checks (i/L on class bases)
Report calculus_homology_suite(const DgKRing& a, int weight_cap, long lo, long hi);

}  // namespace hhcalc
