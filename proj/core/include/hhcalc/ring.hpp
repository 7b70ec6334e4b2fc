#pragma once

#include <optional>

#include "hhcalc/graded.hpp"
#include "hhcalc/report.hpp"

namespace hhcalc {

// Product structure constants: (i, j) -> coordinates of basis_i * basis_j.
// Absent pairs are zero; stored pairs must be idempotent-composable.
using MulTable = std::map<std::pair<int, int>, SparseVec>;

// Coproduct structure constants: i -> list of (left, right, coeff).
struct CoprodTerm {
    int a, b;
    Scalar c;
};
using CoprodTable = std::map<int, std::vector<CoprodTerm>>;

// A dg K-ring as entered (arbitrary basis, arbitrary augmentation).
struct RawRingData {
    int t = 1;
    uint32_t p = 0;
    SpaceRef space;
    MulTable mu;
    std::vector<SparseVec> unit_comp;  // eta(e_l), one per idempotent
    BlockMap diff;                     // degree -1
    BlockMap aug;                      // to k_unit_space(t)
};

Report validate_ring(const RawRingData& a);

// Validated dg K-ring in normalized form: basis 0..t-1 are the unit
// components eta(e_l) (labels e1..et, degree 0), the rest is a basis of the
// augmentation ideal Abar = Ker(eps). Immutable after construction.
class DgKRing {
public:
    int t = 1;
    uint32_t p = 0;
    SpaceRef space;
    SpaceRef k;      // K itself
    MulTable mu;
    BlockMap diff;   // degree -1
    BlockMap aug;    // space -> k

    // Throws if invalid. When out_basis is given it receives the normalized
    // basis vectors in raw coordinates (for transporting functionals).
    static DgKRing normalize(const RawRingData& raw,
                             std::vector<SparseVec>* out_basis = nullptr);

    int dim() const { return space->dim(); }
    bool is_unit_elt(int i) const { return i < t; }
    int unit_index(int l) const { return l; }
    SparseVec unit() const;  // 1 = sum of e_l

    SparseVec mul_elts(int i, int j) const;
    SparseVec mul(const SparseVec& x, const SparseVec& y) const;
    SparseVec d(const SparseVec& x) const { return diff.apply(x); }
    SparseVec abar_project(const SparseVec& x) const;  // kill the K part
    std::vector<int> abar_indices() const;

    bool has_differential() const { return !diff.is_zero(); }
};

struct RawCoringData {
    int t = 1;
    uint32_t p = 0;
    SpaceRef space;
    CoprodTable delta;
    BlockMap counit;                   // to k_unit_space(t)
    std::vector<SparseVec> coaug_comp; // eta_C(e_l)
    BlockMap diff;                     // degree -1
};

Report validate_coring(const RawCoringData& c);

// Validated coaugmented dg K-coring, normalized: basis 0..t-1 are the
// coaugmentation components (labels e1..et), the rest spans Cbar.
class DgKCoring {
public:
    int t = 1;
    uint32_t p = 0;
    SpaceRef space;
    SpaceRef k;
    CoprodTable delta;
    BlockMap diff;
    BlockMap counit;

    static DgKCoring normalize(const RawCoringData& raw);

    int dim() const { return space->dim(); }
    bool is_unit_elt(int i) const { return i < t; }
    std::vector<int> cbar_indices() const;

    // reduced coproduct on Cbar: Delta(x) - 1(x)x - x(x)1, terms in Cbar x Cbar
    std::vector<CoprodTerm> reduced_delta(int i) const;
    SparseVec d(const SparseVec& x) const { return diff.apply(x); }
};

// Graded k-dual functor between validated objects.
DgKCoring graded_dual_ring_to_coring(const DgKRing& a);
DgKRing graded_dual_coring_to_ring(const DgKCoring& c);

DgKRing opposite_ring(const DgKRing& a);

// Tensor product of K-bimodules over K (the default (x)) and over k (the
// enveloping variant: a (K (x)_k K)-bimodule with t^2 idempotents).
SpaceRef tensor_over_K(const SpaceRef& m, const SpaceRef& n);
SpaceRef tensor_over_k(const SpaceRef& m, const SpaceRef& n);

struct CompletenessResult {
    bool complete = false;
    int nilpotency_index = 0;  // minimal n with Abar^n = 0 when complete
};
CompletenessResult completeness_check(const DgKRing& a);

bool typicality_check(const DgKRing& a);

struct CocompletenessResult {
    bool cocomplete = false;
    int coradical_length = 0;  // smallest i with F_i C = C
};
CocompletenessResult cocompleteness_check(const DgKCoring& c);

}  // namespace hhcalc
