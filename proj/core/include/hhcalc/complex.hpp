#pragma once

#include <set>

#include "hhcalc/graded.hpp"
#include "hhcalc/report.hpp"

namespace hhcalc {

// Homology classes at one degree of a ComplexWindow.
struct HomologyBasis {
    long deg = 0;
    uint32_t p = 0;
    std::vector<SparseVec> reps;  // cycle representatives, global coordinates
    Reducer boundaries;           // echelon of the boundary space
    Reducer classes;              // boundary-reduced reps with tracked combos

    HomologyBasis(long deg, uint32_t p, int ambient)
        : deg(deg), p(p), boundaries(ambient, p), classes(ambient, p) {}

    int dim() const { return static_cast<int>(reps.size()); }
    // coordinates of a cycle in the class basis; throws if v is not a cycle
    // representative combination mod boundaries
    std::vector<Scalar> express(const SparseVec& v) const;
    bool is_boundary(const SparseVec& v) const { return boundaries.contains(v); }
};

// A finite family of spaces and differentials over a degree interval, stored
// as one graded space with a degree -1 endomorphism. Weight caps make some
// degrees incomplete; `space_complete` lists the degrees whose stored basis
// (and hence stored differential out of them) agrees with the honest complex.
// Homology at q is trusted only when q-1, q, q+1 are all complete.
struct ComplexWindow {
    SpaceRef total;
    BlockMap d;
    long lo = 0, hi = -1;           // degree span that homology may be asked on
    std::set<long> space_complete;  // complete degrees, over [lo-2, hi+2]

    uint32_t p() const { return total->p; }
    int dim_at(long q) const { return static_cast<int>(total->degree_indices(q).size()); }
    bool complete_at(long q) const { return space_complete.count(q) > 0; }
    bool valid_at(long q) const {
        return q >= lo && q <= hi && complete_at(q - 1) && complete_at(q) &&
               complete_at(q + 1);
    }
    Report check_d_squared(const std::string& tag) const;
    HomologyBasis homology(long q) const;
    std::map<long, int> homology_dims() const;  // over valid degrees
};

// Degrees in [q_lo-2, q_hi+2] NOT attainable by omitted weights n > cap,
// where weight n occupies [n*lmin + off_min, n*lmax + off_max].
std::set<long> complete_degrees_for_cap(long lmin, long lmax, long off_min,
                                        long off_max, int cap, long q_lo, long q_hi);

// residual of the degree-r chain-map property: dY o f - (-1)^r f o dX
BlockMap chain_map_residual(const BlockMap& f, const BlockMap& dX, const BlockMap& dY);

}  // namespace hhcalc
