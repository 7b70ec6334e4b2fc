#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hhcalc/sparse.hpp"

namespace hhcalc {

// One basis element of a graded K-bimodule: e_{li} x e_{ri}, homological
// (lower) degree deg. Labels are unique within a space.
struct BasisElt {
    std::string label;
    int li = 0;
    int ri = 0;
    long deg = 0;
};

class GradedSpace;
using SpaceRef = std::shared_ptr<const GradedSpace>;

// Finite-basis graded space. t > 0 marks a K-bimodule over K = k^t with
// idempotent bookkeeping; t == 0 marks a plain graded k-space (e.g. cyclic
// tensor products over K^e, where the bimodule structure is gone).
class GradedSpace {
public:
    int t = 1;
    uint32_t p = 0;
    std::vector<BasisElt> basis;

    // tensor structure when built by tensor_space
    SpaceRef left, right;
    std::vector<std::pair<int, int>> factor_of;
    std::map<std::pair<int, int>, int> pair_index;
    // primal link when built by dual_space; index i is dual to primal index i
    SpaceRef primal;

    int dim() const { return static_cast<int>(basis.size()); }
    int index_of(const std::string& label) const;
    const std::vector<int>& degree_indices(long deg) const;
    std::pair<long, long> degree_range() const;  // (min, max); (0,-1) if empty
    bool is_bimodule() const { return t > 0; }

    void finalize();  // builds lookup tables; called by factories

private:
    std::map<std::string, int> by_label_;
    std::map<long, std::vector<int>> by_degree_;
    static const std::vector<int> empty_;
};

bool same_space(const SpaceRef& a, const SpaceRef& b);

SpaceRef make_space(int t, uint32_t p, std::vector<BasisElt> basis);
SpaceRef k_unit_space(int t, uint32_t p);          // K itself: basis e_1..e_t
SpaceRef tensor_space(const SpaceRef& a, const SpaceRef& b);   // over K
SpaceRef dual_space(const SpaceRef& a);            // idempotents swap, degrees negate
SpaceRef shift_space(const SpaceRef& a, long s);   // suspension: degrees + s

std::string format_elt(const SparseVec& v, const GradedSpace& sp);

// Degree-homogeneous linear map stored columnwise; entries only between
// basis elements with matching idempotent pair (when both sides are
// bimodules over the same K) and target degree = source degree + deg.
class BlockMap {
public:
    BlockMap() = default;
    BlockMap(SpaceRef src, SpaceRef dst, long deg);

    bool valid() const { return src_ != nullptr; }
    long deg() const { return deg_; }
    const SpaceRef& src() const { return src_; }
    const SpaceRef& dst() const { return dst_; }

    void add(int to, int from, const Scalar& c);
    void add_col(int from, const SparseVec& img);
    const SparseVec& col(int from) const { return col_[from]; }
    SparseVec apply(const SparseVec& x) const;
    bool is_zero() const;
    long nnz() const;

    // matrix of the restriction (src degree d block) -> (dst degree d+deg
    // block) with rows/cols indexed by the spaces' degree_indices order
    SparseMatrix degree_matrix(long src_deg) const;

private:
    SpaceRef src_, dst_;
    long deg_ = 0;
    std::vector<SparseVec> col_;
};

BlockMap zero_map(const SpaceRef& src, const SpaceRef& dst, long deg);
BlockMap identity_map(const SpaceRef& sp);
BlockMap compose(const BlockMap& g, const BlockMap& f);  // g after f
BlockMap map_add(const BlockMap& a, const BlockMap& b);
BlockMap map_scale(const BlockMap& a, const Scalar& c);
BlockMap map_negate(const BlockMap& a);
bool map_equal(const BlockMap& a, const BlockMap& b);

// (f (x) g)(v (x) w) = (-1)^{|g||v|} f(v) (x) g(w); the Koszul rule enters
// through koszul_sign only.
BlockMap tensor_map(const BlockMap& f, const BlockMap& g, const SpaceRef& src_prod,
                    const SpaceRef& dst_prod);

// Graded transpose: dual_map(f)(phi) = (-1)^{|f||phi|} phi o f.
BlockMap dual_map(const BlockMap& f, const SpaceRef& dual_src, const SpaceRef& dual_dst);

// omega_{U,V}: V^ (x) U^ -> (U (x) V)^, (f (x) g)(u (x) v) = g(u) f(v).
BlockMap omega_map(const SpaceRef& u, const SpaceRef& v, const SpaceRef& vdual_udual,
                   const SpaceRef& uv_dual);

// tau_{M,N}: M (x) N -> N (x) M, m (x) n -> (-1)^{|m||n|} n (x) m.
BlockMap tau_map(const SpaceRef& mn, const SpaceRef& nm);

}  // namespace hhcalc
