#include "hhcalc/complex.hpp"

namespace hhcalc {

std::vector<Scalar> HomologyBasis::express(const SparseVec& v) const {
    SparseVec r = boundaries.reduce(v).first;
    auto [res, combo] = classes.reduce(r);
    if (!res.empty())
        throw std::invalid_argument("HomologyBasis::express: not in the class span");
    std::vector<Scalar> out(reps.size(), Scalar::zero(p));
    for (const auto& [g, c] : combo) out[g] = c;
    return out;
}

Report ComplexWindow::check_d_squared(const std::string& tag) const {
    Report rep;
    BlockMap dd = compose(d, d);
    bool ok = dd.is_zero();
    std::string w;
    if (!ok) {
        for (int i = 0; i < total->dim(); ++i)
            if (!dd.col(i).empty()) {
                w = total->basis[i].label;
                break;
            }
    }
    rep.add(tag + ": d o d = 0", ok, w);
    return rep;
}

HomologyBasis ComplexWindow::homology(long q) const {
    if (!valid_at(q))
        throw std::invalid_argument("ComplexWindow::homology: degree " +
                                    std::to_string(q) + " not exact in window");
    HomologyBasis h(q, p(), total->dim());
    const auto& idx = total->degree_indices(q);

    for (int i : total->degree_indices(q + 1)) {
        const SparseVec& im = d.col(i);
        if (!im.empty()) h.boundaries.insert(im);
    }
    SparseMatrix m = d.degree_matrix(q);
    for (const auto& k : m.kernel_basis()) {
        SparseVec g;
        for (const auto& [pos, c] : k) g.emplace(idx[pos], c);
        SparseVec r = h.boundaries.reduce(g).first;
        if (r.empty()) continue;
        if (h.classes.insert(r) >= 0) h.reps.push_back(g);
    }
    return h;
}

std::map<long, int> ComplexWindow::homology_dims() const {
    std::map<long, int> out;
    for (long q = lo; q <= hi; ++q)
        if (valid_at(q)) out[q] = homology(q).dim();
    return out;
}

std::set<long> complete_degrees_for_cap(long lmin, long lmax, long off_min,
                                        long off_max, int cap, long q_lo, long q_hi) {
    std::set<long> out;
    for (long q = q_lo - 2; q <= q_hi + 2; ++q) {
        bool attainable = false;
        if (lmin <= 0 && 0 <= lmax) {
            attainable = true;  // intervals eventually cover everything
        } else if (lmin > 0) {
            // interval of weight n starts at n*lmin + off_min and grows
            for (long n = cap + 1; n * lmin + off_min <= q; ++n)
                if (q <= n * lmax + off_max) {
                    attainable = true;
                    break;
                }
        } else {  // lmax < 0
            for (long n = cap + 1; n * lmax + off_max >= q; ++n)
                if (q >= n * lmin + off_min) {
                    attainable = true;
                    break;
                }
        }
        if (!attainable) out.insert(q);
    }
    return out;
}

BlockMap chain_map_residual(const BlockMap& f, const BlockMap& dX, const BlockMap& dY) {
    BlockMap a = compose(dY, f);
    BlockMap b = compose(f, dX);
    if (pow_sign(f.deg()) < 0) return map_add(a, b);
    return map_add(a, map_negate(b));
}

}  // namespace hhcalc
