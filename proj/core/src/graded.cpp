#include "hhcalc/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace hhcalc {

const std::vector<int> GradedSpace::empty_;

int GradedSpace::index_of(const std::string& label) const {
    auto it = by_label_.find(label);
    return it == by_label_.end() ? -1 : it->second;
}

const std::vector<int>& GradedSpace::degree_indices(long deg) const {
    auto it = by_degree_.find(deg);
    return it == by_degree_.end() ? empty_ : it->second;
}

std::pair<long, long> GradedSpace::degree_range() const {
    if (basis.empty()) return {0, -1};
    return {by_degree_.begin()->first, by_degree_.rbegin()->first};
}

void GradedSpace::finalize() {
    by_label_.clear();
    by_degree_.clear();
    for (int i = 0; i < dim(); ++i) {
        const auto& b = basis[i];
        if (!by_label_.emplace(b.label, i).second)
            throw std::invalid_argument("GradedSpace: duplicate label '" + b.label + "'");
        if (t > 0 && (b.li < 0 || b.li >= t || b.ri < 0 || b.ri >= t))
            throw std::invalid_argument("GradedSpace: idempotent out of range for '" +
                                        b.label + "'");
        by_degree_[b.deg].push_back(i);
    }
}

bool same_space(const SpaceRef& a, const SpaceRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->t != b->t || a->p != b->p || a->dim() != b->dim()) return false;
    for (int i = 0; i < a->dim(); ++i) {
        const auto& x = a->basis[i];
        const auto& y = b->basis[i];
        if (x.label != y.label || x.li != y.li || x.ri != y.ri || x.deg != y.deg)
            return false;
    }
    return true;
}

SpaceRef make_space(int t, uint32_t p, std::vector<BasisElt> basis) {
    auto sp = std::make_shared<GradedSpace>();
    sp->t = t;
    sp->p = p;
    sp->basis = std::move(basis);
    sp->finalize();
    return sp;
}

SpaceRef k_unit_space(int t, uint32_t p) {
    std::vector<BasisElt> b;
    for (int i = 0; i < t; ++i)
        b.push_back({"e" + std::to_string(i + 1), i, i, 0});
    return make_space(t, p, std::move(b));
}

SpaceRef tensor_space(const SpaceRef& a, const SpaceRef& b) {
    if (a->p != b->p) throw std::invalid_argument("tensor_space: mixed fields");
    if (a->t != b->t) throw std::invalid_argument("tensor_space: mixed K");
    auto sp = std::make_shared<GradedSpace>();
    sp->t = a->t;
    sp->p = a->p;
    sp->left = a;
    sp->right = b;
    for (int i = 0; i < a->dim(); ++i) {
        for (int j = 0; j < b->dim(); ++j) {
            if (a->t > 0 && a->basis[i].ri != b->basis[j].li) continue;
            BasisElt e;
            e.label = "(" + a->basis[i].label + ")(x)(" + b->basis[j].label + ")";
            e.li = a->basis[i].li;
            e.ri = b->basis[j].ri;
            e.deg = a->basis[i].deg + b->basis[j].deg;
            sp->pair_index[{i, j}] = sp->dim();
            sp->factor_of.emplace_back(i, j);
            sp->basis.push_back(std::move(e));
        }
    }
    sp->finalize();
    return sp;
}

SpaceRef dual_space(const SpaceRef& a) {
    auto sp = std::make_shared<GradedSpace>();
    sp->t = a->t;
    sp->p = a->p;
    sp->primal = a;
    for (const auto& b : a->basis) {
        BasisElt e;
        e.label = b.label + "^";
        e.li = b.ri;
        e.ri = b.li;
        e.deg = -b.deg;
        sp->basis.push_back(std::move(e));
    }
    sp->finalize();
    return sp;
}

SpaceRef shift_space(const SpaceRef& a, long s) {
    auto sp = std::make_shared<GradedSpace>();
    sp->t = a->t;
    sp->p = a->p;
    sp->basis = a->basis;
    for (auto& b : sp->basis) b.deg += s;
    sp->finalize();
    return sp;
}

std::string format_elt(const SparseVec& v, const GradedSpace& sp) {
    if (v.empty()) return "0";
    std::string out;
    for (const auto& [i, c] : v) {
        if (!out.empty()) out += " + ";
        out += c.str() + "*" + sp.basis[i].label;
    }
    return out;
}

BlockMap::BlockMap(SpaceRef src, SpaceRef dst, long deg)
    : src_(std::move(src)), dst_(std::move(dst)), deg_(deg) {
    col_.resize(src_->dim());
}

void BlockMap::add(int to, int from, const Scalar& c) {
    if (c.is_zero()) return;
    if (from < 0 || from >= src_->dim() || to < 0 || to >= dst_->dim())
        throw std::out_of_range("BlockMap::add index");
    const auto& s = src_->basis[from];
    const auto& d = dst_->basis[to];
    if (d.deg != s.deg + deg_)
        throw std::invalid_argument("BlockMap::add: inhomogeneous entry " + s.label +
                                    " -> " + d.label);
    if (src_->is_bimodule() && dst_->is_bimodule() && src_->t == dst_->t &&
        (s.li != d.li || s.ri != d.ri))
        throw std::invalid_argument("BlockMap::add: idempotent mismatch " + s.label +
                                    " -> " + d.label);
    auto it = col_[from].find(to);
    if (it == col_[from].end()) {
        col_[from].emplace(to, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) col_[from].erase(it);
    }
}

void BlockMap::add_col(int from, const SparseVec& img) {
    for (const auto& [to, c] : img) add(to, from, c);
}

SparseVec BlockMap::apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [i, c] : x) vec_axpy(y, c, col_[i]);
    return y;
}

bool BlockMap::is_zero() const {
    for (const auto& c : col_)
        if (!c.empty()) return false;
    return true;
}

long BlockMap::nnz() const {
    long n = 0;
    for (const auto& c : col_) n += static_cast<long>(c.size());
    return n;
}

SparseMatrix BlockMap::degree_matrix(long src_deg) const {
    const auto& sidx = src_->degree_indices(src_deg);
    const auto& didx = dst_->degree_indices(src_deg + deg_);
    std::map<int, int> dpos;
    for (size_t r = 0; r < didx.size(); ++r) dpos[didx[r]] = static_cast<int>(r);
    SparseMatrix m(static_cast<int>(didx.size()), static_cast<int>(sidx.size()),
                   src_->p);
    for (size_t c = 0; c < sidx.size(); ++c)
        for (const auto& [to, v] : col_[sidx[c]])
            m.set(dpos.at(to), static_cast<int>(c), v);
    return m;
}

BlockMap zero_map(const SpaceRef& src, const SpaceRef& dst, long deg) {
    return BlockMap(src, dst, deg);
}

BlockMap identity_map(const SpaceRef& sp) {
    BlockMap m(sp, sp, 0);
    for (int i = 0; i < sp->dim(); ++i) m.add(i, i, Scalar::one(sp->p));
    return m;
}

BlockMap compose(const BlockMap& g, const BlockMap& f) {
    if (!same_space(f.dst(), g.src()))
        throw std::invalid_argument("compose: middle space mismatch");
    BlockMap r(f.src(), g.dst(), f.deg() + g.deg());
    for (int i = 0; i < f.src()->dim(); ++i) {
        if (f.col(i).empty()) continue;
        r.add_col(i, g.apply(f.col(i)));
    }
    return r;
}

BlockMap map_add(const BlockMap& a, const BlockMap& b) {
    if (!same_space(a.src(), b.src()) || !same_space(a.dst(), b.dst()) ||
        a.deg() != b.deg())
        throw std::invalid_argument("map_add: shape mismatch");
    BlockMap r(a.src(), a.dst(), a.deg());
    for (int i = 0; i < a.src()->dim(); ++i) {
        SparseVec v = a.col(i);
        vec_axpy(v, Scalar::one(a.src()->p), b.col(i));
        r.add_col(i, v);
    }
    return r;
}

BlockMap map_scale(const BlockMap& a, const Scalar& c) {
    BlockMap r(a.src(), a.dst(), a.deg());
    for (int i = 0; i < a.src()->dim(); ++i) r.add_col(i, vec_scale(a.col(i), c));
    return r;
}

BlockMap map_negate(const BlockMap& a) {
    return map_scale(a, Scalar(-1, a.src()->p));
}

bool map_equal(const BlockMap& a, const BlockMap& b) {
    if (!same_space(a.src(), b.src()) || !same_space(a.dst(), b.dst())) return false;
    if (a.deg() != b.deg()) return false;
    for (int i = 0; i < a.src()->dim(); ++i)
        if (a.col(i) != b.col(i)) return false;
    return true;
}

BlockMap tensor_map(const BlockMap& f, const BlockMap& g, const SpaceRef& src_prod,
                    const SpaceRef& dst_prod) {
    if (!same_space(src_prod->left, f.src()) || !same_space(src_prod->right, g.src()) ||
        !same_space(dst_prod->left, f.dst()) || !same_space(dst_prod->right, g.dst()))
        throw std::invalid_argument("tensor_map: factor mismatch");
    BlockMap r(src_prod, dst_prod, f.deg() + g.deg());
    uint32_t p = src_prod->p;
    for (int k = 0; k < src_prod->dim(); ++k) {
        auto [i, j] = src_prod->factor_of[k];
        long vi_deg = f.src()->basis[i].deg;
        int sgn = koszul_sign(g.deg(), vi_deg);
        for (const auto& [fi, fc] : f.col(i)) {
            for (const auto& [gj, gc] : g.col(j)) {
                auto it = dst_prod->pair_index.find({fi, gj});
                if (it == dst_prod->pair_index.end())
                    throw std::invalid_argument("tensor_map: image pair missing");
                Scalar c = fc * gc;
                if (sgn < 0) c = -c;
                r.add(it->second, k, c);
            }
        }
        (void)p;
    }
    return r;
}

BlockMap dual_map(const BlockMap& f, const SpaceRef& dual_src, const SpaceRef& dual_dst) {
    // f : V -> W, dual_src = W^, dual_dst = V^ (index-aligned with primals)
    if (!same_space(dual_src->primal, f.dst()) || !same_space(dual_dst->primal, f.src()))
        throw std::invalid_argument("dual_map: space mismatch");
    BlockMap r(dual_src, dual_dst, f.deg());
    for (int v = 0; v < f.src()->dim(); ++v) {
        for (const auto& [w, c] : f.col(v)) {
            long wdeg = f.dst()->basis[w].deg;
            Scalar s = c;
            if (koszul_sign(f.deg(), wdeg) < 0) s = -s;
            r.add(v, w, s);  // (f^)(w^) has v^-coefficient (-1)^{|f||w|} c
        }
    }
    return r;
}

BlockMap omega_map(const SpaceRef& u, const SpaceRef& v, const SpaceRef& vdual_udual,
                   const SpaceRef& uv_dual) {
    // vdual_udual = V^ (x) U^, uv_dual = (U (x) V)^
    const SpaceRef& uv = uv_dual->primal;
    if (!uv || !same_space(uv->left, u) || !same_space(uv->right, v))
        throw std::invalid_argument("omega_map: target is not (U(x)V)^");
    if (!same_space(vdual_udual->left->primal, v) ||
        !same_space(vdual_udual->right->primal, u))
        throw std::invalid_argument("omega_map: source is not V^(x)U^");
    BlockMap r(vdual_udual, uv_dual, 0);
    for (int k = 0; k < vdual_udual->dim(); ++k) {
        auto [jv, iu] = vdual_udual->factor_of[k];  // y^ in V^, x^ in U^
        auto it = uv->pair_index.find({iu, jv});
        if (it == uv->pair_index.end()) continue;
        r.add(it->second, k, Scalar::one(u->p));
    }
    return r;
}

BlockMap tau_map(const SpaceRef& mn, const SpaceRef& nm) {
    BlockMap r(mn, nm, 0);
    for (int k = 0; k < mn->dim(); ++k) {
        auto [i, j] = mn->factor_of[k];
        auto it = nm->pair_index.find({j, i});
        if (it == nm->pair_index.end())
            throw std::invalid_argument("tau_map: pair missing in target");
        long di = mn->left->basis[i].deg;
        long dj = mn->right->basis[j].deg;
        Scalar c = Scalar::one(mn->p);
        if (koszul_sign(di, dj) < 0) c = -c;
        r.add(it->second, k, c);
    }
    return r;
}

}  // namespace hhcalc
