#include "hhcalc/ring.hpp"

#include <algorithm>
#include <cassert>

namespace hhcalc {

namespace {

SparseVec mul_with_table(const MulTable& mu, uint32_t p, const SparseVec& x,
                         const SparseVec& y) {
    SparseVec acc;
    (void)p;
    for (const auto& [i, ci] : x) {
        for (const auto& [j, cj] : y) {
            auto it = mu.find({i, j});
            if (it == mu.end()) continue;
            vec_axpy(acc, ci * cj, it->second);
        }
    }
    return acc;
}

std::string pair_witness(const GradedSpace& sp, int i, int j) {
    return "(" + sp.basis[i].label + "," + sp.basis[j].label + ")";
}

std::string triple_witness(const GradedSpace& sp, int i, int j, int k) {
    return "(" + sp.basis[i].label + "," + sp.basis[j].label + "," + sp.basis[k].label +
           ")";
}

}  // namespace

Report validate_ring(const RawRingData& a) {
    Report rep;
    const GradedSpace& sp = *a.space;
    const uint32_t p = a.p;

    // structural sanity of the product table
    {
        bool ok = true;
        std::string w;
        for (const auto& [key, img] : a.mu) {
            auto [i, j] = key;
            if (i < 0 || i >= sp.dim() || j < 0 || j >= sp.dim())
                throw std::invalid_argument("product table: index out of range");
            const auto& x = sp.basis[i];
            const auto& y = sp.basis[j];
            if (x.ri != y.li && !img.empty()) {
                ok = false;
                w = pair_witness(sp, i, j) + " not composable";
                break;
            }
            for (const auto& [z, c] : img) {
                (void)c;
                const auto& zz = sp.basis[z];
                if (zz.deg != x.deg + y.deg || zz.li != x.li || zz.ri != y.ri) {
                    ok = false;
                    w = pair_witness(sp, i, j) + " -> " + zz.label;
                    break;
                }
            }
            if (!ok) break;
        }
        rep.add("product table well-formed", ok, w);
        if (!ok) return rep;
    }

    auto mul = [&](const SparseVec& x, const SparseVec& y) {
        return mul_with_table(a.mu, p, x, y);
    };

    // associativity on basis triples
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < sp.dim() && ok; ++i)
            for (int j = 0; j < sp.dim() && ok; ++j) {
                if (sp.basis[i].ri != sp.basis[j].li) continue;
                SparseVec xi{{i, Scalar::one(p)}}, xj{{j, Scalar::one(p)}};
                SparseVec ij = mul(xi, xj);
                for (int k = 0; k < sp.dim() && ok; ++k) {
                    if (sp.basis[j].ri != sp.basis[k].li) continue;
                    SparseVec xk{{k, Scalar::one(p)}};
                    SparseVec lhs = mul(ij, xk);
                    SparseVec rhs = mul(xi, mul(xj, xk));
                    if (lhs != rhs) {
                        ok = false;
                        w = triple_witness(sp, i, j, k);
                    }
                }
            }
        rep.add("associativity", ok, w);
    }

    // unit components shape + unitality
    {
        bool ok = static_cast<int>(a.unit_comp.size()) == a.t;
        std::string w = ok ? "" : "unit component count";
        for (int l = 0; l < a.t && ok; ++l)
            for (const auto& [i, c] : a.unit_comp[l]) {
                (void)c;
                const auto& b = sp.basis[i];
                if (b.deg != 0 || b.li != l || b.ri != l) {
                    ok = false;
                    w = "eta(e" + std::to_string(l + 1) + ")";
                }
            }
        for (int i = 0; i < sp.dim() && ok; ++i) {
            SparseVec xi{{i, Scalar::one(p)}};
            SparseVec lhs = mul(a.unit_comp[sp.basis[i].li], xi);
            SparseVec rhs = mul(xi, a.unit_comp[sp.basis[i].ri]);
            if (lhs != xi || rhs != xi) {
                ok = false;
                w = sp.basis[i].label;
            }
        }
        rep.add("unitality", ok, w);
    }

    // d^2 = 0, and the unit is a chain map
    {
        BlockMap dd = compose(a.diff, a.diff);
        rep.add("d o d = 0", dd.is_zero());
        bool ok = true;
        std::string w;
        for (int l = 0; l < a.t && ok; ++l)
            if (!a.diff.apply(a.unit_comp[l]).empty()) {
                ok = false;
                w = "e" + std::to_string(l + 1);
            }
        rep.add("d o eta = 0", ok, w);
    }

    // graded Leibniz rule on basis pairs
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < sp.dim() && ok; ++i)
            for (int j = 0; j < sp.dim() && ok; ++j) {
                if (sp.basis[i].ri != sp.basis[j].li) continue;
                SparseVec xi{{i, Scalar::one(p)}}, xj{{j, Scalar::one(p)}};
                SparseVec lhs = a.diff.apply(mul(xi, xj));
                SparseVec rhs = mul(a.diff.apply(xi), xj);
                SparseVec t2 = mul(xi, a.diff.apply(xj));
                Scalar s = Scalar(pow_sign(sp.basis[i].deg), p);
                vec_axpy(rhs, s, t2);
                if (lhs != rhs) {
                    ok = false;
                    w = pair_witness(sp, i, j);
                }
            }
        rep.add("graded Leibniz", ok, w);
    }

    // augmentation: eps multiplicative, eps o eta = id, eps o d = 0
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < sp.dim() && ok; ++i)
            for (int j = 0; j < sp.dim() && ok; ++j) {
                if (sp.basis[i].ri != sp.basis[j].li) continue;
                SparseVec xi{{i, Scalar::one(p)}}, xj{{j, Scalar::one(p)}};
                SparseVec lhs = a.aug.apply(mul(xi, xj));
                SparseVec ex = a.aug.apply(xi), ey = a.aug.apply(xj);
                SparseVec rhs;
                for (const auto& [l, u] : ex) {
                    auto it = ey.find(l);
                    if (it != ey.end()) {
                        Scalar t2 = u * it->second;
                        if (!t2.is_zero()) rhs.emplace(l, t2);
                    }
                }
                if (lhs != rhs) {
                    ok = false;
                    w = pair_witness(sp, i, j);
                }
            }
        rep.add("eps multiplicative", ok, w);

        ok = true;
        w.clear();
        for (int l = 0; l < a.t && ok; ++l) {
            SparseVec img = a.aug.apply(a.unit_comp[l]);
            SparseVec want{{l, Scalar::one(p)}};
            if (img != want) {
                ok = false;
                w = "e" + std::to_string(l + 1);
            }
        }
        rep.add("eps o eta = id", ok, w);
        rep.add("eps o d = 0", compose(a.aug, a.diff).is_zero());
    }

    return rep;
}

SparseVec DgKRing::unit() const {
    SparseVec v;
    for (int l = 0; l < t; ++l) v.emplace(l, Scalar::one(p));
    return v;
}

SparseVec DgKRing::mul_elts(int i, int j) const {
    auto it = mu.find({i, j});
    return it == mu.end() ? SparseVec{} : it->second;
}

SparseVec DgKRing::mul(const SparseVec& x, const SparseVec& y) const {
    return mul_with_table(mu, p, x, y);
}

SparseVec DgKRing::abar_project(const SparseVec& x) const {
    SparseVec r;
    for (const auto& [i, c] : x)
        if (i >= t) r.emplace(i, c);
    return r;
}

std::vector<int> DgKRing::abar_indices() const {
    std::vector<int> r;
    for (int i = t; i < dim(); ++i) r.push_back(i);
    return r;
}

DgKRing DgKRing::normalize(const RawRingData& raw, std::vector<SparseVec>* out_basis) {
    Report rep = validate_ring(raw);
    if (!rep.ok()) {
        const CheckResult* f = rep.first_failure();
        throw std::invalid_argument("invalid dg K-ring: " + f->name +
                                    (f->witness.empty() ? "" : " at " + f->witness));
    }
    const GradedSpace& sp = *raw.space;
    const uint32_t p = raw.p;
    const int t = raw.t;

    // New basis: unit components, then a basis of Ker(eps).
    std::vector<SparseVec> new_vecs;
    std::vector<BasisElt> new_basis;
    for (int l = 0; l < t; ++l) {
        new_vecs.push_back(raw.unit_comp[l]);
        new_basis.push_back({"e" + std::to_string(l + 1), l, l, 0});
    }
    Reducer red(sp.dim(), p);
    for (const auto& v : new_vecs) red.insert(v);
    for (int i = 0; i < sp.dim(); ++i) {
        // projection to Abar: x - sum_l eps(x)_l eta(e_l)
        SparseVec v{{i, Scalar::one(p)}};
        SparseVec eps = raw.aug.apply(v);
        for (const auto& [l, c] : eps) vec_axpy(v, -c, raw.unit_comp[l]);
        if (red.insert(v) < 0) continue;
        BasisElt e = sp.basis[i];
        bool plain = (v.size() == 1 && v.begin()->first == i && v.begin()->second.is_one());
        if (!plain) e.label = "red(" + e.label + ")";
        new_basis.push_back(e);
        new_vecs.push_back(v);
    }
    if (static_cast<int>(new_vecs.size()) != sp.dim())
        throw std::logic_error("normalize: basis split failed");

    DgKRing R;
    R.t = t;
    R.p = p;
    R.space = make_space(t, p, new_basis);
    R.k = k_unit_space(t, p);

    // change of basis: express old-coordinate vectors in the new basis
    Reducer conv(sp.dim(), p);
    for (const auto& v : new_vecs) conv.insert(v);
    auto to_new = [&](const SparseVec& x) {
        auto [res, combo] = conv.reduce(x);
        if (!res.empty()) throw std::logic_error("normalize: change of basis failed");
        return combo;
    };

    for (int i = 0; i < sp.dim(); ++i) {
        for (int j = 0; j < sp.dim(); ++j) {
            SparseVec prod = mul_with_table(raw.mu, p, new_vecs[i], new_vecs[j]);
            if (prod.empty()) continue;
            R.mu[{i, j}] = to_new(prod);
        }
    }
    R.diff = BlockMap(R.space, R.space, -1);
    for (int i = 0; i < sp.dim(); ++i) {
        SparseVec img = raw.diff.apply(new_vecs[i]);
        if (!img.empty()) R.diff.add_col(i, to_new(img));
    }
    R.aug = BlockMap(R.space, R.k, 0);
    for (int l = 0; l < t; ++l) R.aug.add(l, l, Scalar::one(p));
    if (out_basis) *out_basis = new_vecs;
    return R;
}

namespace {

using Word = std::vector<int>;
using WordVec = std::map<Word, Scalar>;

void word_axpy(WordVec& y, const Scalar& a, const WordVec& x) {
    if (a.is_zero()) return;
    for (const auto& [w, c] : x) {
        auto it = y.find(w);
        if (it == y.end()) {
            Scalar t = a * c;
            if (!t.is_zero()) y.emplace(w, std::move(t));
        } else {
            it->second += a * c;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

}  // namespace

Report validate_coring(const RawCoringData& c) {
    Report rep;
    const GradedSpace& sp = *c.space;
    const uint32_t p = c.p;

    {
        bool ok = true;
        std::string w;
        for (const auto& [i, terms] : c.delta) {
            const auto& x = sp.basis[i];
            for (const auto& tm : terms) {
                const auto& u = sp.basis[tm.a];
                const auto& v = sp.basis[tm.b];
                if (u.ri != v.li || u.deg + v.deg != x.deg || u.li != x.li ||
                    v.ri != x.ri) {
                    ok = false;
                    w = x.label;
                    break;
                }
            }
            if (!ok) break;
        }
        rep.add("coproduct table well-formed", ok, w);
        if (!ok) return rep;
    }

    auto delta_of = [&](int i) {
        auto it = c.delta.find(i);
        return it == c.delta.end() ? std::vector<CoprodTerm>{} : it->second;
    };

    // coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < sp.dim() && ok; ++i) {
            WordVec lhs, rhs;
            for (const auto& tm : delta_of(i)) {
                for (const auto& tm2 : delta_of(tm.a))
                    word_axpy(lhs, tm.c * tm2.c, {{Word{tm2.a, tm2.b, tm.b}, Scalar::one(p)}});
                for (const auto& tm2 : delta_of(tm.b))
                    word_axpy(rhs, tm.c * tm2.c, {{Word{tm.a, tm2.a, tm2.b}, Scalar::one(p)}});
            }
            if (lhs != rhs) {
                ok = false;
                w = sp.basis[i].label;
            }
        }
        rep.add("coassociativity", ok, w);
    }

    // counitality
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < sp.dim() && ok; ++i) {
            SparseVec l, r;
            for (const auto& tm : delta_of(i)) {
                SparseVec ea = c.counit.apply(SparseVec{{tm.a, Scalar::one(p)}});
                SparseVec eb = c.counit.apply(SparseVec{{tm.b, Scalar::one(p)}});
                // (eps (x) id): the K value acts through the module structure,
                // e_l . x = x only when li(x) = l
                for (const auto& [lk, lc] : ea)
                    if (lk == sp.basis[tm.b].li)
                        vec_axpy(l, tm.c * lc, SparseVec{{tm.b, Scalar::one(p)}});
                for (const auto& [rk, rc] : eb)
                    if (rk == sp.basis[tm.a].ri)
                        vec_axpy(r, tm.c * rc, SparseVec{{tm.a, Scalar::one(p)}});
            }
            SparseVec want{{i, Scalar::one(p)}};
            if (l != want || r != want) {
                ok = false;
                w = sp.basis[i].label;
            }
        }
        rep.add("counitality", ok, w);
    }

    rep.add("d o d = 0", compose(c.diff, c.diff).is_zero());

    // Delta chain map: Delta d = (d (x) id + id (x) d) Delta
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < sp.dim() && ok; ++i) {
            WordVec lhs, rhs;
            SparseVec di = c.diff.apply(SparseVec{{i, Scalar::one(p)}});
            for (const auto& [j, cj] : di)
                for (const auto& tm : delta_of(j))
                    word_axpy(lhs, cj * tm.c, {{Word{tm.a, tm.b}, Scalar::one(p)}});
            for (const auto& tm : delta_of(i)) {
                SparseVec da = c.diff.apply(SparseVec{{tm.a, Scalar::one(p)}});
                for (const auto& [a2, ca] : da)
                    word_axpy(rhs, tm.c * ca, {{Word{a2, tm.b}, Scalar::one(p)}});
                SparseVec db = c.diff.apply(SparseVec{{tm.b, Scalar::one(p)}});
                Scalar s = Scalar(pow_sign(sp.basis[tm.a].deg), p);
                for (const auto& [b2, cb] : db)
                    word_axpy(rhs, s * tm.c * cb, {{Word{tm.a, b2}, Scalar::one(p)}});
            }
            if (lhs != rhs) {
                ok = false;
                w = sp.basis[i].label;
            }
        }
        rep.add("coproduct chain map", ok, w);
    }

    rep.add("counit chain map", compose(c.counit, c.diff).is_zero());
    {
        bool ok = true;
        for (int l = 0; l < c.t && ok; ++l)
            if (static_cast<int>(c.coaug_comp.size()) > l &&
                !c.diff.apply(c.coaug_comp[l]).empty())
                ok = false;
        rep.add("d o eta_C = 0", ok);
    }

    // coaugmentation: counit o eta = id, Delta(eta(e_l)) = eta(e_l) (x) eta(e_l)
    {
        bool ok = static_cast<int>(c.coaug_comp.size()) == c.t;
        std::string w = ok ? "" : "coaug component count";
        for (int l = 0; l < c.t && ok; ++l) {
            SparseVec img = c.counit.apply(c.coaug_comp[l]);
            SparseVec want{{l, Scalar::one(p)}};
            if (img != want) {
                ok = false;
                w = "e" + std::to_string(l + 1);
            }
        }
        for (int l = 0; l < c.t && ok; ++l) {
            // eta a coring morphism: Delta(eta(e_l)) = eta(e_l) (x) eta(e_l)
            WordVec lhs, rhs;
            for (const auto& [i, ci] : c.coaug_comp[l])
                for (const auto& tm : delta_of(i))
                    word_axpy(lhs, ci * tm.c, {{Word{tm.a, tm.b}, Scalar::one(p)}});
            for (const auto& [i, ci] : c.coaug_comp[l])
                for (const auto& [j, cj] : c.coaug_comp[l])
                    word_axpy(rhs, ci * cj, {{Word{i, j}, Scalar::one(p)}});
            if (lhs != rhs) {
                ok = false;
                w = "Delta(eta(e" + std::to_string(l + 1) + "))";
            }
        }
        rep.add("coaugmentation", ok, w);
    }

    return rep;
}

std::vector<int> DgKCoring::cbar_indices() const {
    std::vector<int> r;
    for (int i = t; i < dim(); ++i) r.push_back(i);
    return r;
}

std::vector<CoprodTerm> DgKCoring::reduced_delta(int i) const {
    if (i < t) return {};
    auto it = delta.find(i);
    std::vector<CoprodTerm> out;
    if (it == delta.end()) throw std::logic_error("reduced_delta: missing coproduct");
    const auto& b = space->basis[i];
    for (const auto& tm : it->second) {
        if (tm.a < t) {
            // must be e_{li} (x) x
            if (tm.a != b.li || tm.b != i || !tm.c.is_one())
                throw std::logic_error("reduced_delta: non-split K term");
            continue;
        }
        if (tm.b < t) {
            if (tm.b != b.ri || tm.a != i || !tm.c.is_one())
                throw std::logic_error("reduced_delta: non-split K term");
            continue;
        }
        out.push_back(tm);
    }
    return out;
}

DgKCoring DgKCoring::normalize(const RawCoringData& raw) {
    Report rep = validate_coring(raw);
    if (!rep.ok()) {
        const CheckResult* f = rep.first_failure();
        throw std::invalid_argument("invalid dg K-coring: " + f->name +
                                    (f->witness.empty() ? "" : " at " + f->witness));
    }
    const GradedSpace& sp = *raw.space;
    const uint32_t p = raw.p;
    const int t = raw.t;

    std::vector<SparseVec> new_vecs;
    std::vector<BasisElt> new_basis;
    for (int l = 0; l < t; ++l) {
        new_vecs.push_back(raw.coaug_comp[l]);
        new_basis.push_back({"e" + std::to_string(l + 1), l, l, 0});
    }
    Reducer red(sp.dim(), p);
    for (const auto& v : new_vecs) red.insert(v);
    for (int i = 0; i < sp.dim(); ++i) {
        SparseVec v{{i, Scalar::one(p)}};
        SparseVec eps = raw.counit.apply(v);
        for (const auto& [l, c] : eps) vec_axpy(v, -c, raw.coaug_comp[l]);
        if (red.insert(v) < 0) continue;
        BasisElt e = sp.basis[i];
        bool plain = (v.size() == 1 && v.begin()->first == i && v.begin()->second.is_one());
        if (!plain) e.label = "red(" + e.label + ")";
        new_basis.push_back(e);
        new_vecs.push_back(v);
    }
    if (static_cast<int>(new_vecs.size()) != sp.dim())
        throw std::logic_error("coring normalize: basis split failed");

    DgKCoring C;
    C.t = t;
    C.p = p;
    C.space = make_space(t, p, new_basis);
    C.k = k_unit_space(t, p);

    Reducer conv(sp.dim(), p);
    for (const auto& v : new_vecs) conv.insert(v);
    auto to_new = [&](const SparseVec& x) {
        auto [res, combo] = conv.reduce(x);
        if (!res.empty()) throw std::logic_error("coring normalize: basis failure");
        return combo;
    };

    auto delta_of = [&](int i) {
        auto it = raw.delta.find(i);
        return it == raw.delta.end() ? std::vector<CoprodTerm>{} : it->second;
    };
    for (int i = 0; i < sp.dim(); ++i) {
        std::map<std::pair<int, int>, Scalar> acc;
        for (const auto& [j, cj] : new_vecs[i]) {
            for (const auto& tm : delta_of(j)) {
                SparseVec na = to_new(SparseVec{{tm.a, Scalar::one(p)}});
                SparseVec nb = to_new(SparseVec{{tm.b, Scalar::one(p)}});
                for (const auto& [a2, ca] : na)
                    for (const auto& [b2, cb] : nb) {
                        Scalar add = cj * tm.c * ca * cb;
                        auto key = std::make_pair(a2, b2);
                        auto it = acc.find(key);
                        if (it == acc.end())
                            acc.emplace(key, add);
                        else {
                            it->second += add;
                            if (it->second.is_zero()) acc.erase(it);
                        }
                    }
            }
        }
        std::vector<CoprodTerm> terms;
        for (const auto& [key, cc] : acc) terms.push_back({key.first, key.second, cc});
        if (!terms.empty()) C.delta[i] = std::move(terms);
    }

    C.diff = BlockMap(C.space, C.space, -1);
    for (int i = 0; i < sp.dim(); ++i) {
        SparseVec img = raw.diff.apply(new_vecs[i]);
        if (!img.empty()) C.diff.add_col(i, to_new(img));
    }
    C.counit = BlockMap(C.space, C.k, 0);
    for (int l = 0; l < t; ++l) C.counit.add(l, l, Scalar::one(p));

    // enforce the split: reduced coproduct of Cbar lands in Cbar (x) Cbar
    for (int i = t; i < C.dim(); ++i) (void)C.reduced_delta(i);
    return C;
}

DgKCoring graded_dual_ring_to_coring(const DgKRing& a) {
    RawCoringData raw;
    raw.t = a.t;
    raw.p = a.p;
    raw.space = dual_space(a.space);
    // Delta(z^) = sum c^z_{x,y} y^ (x) x^  (omega reverses the factors)
    for (const auto& [key, img] : a.mu) {
        auto [x, y] = key;
        for (const auto& [z, c] : img) {
            raw.delta[z].push_back({y, x, c});
        }
    }
    raw.counit = BlockMap(raw.space, k_unit_space(a.t, a.p), 0);
    for (int l = 0; l < a.t; ++l) raw.counit.add(l, l, Scalar::one(a.p));
    raw.coaug_comp.resize(a.t);
    for (int l = 0; l < a.t; ++l) raw.coaug_comp[l] = SparseVec{{l, Scalar::one(a.p)}};
    raw.diff = map_negate(dual_map(a.diff, raw.space, raw.space));
    return DgKCoring::normalize(raw);
}

DgKRing graded_dual_coring_to_ring(const DgKCoring& c) {
    RawRingData raw;
    raw.t = c.t;
    raw.p = c.p;
    raw.space = dual_space(c.space);
    // mu(y^, x^) = sum over Delta(z) terms (x, y): c * z^
    for (const auto& [z, terms] : c.delta) {
        for (const auto& tm : terms) {
            auto key = std::make_pair(tm.b, tm.a);
            auto& img = raw.mu[key];
            vec_axpy(img, tm.c, SparseVec{{z, Scalar::one(c.p)}});
        }
    }
    for (auto it = raw.mu.begin(); it != raw.mu.end();)
        it = it->second.empty() ? raw.mu.erase(it) : std::next(it);
    raw.unit_comp.resize(c.t);
    for (int l = 0; l < c.t; ++l) raw.unit_comp[l] = SparseVec{{l, Scalar::one(c.p)}};
    raw.aug = BlockMap(raw.space, k_unit_space(c.t, c.p), 0);
    for (int l = 0; l < c.t; ++l) raw.aug.add(l, l, Scalar::one(c.p));
    raw.diff = map_negate(dual_map(c.diff, raw.space, raw.space));
    return DgKRing::normalize(raw);
}

DgKRing opposite_ring(const DgKRing& a) {
    RawRingData raw;
    raw.t = a.t;
    raw.p = a.p;
    std::vector<BasisElt> basis = a.space->basis;
    for (auto& b : basis) std::swap(b.li, b.ri);
    raw.space = make_space(a.t, a.p, std::move(basis));
    for (const auto& [key, img] : a.mu) {
        auto [x, y] = key;
        Scalar s = Scalar(koszul_sign(a.space->basis[x].deg, a.space->basis[y].deg), a.p);
        raw.mu[{y, x}] = vec_scale(img, s);
    }
    raw.unit_comp.resize(a.t);
    for (int l = 0; l < a.t; ++l) raw.unit_comp[l] = SparseVec{{l, Scalar::one(a.p)}};
    raw.aug = BlockMap(raw.space, k_unit_space(a.t, a.p), 0);
    for (int l = 0; l < a.t; ++l) raw.aug.add(l, l, Scalar::one(a.p));
    raw.diff = BlockMap(raw.space, raw.space, -1);
    for (int i = 0; i < a.dim(); ++i) raw.diff.add_col(i, a.diff.col(i));
    return DgKRing::normalize(raw);
}

SpaceRef tensor_over_K(const SpaceRef& m, const SpaceRef& n) { return tensor_space(m, n); }

SpaceRef tensor_over_k(const SpaceRef& m, const SpaceRef& n) {
    if (m->p != n->p) throw std::invalid_argument("tensor_over_k: mixed fields");
    auto sp = std::make_shared<GradedSpace>();
    sp->t = m->t * n->t;
    sp->p = m->p;
    sp->left = m;
    sp->right = n;
    for (int i = 0; i < m->dim(); ++i)
        for (int j = 0; j < n->dim(); ++j) {
            BasisElt e;
            e.label = "(" + m->basis[i].label + ")(xk)(" + n->basis[j].label + ")";
            e.li = m->basis[i].li * n->t + n->basis[j].li;
            e.ri = m->basis[i].ri * n->t + n->basis[j].ri;
            e.deg = m->basis[i].deg + n->basis[j].deg;
            sp->pair_index[{i, j}] = sp->dim();
            sp->factor_of.emplace_back(i, j);
            sp->basis.push_back(std::move(e));
        }
    sp->finalize();
    return sp;
}

CompletenessResult completeness_check(const DgKRing& a) {
    CompletenessResult res;
    std::vector<SparseVec> power;  // spanning set of Abar^n
    for (int i : a.abar_indices()) power.push_back(SparseVec{{i, Scalar::one(a.p)}});
    int abar_dim = a.dim() - a.t;
    if (power.empty()) {
        res.complete = true;
        res.nilpotency_index = 1;
        return res;
    }
    for (int n = 1; n <= abar_dim + 1; ++n) {
        std::vector<SparseVec> next;  // Abar^{n+1}
        Reducer red(a.dim(), a.p);
        for (const auto& x : power)
            for (int j : a.abar_indices()) {
                SparseVec prod = a.mul(x, SparseVec{{j, Scalar::one(a.p)}});
                if (!prod.empty() && red.insert(prod) >= 0) next.push_back(prod);
            }
        if (next.empty()) {
            res.complete = true;
            res.nilpotency_index = n + 1;
            return res;
        }
        power = std::move(next);
    }
    res.complete = false;
    return res;
}

bool typicality_check(const DgKRing& a) {
    auto [lo, hi] = a.space->degree_range();
    if (lo >= 0) return true;  // non-negative
    if (hi <= 0) {
        // non-positive simply connected: A_0 = K and A_{-1} = 0
        if (static_cast<int>(a.space->degree_indices(0).size()) != a.t) return false;
        if (!a.space->degree_indices(-1).empty()) return false;
        return true;
    }
    return false;
}

CocompletenessResult cocompleteness_check(const DgKCoring& c) {
    CocompletenessResult res;
    auto cbar = c.cbar_indices();
    if (cbar.empty()) {
        res.cocomplete = true;
        res.coradical_length = 0;
        return res;
    }
    // iterate Deltabar^i : Cbar -> Cbar^{(x) i+1} as word maps, kernel per step
    std::vector<WordVec> cur(c.dim());  // index -> word combination
    for (int i : cbar) cur[i] = WordVec{{Word{i}, Scalar::one(c.p)}};
    int max_iter = c.dim() + 1;
    for (int it = 1; it <= max_iter; ++it) {
        // apply Deltabar to the first letter of each word
        std::vector<WordVec> next(c.dim());
        bool all_zero = true;
        for (int i : cbar) {
            WordVec acc;
            for (const auto& [w, cw] : cur[i]) {
                for (const auto& tm : c.reduced_delta(w[0])) {
                    Word nw;
                    nw.push_back(tm.a);
                    nw.push_back(tm.b);
                    nw.insert(nw.end(), w.begin() + 1, w.end());
                    word_axpy(acc, cw * tm.c, WordVec{{nw, Scalar::one(c.p)}});
                }
            }
            if (!acc.empty()) all_zero = false;
            next[i] = std::move(acc);
        }
        if (all_zero) {
            res.cocomplete = true;
            res.coradical_length = it;
            // kernel might already be everything at an earlier index when some
            // elements die later than others; the reported length is the
            // smallest i with Deltabar^i = 0 on all of Cbar, i.e. F_i C = C.
            return res;
        }
        cur = std::move(next);
    }
    res.cocomplete = false;
    return res;
}

}  // namespace hhcalc
