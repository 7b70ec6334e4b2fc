#include "hhcalc/bar.hpp"

#include <algorithm>
#include <cassert>

namespace hhcalc {

namespace {

// suspended degree range of an alphabet; shift = +1 for s, -1 for s^{-1}
struct LetterRange {
    bool any = false;
    long lmin = 0, lmax = 0;
};
LetterRange letter_range(const GradedSpace& sp, const std::vector<int>& letters,
                         long shift) {
    LetterRange r;
    for (int i : letters) {
        long d = sp.basis[i].deg + shift;
        if (!r.any) {
            r.any = true;
            r.lmin = r.lmax = d;
        } else {
            r.lmin = std::min(r.lmin, d);
            r.lmax = std::max(r.lmax, d);
        }
    }
    return r;
}

// composable words over a letter alphabet with endpoints
template <typename LiFn, typename RiFn>
std::vector<std::vector<int>> words_of_length(const std::vector<int>& letters, int n,
                                              LiFn li, RiFn ri) {
    std::vector<std::vector<int>> out;
    if (n == 0) return out;
    for (int a : letters) out.push_back({a});
    for (int len = 2; len <= n; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : out) {
            if (static_cast<int>(w.size()) != len - 1) continue;
            for (int a : letters)
                if (ri(w.back()) == li(a)) {
                    auto nw = w;
                    nw.push_back(a);
                    next.push_back(nw);
                }
        }
        if (len == n) return next;
        out = std::move(next);
        if (out.empty()) return out;
    }
    return out;
}

}  // namespace

long BarConstruction::word_deg(const std::vector<int>& w) const {
    long d = 0;
    for (int i : w) d += A.space->basis[i].deg + 1;
    return d;
}

std::string BarConstruction::word_label(const std::vector<int>& w) const {
    std::string s = "[";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += "|";
        s += A.space->basis[w[i]].label;
    }
    return s + "]";
}

int BarConstruction::index(int weight, const std::vector<int>& w) const {
    auto it = windex[weight].find(w);
    return it == windex[weight].end() ? -1 : it->second;
}

BarConstruction BarConstruction::build(const DgKRing& a, int weight_cap) {
    BarConstruction b;
    b.A = a;
    b.cap = weight_cap;
    b.wspace.resize(weight_cap + 1);
    b.words.resize(weight_cap + 1);
    b.windex.resize(weight_cap + 1);

    b.wspace[0] = k_unit_space(a.t, a.p);
    auto letters = a.abar_indices();
    auto li = [&](int i) { return a.space->basis[i].li; };
    auto ri = [&](int i) { return a.space->basis[i].ri; };
    for (int n = 1; n <= weight_cap; ++n) {
        b.words[n] = words_of_length(letters, n, li, ri);
        std::vector<BasisElt> belts;
        for (int k = 0; k < static_cast<int>(b.words[n].size()); ++k) {
            const auto& w = b.words[n][k];
            b.windex[n][w] = k;
            belts.push_back({b.word_label(w), a.space->basis[w.front()].li,
                             a.space->basis[w.back()].ri, b.word_deg(w)});
        }
        b.wspace[n] = make_space(a.t, a.p, belts);
    }

    // d0([a_1|...|a_n]) = sum_i (-1)^{|a_1|+...+|a_{i-1}|+i} [..|d a_i|..]
    b.d0.resize(weight_cap + 1);
    b.d1.resize(weight_cap + 1);
    b.d0[0] = zero_map(b.wspace[0], b.wspace[0], -1);
    for (int n = 1; n <= weight_cap; ++n) {
        BlockMap m(b.wspace[n], b.wspace[n], -1);
        for (int k = 0; k < static_cast<int>(b.words[n].size()); ++k) {
            const auto& w = b.words[n][k];
            long pre = 0;
            for (int i = 0; i < n; ++i) {
                Scalar sgn = Scalar(pow_sign(pre + i + 1), a.p);
                SparseVec da = a.d(SparseVec{{w[i], Scalar::one(a.p)}});
                for (const auto& [x, c] : da) {
                    auto nw = w;
                    nw[i] = x;
                    int kk = b.index(n, nw);
                    if (kk < 0) throw std::logic_error("bar d0: image word missing");
                    m.add(kk, k, sgn * c);
                }
                pre += a.space->basis[w[i]].deg;
            }
        }
        b.d0[n] = std::move(m);
    }

    // d1 via the coderivation extension of f'([a|b]) = (-1)^{|a|} [ab]
    for (int n = 1; n <= weight_cap; ++n) {
        BlockMap m(b.wspace[n], b.wspace[n - 1], -1);
        for (int k = 0; k < static_cast<int>(b.words[n].size()); ++k) {
            const auto& w = b.words[n][k];
            long pre_s = 0;  // suspended degree of the prefix
            for (int i = 0; i + 1 < n; ++i) {
                // f' on letters (i, i+1), Koszul sign past the prefix then
                // f's own sign (-1)^{|a_i|}
                long ai = a.space->basis[w[i]].deg;
                Scalar sgn = Scalar(pow_sign(pre_s + ai), a.p);
                SparseVec prod = a.abar_project(
                    a.mul(SparseVec{{w[i], Scalar::one(a.p)}},
                          SparseVec{{w[i + 1], Scalar::one(a.p)}}));
                for (const auto& [x, c] : prod) {
                    std::vector<int> nw;
                    nw.insert(nw.end(), w.begin(), w.begin() + i);
                    nw.push_back(x);
                    nw.insert(nw.end(), w.begin() + i + 2, w.end());
                    int kk = b.index(n - 1, nw);
                    if (kk < 0) throw std::logic_error("bar d1: image word missing");
                    m.add(kk, k, sgn * c);
                }
                pre_s += ai + 1;
            }
        }
        b.d1[n] = std::move(m);
    }
    return b;
}

DgKCoring BarConstruction::as_coring() const {
    RawCoringData raw;
    raw.t = A.t;
    raw.p = A.p;
    std::vector<BasisElt> belts;
    for (int l = 0; l < A.t; ++l) belts.push_back({"e" + std::to_string(l + 1), l, l, 0});
    std::vector<int> offs(cap + 1, 0);
    int off = A.t;
    for (int n = 1; n <= cap; ++n) {
        offs[n] = off;
        for (int k = 0; k < static_cast<int>(words[n].size()); ++k)
            belts.push_back(wspace[n]->basis[k]);
        off += static_cast<int>(words[n].size());
    }
    raw.space = make_space(A.t, A.p, belts);

    auto cidx = [&](int n, int wi) { return n == 0 ? wi : offs[n] + wi; };
    // deconcatenation coproduct; the i = 0 and i = n splits give the
    // coaugmented terms 1 (x) w and w (x) 1
    for (int l = 0; l < A.t; ++l) raw.delta[l] = {{l, l, Scalar::one(A.p)}};
    for (int n = 1; n <= cap; ++n) {
        for (int k = 0; k < static_cast<int>(words[n].size()); ++k) {
            const auto& w = words[n][k];
            std::vector<CoprodTerm> terms;
            for (int i = 0; i <= n; ++i) {
                int left =
                    i == 0 ? A.space->basis[w.front()].li
                           : cidx(i, windex[i].at(std::vector<int>(w.begin(),
                                                                   w.begin() + i)));
                int right =
                    i == n
                        ? A.space->basis[w.back()].ri
                        : cidx(n - i, windex[n - i].at(
                                          std::vector<int>(w.begin() + i, w.end())));
                terms.push_back({left, right, Scalar::one(A.p)});
            }
            raw.delta[cidx(n, k)] = std::move(terms);
        }
    }
    raw.counit = BlockMap(raw.space, k_unit_space(A.t, A.p), 0);
    for (int l = 0; l < A.t; ++l) raw.counit.add(l, l, Scalar::one(A.p));
    raw.coaug_comp.resize(A.t);
    for (int l = 0; l < A.t; ++l) raw.coaug_comp[l] = SparseVec{{l, Scalar::one(A.p)}};
    raw.diff = BlockMap(raw.space, raw.space, -1);
    for (int n = 1; n <= cap; ++n) {
        for (int k = 0; k < static_cast<int>(words[n].size()); ++k) {
            SparseVec img;
            for (const auto& [x, c] : d0[n].col(k)) img[cidx(n, x)] = c;
            for (const auto& [x, c] : d1[n].col(k)) {
                int tgt = n - 1 == 0 ? -1 : cidx(n - 1, x);
                if (tgt >= 0) img[tgt] = c;
            }
            raw.diff.add_col(cidx(n, k), img);
        }
    }
    return DgKCoring::normalize(raw);
}

std::pair<int, int> BarConstruction::coring_layout(int coring_index) const {
    if (coring_index < A.t) return {0, coring_index};
    int off = coring_index - A.t;
    for (int n = 1; n <= cap; ++n) {
        if (off < static_cast<int>(words[n].size())) return {n, off};
        off -= static_cast<int>(words[n].size());
    }
    throw std::out_of_range("coring_layout");
}

int BarConstruction::coring_index(int weight, int widx) const {
    if (weight == 0) return widx;
    int off = A.t;
    for (int n = 1; n < weight; ++n) off += static_cast<int>(words[n].size());
    return off + widx;
}

long CobarConstruction::word_deg(const std::vector<int>& w) const {
    long d = 0;
    for (int i : w) d += C.space->basis[i].deg - 1;
    return d;
}

std::string CobarConstruction::word_label(const std::vector<int>& w) const {
    std::string s = "<";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += "|";
        s += C.space->basis[w[i]].label;
    }
    return s + ">";
}

int CobarConstruction::index(int weight, const std::vector<int>& w) const {
    auto it = windex[weight].find(w);
    return it == windex[weight].end() ? -1 : it->second;
}

CobarConstruction CobarConstruction::build(const DgKCoring& c, int weight_cap) {
    auto cc = cocompleteness_check(c);
    if (!cc.cocomplete)
        throw std::invalid_argument("cobar: coring is not cocomplete");
    CobarConstruction o;
    o.C = c;
    o.cap = weight_cap;
    o.wspace.resize(weight_cap + 1);
    o.words.resize(weight_cap + 1);
    o.windex.resize(weight_cap + 1);
    o.wspace[0] = k_unit_space(c.t, c.p);
    auto letters = c.cbar_indices();
    auto li = [&](int i) { return c.space->basis[i].li; };
    auto ri = [&](int i) { return c.space->basis[i].ri; };
    for (int n = 1; n <= weight_cap; ++n) {
        o.words[n] = words_of_length(letters, n, li, ri);
        std::vector<BasisElt> belts;
        for (int k = 0; k < static_cast<int>(o.words[n].size()); ++k) {
            const auto& w = o.words[n][k];
            o.windex[n][w] = k;
            belts.push_back({o.word_label(w), c.space->basis[w.front()].li,
                             c.space->basis[w.back()].ri, o.word_deg(w)});
        }
        o.wspace[n] = make_space(c.t, c.p, belts);
    }

    o.d0.resize(weight_cap + 1);
    o.d1.resize(weight_cap + 1);
    o.d0[0] = zero_map(o.wspace[0], o.wspace[0], -1);
    for (int n = 1; n <= weight_cap; ++n) {
        BlockMap m(o.wspace[n], o.wspace[n], -1);
        for (int k = 0; k < static_cast<int>(o.words[n].size()); ++k) {
            const auto& w = o.words[n][k];
            long pre = 0;
            for (int i = 0; i < n; ++i) {
                Scalar sgn = Scalar(pow_sign(pre + i + 1), c.p);
                SparseVec dc = c.d(SparseVec{{w[i], Scalar::one(c.p)}});
                for (const auto& [x, cc2] : dc) {
                    auto nw = w;
                    nw[i] = x;
                    int kk = o.index(n, nw);
                    if (kk < 0) throw std::logic_error("cobar d0: image word missing");
                    m.add(kk, k, sgn * cc2);
                }
                pre += c.space->basis[w[i]].deg;
            }
        }
        o.d0[n] = std::move(m);
    }
    // d1 <c_1|..|c_n> = sum_i sum_{Deltabar(c_i) = u (x) v}
    //   (-1)^{|c_1|+..+|c_{i-1}|+|u|+i} <c_1|..|u|v|..|c_n>
    for (int n = 1; n < weight_cap; ++n) {
        BlockMap m(o.wspace[n], o.wspace[n + 1], -1);
        for (int k = 0; k < static_cast<int>(o.words[n].size()); ++k) {
            const auto& w = o.words[n][k];
            long pre = 0;
            for (int i = 0; i < n; ++i) {
                for (const auto& tm : c.reduced_delta(w[i])) {
                    long su = c.space->basis[tm.a].deg;
                    Scalar sgn = Scalar(pow_sign(pre + su + i + 1), c.p);
                    std::vector<int> nw;
                    nw.insert(nw.end(), w.begin(), w.begin() + i);
                    nw.push_back(tm.a);
                    nw.push_back(tm.b);
                    nw.insert(nw.end(), w.begin() + i + 1, w.end());
                    int kk = o.index(n + 1, nw);
                    if (kk < 0) throw std::logic_error("cobar d1: image word missing");
                    m.add(kk, k, sgn * tm.c);
                }
                pre += c.space->basis[w[i]].deg;
            }
        }
        o.d1[n] = std::move(m);
    }
    if (weight_cap >= 1)
        o.d1[weight_cap] = BlockMap();  // truncated at the cap; callers must not use
    return o;
}

BlockMap extend_coderivation(const BarConstruction& b, const std::vector<BlockMap>& f,
                             long fdeg, int n, int k) {
    if (k < 1 || k >= static_cast<int>(f.size()) || !f[k].valid())
        throw std::invalid_argument("extend_coderivation: missing component");
    BlockMap m(b.wspace[n], b.wspace[n - k + 1], fdeg);
    const uint32_t p = b.A.p;
    for (int kk = 0; kk < static_cast<int>(b.words[n].size()); ++kk) {
        const auto& w = b.words[n][kk];
        long pre_s = 0;
        for (int i = 0; i + k <= n; ++i) {
            if (i > 0) pre_s += b.A.space->basis[w[i - 1]].deg + 1;
            std::vector<int> mid(w.begin() + i, w.begin() + i + k);
            int mi = b.index(k, mid);
            if (mi < 0) throw std::logic_error("extend_coderivation: sub-word missing");
            Scalar sgn = Scalar(koszul_sign(fdeg, pre_s), p);
            for (const auto& [x, c] : f[k].col(mi)) {
                // x is a weight-1 word index: a single letter
                std::vector<int> nw;
                nw.insert(nw.end(), w.begin(), w.begin() + i);
                nw.push_back(b.words[1][x][0]);
                nw.insert(nw.end(), w.begin() + i + k, w.end());
                int tk = b.index(n - k + 1, nw);
                if (tk < 0) throw std::logic_error("extend_coderivation: image missing");
                m.add(tk, kk, sgn * c);
            }
        }
    }
    return m;
}

BlockMap extend_derivation(const CobarConstruction& o, const BlockMap& g, long gdeg,
                           int n) {
    // g : weight 1 -> weight k
    int k = -1;
    for (int kk = 1; kk <= o.cap; ++kk)
        if (same_space(g.dst(), o.wspace[kk])) k = kk;
    if (k < 0) throw std::invalid_argument("extend_derivation: target not a weight space");
    if (n - 1 + k > o.cap)
        throw std::invalid_argument("extend_derivation: output exceeds weight cap");
    BlockMap m(o.wspace[n], o.wspace[n + k - 1], gdeg);
    const uint32_t p = o.C.p;
    for (int kk = 0; kk < static_cast<int>(o.words[n].size()); ++kk) {
        const auto& w = o.words[n][kk];
        long pre_s = 0;
        for (int i = 0; i < n; ++i) {
            if (i > 0) pre_s += o.C.space->basis[w[i - 1]].deg - 1;
            int li2 = o.index(1, {w[i]});
            Scalar sgn = Scalar(koszul_sign(gdeg, pre_s), p);
            for (const auto& [x, c] : g.col(li2)) {
                const auto& sub = o.words[k][x];
                std::vector<int> nw;
                nw.insert(nw.end(), w.begin(), w.begin() + i);
                nw.insert(nw.end(), sub.begin(), sub.end());
                nw.insert(nw.end(), w.begin() + i + 1, w.end());
                int tk = o.index(n + k - 1, nw);
                if (tk < 0) continue;  // non-composable insertion dies
                m.add(tk, kk, sgn * c);
            }
        }
    }
    return m;
}

BlockMap convolution(const DgKCoring& c, const DgKRing& a, const BlockMap& f,
                     const BlockMap& g) {
    if (!same_space(f.src(), c.space) || !same_space(g.src(), c.space) ||
        !same_space(f.dst(), a.space) || !same_space(g.dst(), a.space))
        throw std::invalid_argument("convolution: shape mismatch");
    BlockMap m(c.space, a.space, f.deg() + g.deg());
    for (int i = 0; i < c.dim(); ++i) {
        auto it = c.delta.find(i);
        if (it == c.delta.end()) continue;
        SparseVec acc;
        for (const auto& tm : it->second) {
            long da = c.space->basis[tm.a].deg;
            Scalar sgn = Scalar(koszul_sign(g.deg(), da), c.p);
            SparseVec fa = f.col(tm.a);
            SparseVec gb = g.col(tm.b);
            if (fa.empty() || gb.empty()) continue;
            SparseVec prod = a.mul(fa, gb);
            vec_axpy(acc, sgn * tm.c, prod);
        }
        m.add_col(i, acc);
    }
    return m;
}

BlockMap convolution_unit(const DgKCoring& c, const DgKRing& a) {
    BlockMap m(c.space, a.space, 0);
    for (int l = 0; l < c.t; ++l) m.add(a.unit_index(l), l, Scalar::one(a.p));
    return m;
}

BlockMap hom_diff(const DgKCoring& c, const DgKRing& a, const BlockMap& f) {
    BlockMap left = compose(a.diff, f);
    BlockMap right = compose(f, c.diff);
    if (pow_sign(f.deg()) < 0) return map_add(left, right);
    return map_add(left, map_negate(right));
}

TwistingMorphism make_twisting(const DgKCoring& c, const DgKRing& a, const BlockMap& m) {
    TwistingMorphism tw;
    tw.map = m;
    Report& rep = tw.report;
    if (m.deg() != -1) {
        rep.add("twisting morphism degree -1", false);
        return tw;
    }
    BlockMap mc = map_add(hom_diff(c, a, m), convolution(c, a, m, m));
    rep.add("Maurer-Cartan d(alpha) + alpha*alpha = 0", mc.is_zero());
    BlockMap ea = compose(a.aug, m);
    rep.add("eps_A o alpha = 0", ea.is_zero());
    bool unit_ok = true;
    for (int l = 0; l < c.t; ++l)
        if (!m.col(l).empty()) unit_ok = false;
    rep.add("alpha o eta_C = 0", unit_ok);
    return tw;
}

TwistingMorphism universal_pi(const BarConstruction& b) {
    DgKCoring bc = b.as_coring();
    BlockMap pi(bc.space, b.A.space, -1);
    for (int k = 0; k < static_cast<int>(b.words[1].size()); ++k)
        pi.add(b.words[1][k][0], b.coring_index(1, k), Scalar::one(b.A.p));
    return make_twisting(bc, b.A, pi);
}

TwistingMorphism universal_iota(const CobarConstruction& o) {
    const DgKCoring& c = o.C;
    TwistingMorphism tw;
    tw.map = BlockMap(c.space, o.wspace[1], -1);
    for (int i : c.cbar_indices()) {
        int k = o.index(1, {i});
        if (k < 0) throw std::logic_error("universal_iota: letter missing");
        tw.map.add(k, i, Scalar::one(c.p));
    }
    // Maurer-Cartan by weight component:
    //   weight 1: d0 iota + iota d_C = 0; weight 2: d1 iota + iota*iota = 0
    BlockMap w1 = map_add(compose(o.d0[1], tw.map), compose(tw.map, c.diff));
    bool ok1 = w1.is_zero();
    bool ok2 = true;
    if (o.cap >= 2) {
        BlockMap conc(c.space, o.wspace[2], -2);
        for (int i = 0; i < c.dim(); ++i) {
            auto it = c.delta.find(i);
            if (it == c.delta.end()) continue;
            for (const auto& tm : it->second) {
                if (tm.a < c.t || tm.b < c.t) continue;
                long da = c.space->basis[tm.a].deg;
                Scalar sgn = Scalar(koszul_sign(-1, da), c.p);
                int k = o.index(2, {tm.a, tm.b});
                if (k < 0) throw std::logic_error("universal_iota: pair missing");
                conc.add(k, i, sgn * tm.c);
            }
        }
        BlockMap d1i = compose(o.d1[1], tw.map);
        ok2 = map_add(d1i, conc).is_zero();
    }
    tw.report.add("Maurer-Cartan (weight 1 component)", ok1);
    tw.report.add("Maurer-Cartan (weight 2 component)", ok2);
    bool unit_ok = true;
    for (int l = 0; l < c.t; ++l)
        if (!tw.map.col(l).empty()) unit_ok = false;
    tw.report.add("iota o eta_C = 0", unit_ok);
    return tw;
}

// ---------------------------------------------------------------- one-sided

OneSidedBar one_sided_bar_right(const DgKRing& a, int weight_cap) {
    OneSidedBar r;
    r.bar = BarConstruction::build(a, weight_cap);
    const auto& b = r.bar;
    const uint32_t p = a.p;

    std::vector<BasisElt> belts;
    for (int n = 0; n <= weight_cap; ++n) {
        int nw = n == 0 ? a.t : static_cast<int>(b.words[n].size());
        for (int k = 0; k < nw; ++k) {
            int wri = n == 0 ? k : a.space->basis[b.words[n][k].back()].ri;
            long wdeg = n == 0 ? 0 : b.word_deg(b.words[n][k]);
            int wli = n == 0 ? k : a.space->basis[b.words[n][k].front()].li;
            std::string wlab = n == 0 ? "[]" : b.wspace[n]->basis[k].label;
            for (int ai = 0; ai < a.dim(); ++ai) {
                const auto& ae = a.space->basis[ai];
                if (ae.li != wri) continue;
                r.tindex[{n, k, ai}] = static_cast<int>(r.tuples.size());
                r.tuples.emplace_back(n, k, ai);
                belts.push_back({wlab + "(x)" + ae.label, wli, ae.ri, wdeg + ae.deg});
            }
        }
    }
    r.total = make_space(a.t, p, belts);

    auto tidx = [&](int n, int k, int ai) {
        auto it = r.tindex.find({n, k, ai});
        return it == r.tindex.end() ? -1 : it->second;
    };

    r.d = BlockMap(r.total, r.total, -1);
    for (int ti = 0; ti < static_cast<int>(r.tuples.size()); ++ti) {
        auto [n, k, ai] = r.tuples[ti];
        long wdeg = n == 0 ? 0 : b.word_deg(b.words[n][k]);
        SparseVec img;
        // d_BA (x) id
        if (n >= 1) {
            for (const auto& [x, c] : b.d0[n].col(k)) img[tidx(n, x, ai)] = c;
            for (const auto& [x, c] : b.d1[n].col(k)) {
                int tk;
                if (n - 1 == 0) {
                    int l = a.space->basis[ai].li;
                    tk = tidx(0, l, ai);
                } else {
                    tk = tidx(n - 1, x, ai);
                }
                // n-1 == 0 cannot happen for d1 (needs two letters)
                vec_axpy(img, c, SparseVec{{tk, Scalar::one(p)}});
            }
        }
        // id (x) d_A with Koszul sign past the word
        {
            Scalar sgn = Scalar(pow_sign(wdeg), p);
            for (const auto& [x, c] : a.diff.col(ai)) {
                int tk = tidx(n, k, x);
                if (tk < 0) throw std::logic_error("one-sided: d_A image missing");
                vec_axpy(img, sgn * c, SparseVec{{tk, Scalar::one(p)}});
            }
        }
        // twist d^r_pi: split off the last letter and act
        if (n >= 1) {
            const auto& w = b.words[n][k];
            long pre = wdeg - (a.space->basis[w.back()].deg + 1);
            Scalar sgn = Scalar(pow_sign(pre), p);
            SparseVec prod = a.mul(SparseVec{{w.back(), Scalar::one(p)}},
                                   SparseVec{{ai, Scalar::one(p)}});
            for (const auto& [x, c] : prod) {
                int tk;
                if (n - 1 == 0) {
                    tk = tidx(0, a.space->basis[x].li, x);
                } else {
                    std::vector<int> nw(w.begin(), w.end() - 1);
                    tk = tidx(n - 1, b.index(n - 1, nw), x);
                }
                if (tk < 0) throw std::logic_error("one-sided: twist image missing");
                vec_axpy(img, sgn * c, SparseVec{{tk, Scalar::one(p)}});
            }
        }
        r.d.add_col(ti, img);
    }

    SpaceRef kk = k_unit_space(a.t, p);
    r.proj = BlockMap(r.total, kk, 0);
    r.incl = BlockMap(kk, r.total, 0);
    for (int l = 0; l < a.t; ++l) {
        int ti = tidx(0, l, a.unit_index(l));
        r.proj.add(l, ti, Scalar::one(p));
        r.incl.add(ti, l, Scalar::one(p));
    }

    // s([a_1|..|a_n] (x) a) = (-1)^{deg_s(w)} [a_1|..|a_n|a] (x) 1, a in Abar
    r.s = BlockMap(r.total, r.total, 1);
    for (int ti = 0; ti < static_cast<int>(r.tuples.size()); ++ti) {
        auto [n, k, ai] = r.tuples[ti];
        if (a.is_unit_elt(ai)) continue;
        if (n + 1 > weight_cap) continue;  // truncated at the cap
        std::vector<int> nw = n == 0 ? std::vector<int>{} : b.words[n][k];
        nw.push_back(ai);
        int wk = b.index(n + 1, nw);
        if (wk < 0) throw std::logic_error("one-sided: s image missing");
        long wdeg = n == 0 ? 0 : b.word_deg(b.words[n][k]);
        int ri2 = a.space->basis[ai].ri;
        r.s.add(tidx(n + 1, wk, a.unit_index(ri2)), ti, Scalar(pow_sign(wdeg), p));
    }
    return r;
}

Report OneSidedBar::verify() const {
    Report rep;
    rep.add("p o i = id", map_equal(compose(proj, incl), identity_map(incl.src())));
    // id - i p = d s + s d on weight <= cap-1
    BlockMap lhs = map_add(identity_map(total), map_negate(compose(incl, proj)));
    BlockMap rhs = map_add(compose(d, s), compose(s, d));
    bool ok = true;
    std::string w;
    for (int ti = 0; ti < total->dim() && ok; ++ti) {
        auto [n, k, ai] = tuples[ti];
        (void)k;
        (void)ai;
        if (n >= bar.cap) continue;
        if (lhs.col(ti) != rhs.col(ti)) {
            ok = false;
            w = total->basis[ti].label;
        }
    }
    rep.add("id - i p = ds + sd (interior)", ok, w);
    return rep;
}

ComplexWindow OneSidedBar::window() const {
    ComplexWindow cw;
    cw.total = total;
    cw.d = d;
    auto [lo, hi] = total->degree_range();
    cw.lo = lo;
    cw.hi = hi;
    const DgKRing& a = bar.A;
    LetterRange lr = letter_range(*a.space, a.abar_indices(), +1);
    auto [alo, ahi] = a.space->degree_range();
    if (!lr.any)
        for (long q = lo - 2; q <= hi + 2; ++q) cw.space_complete.insert(q);
    else
        cw.space_complete =
            complete_degrees_for_cap(lr.lmin, lr.lmax, alo, ahi, bar.cap, lo, hi);
    return cw;
}

OneSidedBarLeft one_sided_bar_left(const DgKRing& a, int weight_cap) {
    OneSidedBarLeft r;
    r.bar = BarConstruction::build(a, weight_cap);
    const auto& b = r.bar;
    const uint32_t p = a.p;

    std::vector<BasisElt> belts;
    for (int ai = 0; ai < a.dim(); ++ai) {
        const auto& ae = a.space->basis[ai];
        for (int n = 0; n <= weight_cap; ++n) {
            int nw = n == 0 ? a.t : static_cast<int>(b.words[n].size());
            for (int k = 0; k < nw; ++k) {
                int wli = n == 0 ? k : a.space->basis[b.words[n][k].front()].li;
                if (ae.ri != wli) continue;
                int wri = n == 0 ? k : a.space->basis[b.words[n][k].back()].ri;
                long wdeg = n == 0 ? 0 : b.word_deg(b.words[n][k]);
                std::string wlab = n == 0 ? "[]" : b.wspace[n]->basis[k].label;
                r.tindex[{ai, n, k}] = static_cast<int>(r.tuples.size());
                r.tuples.emplace_back(ai, n, k);
                belts.push_back({ae.label + "(x)" + wlab, ae.li, wri, ae.deg + wdeg});
            }
        }
    }
    r.total = make_space(a.t, p, belts);
    auto tidx = [&](int ai, int n, int k) {
        auto it = r.tindex.find({ai, n, k});
        return it == r.tindex.end() ? -1 : it->second;
    };

    r.d = BlockMap(r.total, r.total, -1);
    for (int ti = 0; ti < static_cast<int>(r.tuples.size()); ++ti) {
        auto [ai, n, k] = r.tuples[ti];
        long adeg = a.space->basis[ai].deg;
        SparseVec img;
        // d_A (x) id
        for (const auto& [x, c] : a.diff.col(ai))
            vec_axpy(img, c, SparseVec{{tidx(x, n, k), Scalar::one(p)}});
        // id (x) d_BA
        if (n >= 1) {
            Scalar sgn = Scalar(pow_sign(adeg), p);
            for (const auto& [x, c] : b.d0[n].col(k))
                vec_axpy(img, sgn * c, SparseVec{{tidx(ai, n, x), Scalar::one(p)}});
            for (const auto& [x, c] : b.d1[n].col(k)) {
                int tk = n - 1 == 0 ? tidx(ai, 0, a.space->basis[ai].ri)
                                    : tidx(ai, n - 1, x);
                vec_axpy(img, sgn * c, SparseVec{{tk, Scalar::one(p)}});
            }
        }
        // - d^l_pi: split off the first letter, multiply into a
        if (n >= 1) {
            const auto& w = b.words[n][k];
            Scalar sgn = Scalar(-pow_sign(adeg), p);
            SparseVec prod = a.mul(SparseVec{{ai, Scalar::one(p)}},
                                   SparseVec{{w.front(), Scalar::one(p)}});
            for (const auto& [x, c] : prod) {
                int tk;
                if (n - 1 == 0) {
                    tk = tidx(x, 0, a.space->basis[x].ri);
                } else {
                    std::vector<int> nw(w.begin() + 1, w.end());
                    tk = tidx(x, n - 1, b.index(n - 1, nw));
                }
                vec_axpy(img, sgn * c, SparseVec{{tk, Scalar::one(p)}});
            }
        }
        r.d.add_col(ti, img);
    }
    return r;
}

ComplexWindow OneSidedBarLeft::window() const {
    ComplexWindow cw;
    cw.total = total;
    cw.d = d;
    auto [lo, hi] = total->degree_range();
    cw.lo = lo;
    cw.hi = hi;
    const DgKRing& a = bar.A;
    LetterRange lr = letter_range(*a.space, a.abar_indices(), +1);
    auto [alo, ahi] = a.space->degree_range();
    if (!lr.any)
        for (long q = lo - 2; q <= hi + 2; ++q) cw.space_complete.insert(q);
    else
        cw.space_complete =
            complete_degrees_for_cap(lr.lmin, lr.lmax, alo, ahi, bar.cap, lo, hi);
    return cw;
}

OneSidedCobar one_sided_cobar(const DgKCoring& c, int weight_cap, bool omega_on_left) {
    OneSidedCobar r;
    r.omega = CobarConstruction::build(c, weight_cap);
    r.omega_on_left = omega_on_left;
    const auto& o = r.omega;
    const uint32_t p = c.p;

    std::vector<BasisElt> belts;
    for (int n = 0; n <= weight_cap; ++n) {
        int nw = n == 0 ? c.t : static_cast<int>(o.words[n].size());
        for (int k = 0; k < nw; ++k) {
            int wli = n == 0 ? k : c.space->basis[o.words[n][k].front()].li;
            int wri = n == 0 ? k : c.space->basis[o.words[n][k].back()].ri;
            long wdeg = n == 0 ? 0 : o.word_deg(o.words[n][k]);
            std::string wlab = n == 0 ? "<>" : o.wspace[n]->basis[k].label;
            for (int ci = 0; ci < c.dim(); ++ci) {
                const auto& ce = c.space->basis[ci];
                if (omega_on_left) {
                    if (wri != ce.li) continue;
                    r.tindex[{n, k, ci}] = static_cast<int>(r.tuples.size());
                    r.tuples.emplace_back(n, k, ci);
                    belts.push_back({wlab + "(x)" + ce.label, wli, ce.ri, wdeg + ce.deg});
                } else {
                    if (ce.ri != wli) continue;
                    r.tindex[{n, k, ci}] = static_cast<int>(r.tuples.size());
                    r.tuples.emplace_back(n, k, ci);
                    belts.push_back({ce.label + "(x)" + wlab, ce.li, wri, ce.deg + wdeg});
                }
            }
        }
    }
    r.total = make_space(c.t, p, belts);
    auto tidx = [&](int n, int k, int ci) {
        auto it = r.tindex.find({n, k, ci});
        return it == r.tindex.end() ? -1 : it->second;
    };

    if (!omega_on_left)
        throw std::invalid_argument("one_sided_cobar: only the Omega-left variant is built");

    r.d = BlockMap(r.total, r.total, -1);
    for (int ti = 0; ti < static_cast<int>(r.tuples.size()); ++ti) {
        auto [n, k, ci] = r.tuples[ti];
        long wdeg = n == 0 ? 0 : o.word_deg(o.words[n][k]);
        SparseVec img;
        // d_Omega (x) id (d1 truncated at the cap)
        if (n >= 1) {
            for (const auto& [x, cc2] : o.d0[n].col(k))
                vec_axpy(img, cc2, SparseVec{{tidx(n, x, ci), Scalar::one(p)}});
            if (n + 1 <= weight_cap && o.d1[n].valid())
                for (const auto& [x, cc2] : o.d1[n].col(k))
                    vec_axpy(img, cc2, SparseVec{{tidx(n + 1, x, ci), Scalar::one(p)}});
        }
        // id (x) d_C
        {
            Scalar sgn = Scalar(pow_sign(wdeg), p);
            for (const auto& [x, cc2] : c.diff.col(ci))
                vec_axpy(img, sgn * cc2, SparseVec{{tidx(n, k, x), Scalar::one(p)}});
        }
        // - d^l_iota: u (x) c -> -(-1)^{|u|} (u<c_1>) (x) c_2 over Delta(c)
        {
            auto it = c.delta.find(ci);
            if (it != c.delta.end()) {
                Scalar sgn = Scalar(-pow_sign(wdeg), p);
                for (const auto& tm : it->second) {
                    if (tm.a < c.t) continue;  // iota kills K
                    if (n + 1 > weight_cap) continue;
                    std::vector<int> nw =
                        n == 0 ? std::vector<int>{} : o.words[n][k];
                    nw.push_back(tm.a);
                    int wk = o.index(n + 1, nw);
                    if (wk < 0) continue;
                    vec_axpy(img, sgn * tm.c,
                             SparseVec{{tidx(n + 1, wk, tm.b), Scalar::one(p)}});
                }
            }
        }
        r.d.add_col(ti, img);
    }

    SpaceRef kk = k_unit_space(c.t, p);
    r.proj = BlockMap(r.total, kk, 0);
    r.incl = BlockMap(kk, r.total, 0);
    for (int l = 0; l < c.t; ++l) {
        int ti = tidx(0, l, l);
        r.proj.add(l, ti, Scalar::one(p));
        r.incl.add(ti, l, Scalar::one(p));
    }

    // s(u<c> (x) 1) = (-1)^{|u|+1} u (x) c; zero on Cbar module slots
    r.s = BlockMap(r.total, r.total, 1);
    for (int ti = 0; ti < static_cast<int>(r.tuples.size()); ++ti) {
        auto [n, k, ci] = r.tuples[ti];
        if (ci >= c.t || n == 0) continue;
        const auto& w = o.words[n][k];
        int last = w.back();
        if (c.space->basis[last].ri != ci) continue;
        long prefix_deg = o.word_deg(w) - (c.space->basis[last].deg - 1);
        int tk;
        if (n - 1 == 0) {
            tk = tidx(0, c.space->basis[last].li, last);
        } else {
            std::vector<int> nw(w.begin(), w.end() - 1);
            tk = tidx(n - 1, o.index(n - 1, nw), last);
        }
        r.s.add(tk, ti, Scalar(-pow_sign(prefix_deg), p));
    }
    return r;
}

Report OneSidedCobar::verify() const {
    Report rep;
    rep.add("p o i = id", map_equal(compose(proj, incl), identity_map(incl.src())));
    BlockMap lhs = map_add(identity_map(total), map_negate(compose(incl, proj)));
    BlockMap rhs = map_add(compose(d, s), compose(s, d));
    bool ok = true;
    std::string w;
    for (int ti = 0; ti < total->dim() && ok; ++ti) {
        auto [n, k, ci] = tuples[ti];
        (void)k;
        (void)ci;
        if (n >= omega.cap - 1) continue;  // d raises weight; s may then ride the edge
        if (lhs.col(ti) != rhs.col(ti)) {
            ok = false;
            w = total->basis[ti].label;
        }
    }
    rep.add("id - i p = ds + sd (interior)", ok, w);
    return rep;
}

ComplexWindow OneSidedCobar::window() const {
    ComplexWindow cw;
    cw.total = total;
    cw.d = d;
    auto [lo, hi] = total->degree_range();
    cw.lo = lo;
    cw.hi = hi;
    const DgKCoring& c = omega.C;
    LetterRange lr = letter_range(*c.space, c.cbar_indices(), -1);
    auto [clo, chi] = c.space->degree_range();
    if (!lr.any)
        for (long q = lo - 2; q <= hi + 2; ++q) cw.space_complete.insert(q);
    else
        cw.space_complete =
            complete_degrees_for_cap(lr.lmin, lr.lmax, clo, chi, omega.cap, lo, hi);
    return cw;
}

// ---------------------------------------------------------------- two-sided

TwoSidedBar two_sided_bar(const DgKRing& a, int weight_cap) {
    TwoSidedBar r;
    r.bar = BarConstruction::build(a, weight_cap);
    const auto& b = r.bar;
    const uint32_t p = a.p;

    std::vector<BasisElt> belts;
    for (int n = 0; n <= weight_cap; ++n) {
        int nw = n == 0 ? a.t : static_cast<int>(b.words[n].size());
        for (int k = 0; k < nw; ++k) {
            int wli = n == 0 ? k : a.space->basis[b.words[n][k].front()].li;
            int wri = n == 0 ? k : a.space->basis[b.words[n][k].back()].ri;
            long wdeg = n == 0 ? 0 : b.word_deg(b.words[n][k]);
            std::string wlab = n == 0 ? "[]" : b.wspace[n]->basis[k].label;
            for (int a0 = 0; a0 < a.dim(); ++a0) {
                if (a.space->basis[a0].ri != wli) continue;
                for (int a1 = 0; a1 < a.dim(); ++a1) {
                    if (wri != a.space->basis[a1].li) continue;
                    r.tindex[{a0, n, k, a1}] = static_cast<int>(r.tuples.size());
                    r.tuples.emplace_back(a0, n, k, a1);
                    belts.push_back({a.space->basis[a0].label + "(x)" + wlab + "(x)" +
                                         a.space->basis[a1].label,
                                     a.space->basis[a0].li, a.space->basis[a1].ri,
                                     a.space->basis[a0].deg + wdeg +
                                         a.space->basis[a1].deg});
                }
            }
        }
    }
    r.total = make_space(a.t, p, belts);
    auto tidx = [&](int a0, int n, int k, int a1) {
        auto it = r.tindex.find({a0, n, k, a1});
        return it == r.tindex.end() ? -1 : it->second;
    };

    r.d = BlockMap(r.total, r.total, -1);
    for (int ti = 0; ti < static_cast<int>(r.tuples.size()); ++ti) {
        auto [a0, n, k, a1] = r.tuples[ti];
        long d0deg = a.space->basis[a0].deg;
        long wdeg = n == 0 ? 0 : b.word_deg(b.words[n][k]);
        SparseVec img;
        // d_A (x) id (x) id
        for (const auto& [x, c] : a.diff.col(a0))
            vec_axpy(img, c, SparseVec{{tidx(x, n, k, a1), Scalar::one(p)}});
        // id (x) d_BA (x) id
        if (n >= 1) {
            Scalar sgn = Scalar(pow_sign(d0deg), p);
            for (const auto& [x, c] : b.d0[n].col(k))
                vec_axpy(img, sgn * c, SparseVec{{tidx(a0, n, x, a1), Scalar::one(p)}});
            for (const auto& [x, c] : b.d1[n].col(k)) {
                int tk = n - 1 == 0
                             ? tidx(a0, 0, a.space->basis[a0].ri, a1)
                             : tidx(a0, n - 1, x, a1);
                vec_axpy(img, sgn * c, SparseVec{{tk, Scalar::one(p)}});
            }
        }
        // id (x) id (x) d_A
        {
            Scalar sgn = Scalar(pow_sign(d0deg + wdeg), p);
            for (const auto& [x, c] : a.diff.col(a1))
                vec_axpy(img, sgn * c, SparseVec{{tidx(a0, n, k, x), Scalar::one(p)}});
        }
        // id (x) d^r_pi: last letter multiplies into a1
        if (n >= 1) {
            const auto& w = b.words[n][k];
            long pre = wdeg - (a.space->basis[w.back()].deg + 1);
            Scalar sgn = Scalar(pow_sign(d0deg + pre), p);
            SparseVec prod = a.mul(SparseVec{{w.back(), Scalar::one(p)}},
                                   SparseVec{{a1, Scalar::one(p)}});
            for (const auto& [x, c] : prod) {
                int tk;
                if (n - 1 == 0) {
                    tk = tidx(a0, 0, a.space->basis[a0].ri, x);
                } else {
                    std::vector<int> nw(w.begin(), w.end() - 1);
                    tk = tidx(a0, n - 1, b.index(n - 1, nw), x);
                }
                vec_axpy(img, sgn * c, SparseVec{{tk, Scalar::one(p)}});
            }
        }
        // - d^l_pi (x) id: first letter multiplies into a0
        if (n >= 1) {
            const auto& w = b.words[n][k];
            Scalar sgn = Scalar(-pow_sign(d0deg), p);
            SparseVec prod = a.mul(SparseVec{{a0, Scalar::one(p)}},
                                   SparseVec{{w.front(), Scalar::one(p)}});
            for (const auto& [x, c] : prod) {
                int tk;
                if (n - 1 == 0) {
                    tk = tidx(x, 0, a.space->basis[x].ri, a1);
                } else {
                    std::vector<int> nw(w.begin() + 1, w.end());
                    tk = tidx(x, n - 1, b.index(n - 1, nw), a1);
                }
                vec_axpy(img, sgn * c, SparseVec{{tk, Scalar::one(p)}});
            }
        }
        r.d.add_col(ti, img);
    }

    r.mu_tilde = BlockMap(r.total, a.space, 0);
    for (int ti = 0; ti < static_cast<int>(r.tuples.size()); ++ti) {
        auto [a0, n, k, a1] = r.tuples[ti];
        (void)k;
        if (n != 0) continue;
        SparseVec prod = a.mul(SparseVec{{a0, Scalar::one(p)}},
                               SparseVec{{a1, Scalar::one(p)}});
        r.mu_tilde.add_col(ti, prod);
    }
    r.incl = BlockMap(a.space, r.total, 0);
    for (int ai = 0; ai < a.dim(); ++ai) {
        int l = a.space->basis[ai].li;
        r.incl.add(tidx(a.unit_index(l), 0, l, ai), ai, Scalar::one(p));
    }

    // s(a_0 (x) [w] (x) a_1) = 1 (x) [abar_0|w] (x) a_1
    r.s = BlockMap(r.total, r.total, 1);
    for (int ti = 0; ti < static_cast<int>(r.tuples.size()); ++ti) {
        auto [a0, n, k, a1] = r.tuples[ti];
        if (a.is_unit_elt(a0)) continue;
        if (n + 1 > weight_cap) continue;
        std::vector<int> nw;
        nw.push_back(a0);
        if (n >= 1) {
            const auto& w = b.words[n][k];
            nw.insert(nw.end(), w.begin(), w.end());
        }
        int wk = b.index(n + 1, nw);
        if (wk < 0) throw std::logic_error("two-sided: s image missing");
        int l = a.space->basis[a0].li;
        r.s.add(tidx(a.unit_index(l), n + 1, wk, a1), ti, Scalar::one(p));
    }
    return r;
}

int TwoSidedBar::weight_of(int tuple_index) const {
    return std::get<1>(tuples[tuple_index]);
}

Report TwoSidedBar::verify() const {
    Report rep;
    rep.add("mu~ o i = id_A", map_equal(compose(mu_tilde, incl), identity_map(incl.src())));
    BlockMap lhs = map_add(compose(incl, mu_tilde), map_negate(identity_map(total)));
    BlockMap rhs = map_add(compose(d, s), compose(s, d));
    bool ok = true;
    std::string w;
    for (int ti = 0; ti < total->dim() && ok; ++ti) {
        if (weight_of(ti) >= bar.cap) continue;
        if (lhs.col(ti) != rhs.col(ti)) {
            ok = false;
            w = total->basis[ti].label;
        }
    }
    rep.add("i mu~ - id = ds + sd (interior)", ok, w);
    return rep;
}

ComplexWindow TwoSidedBar::window() const {
    ComplexWindow cw;
    cw.total = total;
    cw.d = d;
    auto [lo, hi] = total->degree_range();
    cw.lo = lo;
    cw.hi = hi;
    const DgKRing& a = bar.A;
    LetterRange lr = letter_range(*a.space, a.abar_indices(), +1);
    auto [alo, ahi] = a.space->degree_range();
    if (!lr.any)
        for (long q = lo - 2; q <= hi + 2; ++q) cw.space_complete.insert(q);
    else
        cw.space_complete = complete_degrees_for_cap(lr.lmin, lr.lmax, 2 * alo, 2 * ahi,
                                                     bar.cap, lo, hi);
    return cw;
}

// -------------------------------------------------- Omega B A counit

CobarBarCounit cobar_bar_counit(const DgKRing& a, int bar_cap, int cobar_cap) {
    CobarBarCounit r;
    r.barA = BarConstruction::build(a, bar_cap);
    r.bar_coring = r.barA.as_coring();
    r.omega = CobarConstruction::build(r.bar_coring, cobar_cap);
    const uint32_t p = a.p;

    // total space of the cobar window
    std::vector<BasisElt> belts;
    std::vector<std::pair<int, int>> ids;  // (weight, word idx)
    for (int n = 0; n <= cobar_cap; ++n) {
        int nw = n == 0 ? a.t : static_cast<int>(r.omega.words[n].size());
        for (int k = 0; k < nw; ++k) {
            if (n == 0) {
                belts.push_back(r.omega.wspace[0]->basis[k]);
            } else {
                belts.push_back(r.omega.wspace[n]->basis[k]);
            }
            ids.emplace_back(n, k);
        }
    }
    r.total = make_space(a.t, p, belts);
    std::map<std::pair<int, int>, int> gid;
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) gid[ids[i]] = i;

    // letters of a cobar word are bar-coring indices; decode to bar words
    auto letter_layout = [&](int ci) { return r.barA.coring_layout(ci); };

    r.eps = BlockMap(r.total, a.space, 0);
    r.lambda = BlockMap(a.space, r.total, 0);
    r.s = BlockMap(r.total, r.total, 1);

    for (int gi = 0; gi < static_cast<int>(ids.size()); ++gi) {
        auto [n, k] = ids[gi];
        if (n == 0) {
            r.eps.add(a.unit_index(k), gi, Scalar::one(p));
            continue;
        }
        const auto& w = r.omega.words[n][k];
        bool all_single = true;
        for (int ci : w)
            if (letter_layout(ci).first != 1) all_single = false;
        if (all_single) {
            SparseVec prod{{a.unit_index(
                                a.space->basis[r.barA.words[1][letter_layout(w[0]).second][0]]
                                    .li),
                            Scalar::one(p)}};
            for (int ci : w) {
                int ai = r.barA.words[1][letter_layout(ci).second][0];
                prod = a.mul(prod, SparseVec{{ai, Scalar::one(p)}});
            }
            r.eps.add_col(gi, prod);
        }
    }
    for (int ai = 0; ai < a.dim(); ++ai) {
        if (a.is_unit_elt(ai)) {
            r.lambda.add(gid.at({0, ai}), ai, Scalar::one(p));
        } else {
            int li1 = r.barA.index(1, {ai});
            int ci = r.barA.coring_index(1, li1);
            int wi = r.omega.index(1, {ci});
            r.lambda.add(gid.at({1, wi}), ai, Scalar::one(p));
        }
    }

    // homotopy s per the stated case split
    for (int gi = 0; gi < static_cast<int>(ids.size()); ++gi) {
        auto [n, k] = ids[gi];
        if (n == 0) continue;
        const auto& w = r.omega.words[n][k];
        // leading run of weight-1 letters
        int run = 0;
        while (run < n && letter_layout(w[run]).first == 1) ++run;
        if (run == 0) continue;  // first letter heavy: s = 0
        std::vector<int> arun;   // A-indices of the leading letters
        for (int i = 0; i < run; ++i)
            arun.push_back(r.barA.words[1][letter_layout(w[i]).second][0]);
        SparseVec out;
        // beta_i = |a_1| + ... + |a_i| in A-degrees
        auto beta = [&](int i) {
            long s2 = 0;
            for (int j = 0; j < i; ++j) s2 += a.space->basis[arun[j]].deg;
            return s2;
        };
        // merge terms: <[a_1...a_{i-1}|a_i]|[a_{i+1}]|...>
        for (int i = 2; i <= run; ++i) {
            SparseVec prod{{arun[0], Scalar::one(p)}};
            for (int j = 1; j < i - 1; ++j)
                prod = a.mul(prod, SparseVec{{arun[j], Scalar::one(p)}});
            prod = a.abar_project(prod);
            Scalar sgn = Scalar(pow_sign(beta(i - 1) + 1), p);
            for (const auto& [x, c] : prod) {
                int bk = r.barA.index(2, {x, arun[i - 1]});
                if (bk < 0) continue;
                int ci2 = r.barA.coring_index(2, bk);
                std::vector<int> nw;
                nw.push_back(ci2);
                for (int j = i; j < run; ++j) nw.push_back(w[j]);
                for (int j = run; j < n; ++j) nw.push_back(w[j]);
                int wk = r.omega.index(n - i + 1, nw);
                if (wk < 0) throw std::logic_error("counit s: image word missing");
                vec_axpy(out, sgn * c, SparseVec{{gid.at({n - i + 1, wk}), Scalar::one(p)}});
            }
        }
        // absorb into the following heavy letter: <[a_1...a_run|b_1|...|b_m]|...>
        if (run < n) {
            auto [bw, bk] = letter_layout(w[run]);
            const auto& bword = r.barA.words[bw][bk];
            if (bw + 1 <= r.barA.cap) {
                SparseVec prod{{arun[0], Scalar::one(p)}};
                for (int j = 1; j < run; ++j)
                    prod = a.mul(prod, SparseVec{{arun[j], Scalar::one(p)}});
                prod = a.abar_project(prod);
                Scalar sgn = Scalar(pow_sign(beta(run) + 1), p);
                for (const auto& [x, c] : prod) {
                    std::vector<int> nb;
                    nb.push_back(x);
                    nb.insert(nb.end(), bword.begin(), bword.end());
                    int mk = r.barA.index(bw + 1, nb);
                    if (mk < 0) continue;
                    int ci2 = r.barA.coring_index(bw + 1, mk);
                    std::vector<int> nw;
                    nw.push_back(ci2);
                    for (int j = run + 1; j < n; ++j) nw.push_back(w[j]);
                    int wk = r.omega.index(n - run, nw);
                    if (wk < 0) throw std::logic_error("counit s: merge word missing");
                    vec_axpy(out, sgn * c,
                             SparseVec{{gid.at({n - run, wk}), Scalar::one(p)}});
                }
            }
        }
        r.s.add_col(gi, out);
    }
    return r;
}

Report CobarBarCounit::verify() const {
    Report rep;
    rep.add("eps o lambda = id_A",
            map_equal(compose(eps, lambda), identity_map(lambda.src())));
    // lambda eps - id = ds + sd on the interior
    // total differential of Omega BA on the window
    const uint32_t p = barA.A.p;
    BlockMap dtot(total, total, -1);
    {
        std::map<std::pair<int, int>, int> gid;
        int gi = 0;
        for (int n = 0; n <= omega.cap; ++n) {
            int nw = n == 0 ? barA.A.t : static_cast<int>(omega.words[n].size());
            for (int k = 0; k < nw; ++k) gid[{n, k}] = gi++;
        }
        for (auto& [key, g] : gid) {
            auto [n, k] = key;
            if (n == 0) continue;
            for (const auto& [x, c] : omega.d0[n].col(k)) dtot.add(gid.at({n, x}), g, c);
            if (n + 1 <= omega.cap && omega.d1[n].valid())
                for (const auto& [x, c] : omega.d1[n].col(k))
                    dtot.add(gid.at({n + 1, x}), g, c);
        }
        (void)p;
    }
    BlockMap lhs = map_add(compose(lambda, eps), map_negate(identity_map(total)));
    BlockMap rhs = map_add(compose(dtot, s), compose(s, dtot));
    bool ok = true;
    std::string w;
    int gi = 0;
    for (int n = 0; n <= omega.cap && ok; ++n) {
        int nw = n == 0 ? barA.A.t : static_cast<int>(omega.words[n].size());
        for (int k = 0; k < nw && ok; ++k, ++gi) {
            if (n >= omega.cap) continue;  // d1 into cap+1 truncated
            bool letters_ok = true;
            if (n >= 1)
                for (int ci : omega.words[n][k])
                    if (barA.coring_layout(ci).first >= barA.cap) letters_ok = false;
            if (!letters_ok) continue;
            if (lhs.col(gi) != rhs.col(gi)) {
                ok = false;
                w = total->basis[gi].label;
            }
        }
    }
    rep.add("lambda eps - id = ds + sd (interior)", ok, w);
    return rep;
}

// -------------------------------------------------- B Omega C unit

BarOmegaUnit bar_omega_unit(const DgKCoring& c, int bar_cap, int letter_cap) {
    BarOmegaUnit r;
    r.C = c;
    r.bar_cap = bar_cap;
    r.letter_cap = letter_cap;
    auto cc = cocompleteness_check(c);
    if (!cc.cocomplete) throw std::invalid_argument("bar_omega_unit: not cocomplete");
    r.coradical_length = cc.coradical_length;
    r.omega = CobarConstruction::build(c, letter_cap);
    const auto& o = r.omega;
    const uint32_t p = c.p;

    // enumerate bar words over cobar letters
    std::vector<std::vector<std::pair<int, int>>> cur;  // weight-0: one empty per idem
    std::vector<BasisElt> belts;
    for (int l = 0; l < c.t; ++l) {
        r.tindex[{{0, l}}] = static_cast<int>(r.tuples.size());
        // encode weight-0 as a single pseudo-letter (0, l)
        r.tuples.push_back({{0, l}});
        belts.push_back({"[]e" + std::to_string(l + 1), l, l, 0});
    }
    std::vector<std::vector<std::pair<int, int>>> frontier;
    for (int n = 1; n <= letter_cap; ++n)
        for (int k = 0; k < static_cast<int>(o.words[n].size()); ++k)
            frontier.push_back({{n, k}});
    auto letter_li = [&](std::pair<int, int> L) {
        return c.space->basis[o.words[L.first][L.second].front()].li;
    };
    auto letter_ri = [&](std::pair<int, int> L) {
        return c.space->basis[o.words[L.first][L.second].back()].ri;
    };
    auto letter_deg = [&](std::pair<int, int> L) {
        return o.word_deg(o.words[L.first][L.second]);
    };
    auto letters_of = [&](const std::vector<std::pair<int, int>>& t) {
        int sum = 0;
        for (auto& L : t) sum += L.first;
        return sum;
    };
    std::vector<std::vector<std::pair<int, int>>> all = frontier;
    for (int m = 2; m <= bar_cap; ++m) {
        std::vector<std::vector<std::pair<int, int>>> next;
        for (const auto& t : all) {
            if (static_cast<int>(t.size()) != m - 1) continue;
            for (int n = 1; n <= letter_cap; ++n) {
                if (letters_of(t) + n > letter_cap) continue;
                for (int k = 0; k < static_cast<int>(o.words[n].size()); ++k)
                    if (letter_ri(t.back()) == letter_li({n, k})) {
                        auto nt = t;
                        nt.emplace_back(n, k);
                        next.push_back(nt);
                    }
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        if (next.empty()) break;
    }
    for (const auto& t : all) {
        std::string lab = "[";
        long deg = 0;
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) lab += "|";
            lab += o.wspace[t[i].first]->basis[t[i].second].label;
            deg += letter_deg(t[i]) + 1;
        }
        lab += "]";
        r.tindex[t] = static_cast<int>(r.tuples.size());
        r.tuples.push_back(t);
        belts.push_back({lab, letter_li(t.front()), letter_ri(t.back()), deg});
    }
    r.total = make_space(c.t, p, belts);

    auto tidx = [&](const std::vector<std::pair<int, int>>& t) {
        auto it = r.tindex.find(t);
        return it == r.tindex.end() ? -1 : it->second;
    };

    // differential: bar d0 (letterwise d_Omega) + bar d1 (concatenate letters)
    r.d = BlockMap(r.total, r.total, -1);
    for (int ti = c.t; ti < static_cast<int>(r.tuples.size()); ++ti) {
        const auto& t = r.tuples[ti];
        int m = static_cast<int>(t.size());
        SparseVec img;
        long pre = 0;
        for (int i = 0; i < m; ++i) {
            auto [n, k] = t[i];
            Scalar sgn = Scalar(pow_sign(pre + i + 1), p);
            // d_Omega letter: d0 + d1
            for (const auto& [x, cc2] : o.d0[n].col(k)) {
                auto nt = t;
                nt[i] = {n, x};
                vec_axpy(img, sgn * cc2, SparseVec{{tidx(nt), Scalar::one(p)}});
            }
            if (n + 1 <= letter_cap && o.d1[n].valid() &&
                letters_of(t) + 1 <= letter_cap) {
                for (const auto& [x, cc2] : o.d1[n].col(k)) {
                    auto nt = t;
                    nt[i] = {n + 1, x};
                    int tk = tidx(nt);
                    if (tk >= 0) vec_axpy(img, sgn * cc2, SparseVec{{tk, Scalar::one(p)}});
                }
            }
            pre += letter_deg(t[i]);
        }
        // bar d1: merge adjacent letters (concatenation product of Omega),
        // sign (-1)^{|u_1|+...+|u_i| + i - 1} for the 1-based merge position i
        for (int i = 0; i + 1 < m; ++i) {
            long su = 0;
            for (int j = 0; j <= i; ++j) su += letter_deg(t[j]);
            Scalar sgn = Scalar(pow_sign(su + (i + 1) - 1), p);
            const auto& wa = o.words[t[i].first][t[i].second];
            const auto& wb = o.words[t[i + 1].first][t[i + 1].second];
            std::vector<int> cat = wa;
            cat.insert(cat.end(), wb.begin(), wb.end());
            int nn = t[i].first + t[i + 1].first;
            int ck = o.index(nn, cat);
            if (ck < 0) throw std::logic_error("bar_omega_unit: concat missing");
            std::vector<std::pair<int, int>> nt;
            for (int j = 0; j < i; ++j) nt.push_back(t[j]);
            nt.emplace_back(nn, ck);
            for (int j = i + 2; j < m; ++j) nt.push_back(t[j]);
            int tk = m - 1 == 0 ? -1 : tidx(nt);
            if (tk >= 0) vec_axpy(img, sgn, SparseVec{{tk, Scalar::one(p)}});
        }
        r.d.add_col(ti, img);
    }

    // nu: x -> sum_i [<x_i^1>|...|<x_i^{i+1}>]
    r.nu = BlockMap(c.space, r.total, 0);
    for (int l = 0; l < c.t; ++l) r.nu.add(tidx({{0, l}}), l, Scalar::one(p));
    {
        // iterated reduced coproducts as word lists
        for (int ci : c.cbar_indices()) {
            SparseVec img;
            std::map<std::vector<int>, Scalar> cur2{{{ci}, Scalar::one(p)}};
            for (int it = 0;; ++it) {
                for (const auto& [wd, coeff] : cur2) {
                    // bar word of singleton letters
                    std::vector<std::pair<int, int>> t;
                    bool ok = true;
                    for (int x : wd) {
                        int k = o.index(1, {x});
                        if (k < 0) ok = false;
                        t.emplace_back(1, k);
                    }
                    if (!ok) throw std::logic_error("nu: letter missing");
                    int tk = tidx(t);
                    if (tk < 0) throw std::logic_error("nu: word exceeds caps");
                    vec_axpy(img, coeff, SparseVec{{tk, Scalar::one(p)}});
                }
                // next iterate: apply Deltabar to the first slot
                std::map<std::vector<int>, Scalar> next;
                for (const auto& [wd, coeff] : cur2)
                    for (const auto& tm : c.reduced_delta(wd[0])) {
                        std::vector<int> nw{tm.a, tm.b};
                        nw.insert(nw.end(), wd.begin() + 1, wd.end());
                        auto itn = next.find(nw);
                        Scalar add = coeff * tm.c;
                        if (itn == next.end())
                            next.emplace(nw, add);
                        else {
                            itn->second += add;
                            if (itn->second.is_zero()) next.erase(itn);
                        }
                    }
                if (next.empty()) break;
                cur2 = std::move(next);
                if (it > r.coradical_length + 2)
                    throw std::logic_error("nu: runaway coproduct");
            }
            r.nu.add_col(ci, img);
        }
    }

    // rho: weight-0 and singleton weight-1 letters back to C
    r.rho = BlockMap(r.total, c.space, 0);
    for (int l = 0; l < c.t; ++l) r.rho.add(l, tidx({{0, l}}), Scalar::one(p));
    for (int ti = c.t; ti < static_cast<int>(r.tuples.size()); ++ti) {
        const auto& t = r.tuples[ti];
        if (t.size() == 1 && t[0].first == 1)
            r.rho.add(o.words[1][t[0].second][0], ti, Scalar::one(p));
    }

    // h: split the last letter when its weight >= 2
    r.h = BlockMap(r.total, r.total, 1);
    for (int ti = c.t; ti < static_cast<int>(r.tuples.size()); ++ti) {
        const auto& t = r.tuples[ti];
        int m = static_cast<int>(t.size());
        auto [lw, lk] = t.back();
        if (lw < 2) continue;
        const auto& lword = o.words[lw][lk];
        // gamma = sum |u_j| (j < m) + sum |c_j| (j < p) + (m-1) + p over the
        // paper's indexing [a_1|..|a_n|<c_1..c_p>] with n = m-1
        long gamma = 0;
        for (int j = 0; j + 1 < m; ++j) gamma += letter_deg(t[j]);
        for (int j = 0; j + 1 < lw; ++j) gamma += c.space->basis[lword[j]].deg;
        gamma += (m - 1) + lw;
        Scalar sgn = Scalar(pow_sign(gamma), p);
        int last = lword.back();
        SparseVec img;
        // i-th term: [..|<c_1..c_{p-1}>|<c_last_i^1>|..|<c_last_i^{i+1}>]
        std::map<std::vector<int>, Scalar> cur2{{{last}, Scalar::one(p)}};
        for (int it = 0;; ++it) {
            for (const auto& [wd, coeff] : cur2) {
                std::vector<std::pair<int, int>> nt(t.begin(), t.end() - 1);
                std::vector<int> head(lword.begin(), lword.end() - 1);
                int hk = o.index(lw - 1, head);
                if (hk < 0) throw std::logic_error("h: head word missing");
                nt.emplace_back(lw - 1, hk);
                bool ok = true;
                for (int x : wd) {
                    int k2 = o.index(1, {x});
                    if (k2 < 0) ok = false;
                    nt.emplace_back(1, k2);
                }
                int tk = ok ? tidx(nt) : -1;
                if (tk >= 0) vec_axpy(img, sgn * coeff, SparseVec{{tk, Scalar::one(p)}});
            }
            std::map<std::vector<int>, Scalar> next;
            for (const auto& [wd, coeff] : cur2)
                for (const auto& tm : c.reduced_delta(wd[0])) {
                    std::vector<int> nw{tm.a, tm.b};
                    nw.insert(nw.end(), wd.begin() + 1, wd.end());
                    auto itn = next.find(nw);
                    Scalar add = coeff * tm.c;
                    if (itn == next.end())
                        next.emplace(nw, add);
                    else {
                        itn->second += add;
                        if (itn->second.is_zero()) next.erase(itn);
                    }
                }
            if (next.empty()) break;
            cur2 = std::move(next);
            if (it > r.coradical_length + 2) throw std::logic_error("h: runaway");
        }
        r.h.add_col(ti, img);
    }
    return r;
}

Report BarOmegaUnit::verify() const {
    Report rep;
    rep.add("rho o nu = id_C", map_equal(compose(rho, nu), identity_map(C.space)));
    BlockMap lhs = map_add(compose(nu, rho), map_negate(identity_map(total)));
    BlockMap rhs = map_add(compose(d, h), compose(h, d));
    bool ok = true;
    std::string w;
    for (int ti = 0; ti < total->dim() && ok; ++ti) {
        const auto& t = tuples[ti];
        bool weight0 = (ti < C.t);
        int m = weight0 ? 0 : static_cast<int>(t.size());
        int letters = 0;
        if (!weight0)
            for (auto& L : t) letters += L.first;
        if (m + coradical_length > bar_cap) continue;
        if (letters + 1 > letter_cap) continue;
        if (lhs.col(ti) != rhs.col(ti)) {
            ok = false;
            w = total->basis[ti].label;
        }
    }
    rep.add("nu rho - id = dh + hd (interior)", ok, w);
    return rep;
}

}  // namespace hhcalc
