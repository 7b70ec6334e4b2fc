#include "hhcalc/hochschild.hpp"

#include <cassert>
#include <functional>

namespace hhcalc {

namespace {

// The first summation group of L_f starts at i = 0 (the window beginning at
// a_1). The printed lower bound i = 1 drops that window and breaks the Cartan
// formula; the identity suites pin the corrected bound.
constexpr int kLFirstGroupStart = 0;

// Sign exponent variant for T_{(f,g)}: 0 = verbatim source, which collapses
// to (|g|+1)(eta_p + 1); 1 = the eta_{j-1} reading. Fixed by Lemma T tests.
constexpr int kTSignVariant = 1;

}  // namespace

Hochschild Hochschild::build(const DgKRing& a, int weight_cap) {
    Hochschild h;
    h.A = a;
    h.cap = weight_cap;
    h.bar = BarConstruction::build(a, weight_cap);
    const uint32_t p = a.p;

    std::vector<BasisElt> belts;
    for (int n = 0; n <= weight_cap; ++n) {
        int nw = n == 0 ? a.t : static_cast<int>(h.bar.words[n].size());
        for (int k = 0; k < nw; ++k) {
            int wli = n == 0 ? k : a.space->basis[h.bar.words[n][k].front()].li;
            int wri = n == 0 ? k : a.space->basis[h.bar.words[n][k].back()].ri;
            long wdeg = n == 0 ? 0 : h.bar.word_deg(h.bar.words[n][k]);
            std::string wlab = n == 0 ? "[]" : h.bar.wspace[n]->basis[k].label;
            for (int ai = 0; ai < a.dim(); ++ai) {
                const auto& ae = a.space->basis[ai];
                // cyclic matching: a (x)_{K^e} w
                if (ae.li != wri || ae.ri != wli) continue;
                h.cindex[{ai, n, k}] = static_cast<int>(h.ctuples.size());
                h.ctuples.emplace_back(ai, n, k);
                belts.push_back({ae.label + "(x)" + wlab, 0, 0, ae.deg + wdeg});
            }
        }
    }
    auto sp = std::make_shared<GradedSpace>();
    sp->t = 0;  // cyclic tensor: plain k-space
    sp->p = p;
    sp->basis = std::move(belts);
    sp->finalize();
    h.chain_total = sp;

    // b0 and b1 per the displayed formulas
    h.b0_ = BlockMap(h.chain_total, h.chain_total, -1);
    h.b1_ = BlockMap(h.chain_total, h.chain_total, -1);
    for (int ti = 0; ti < static_cast<int>(h.ctuples.size()); ++ti) {
        auto [ai, n, k] = h.ctuples[ti];
        long a0deg = a.space->basis[ai].deg;
        SparseVec img0, img1;
        // b0: d a0 (x) w + sum (-1)^{eta_{i-1}} a0 (x) [..|d a_i|..]
        for (const auto& [x, c] : a.diff.col(ai))
            vec_axpy(img0, c, h.chain_vec(x, n, n == 0 ? std::vector<int>{} : h.bar.words[n][k],
                                          Scalar::one(p)));
        if (n >= 1) {
            const auto& w = h.bar.words[n][k];
            long eta = a0deg + 1;  // eta_0
            for (int i = 1; i <= n; ++i) {
                Scalar sgn = Scalar(pow_sign(eta), p);
                for (const auto& [x, c] : a.diff.col(w[i - 1])) {
                    auto nw = w;
                    nw[i - 1] = x;
                    vec_axpy(img0, sgn * c, h.chain_vec(ai, n, nw, Scalar::one(p)));
                }
                eta += a.space->basis[w[i - 1]].deg + 1;
            }
            // b1 first term: (-1)^{|a0|+1} a0 a1 (x) [a2..]
            {
                Scalar sgn = Scalar(pow_sign(a0deg + 1), p);
                SparseVec prod = a.mul(SparseVec{{ai, Scalar::one(p)}},
                                       SparseVec{{w[0], Scalar::one(p)}});
                std::vector<int> nw(w.begin() + 1, w.end());
                for (const auto& [x, c] : prod)
                    vec_axpy(img1, sgn * c, h.chain_vec(x, n - 1, nw, Scalar::one(p)));
            }
            // middle: sum_{i=1}^{n-1} (-1)^{eta_i} a0 (x) [..|a_i a_{i+1}|..]
            long etai = a0deg + 1;
            for (int i = 1; i <= n - 1; ++i) {
                etai += a.space->basis[w[i - 1]].deg + 1;
                Scalar sgn = Scalar(pow_sign(etai), p);
                SparseVec prod = a.mul(SparseVec{{w[i - 1], Scalar::one(p)}},
                                       SparseVec{{w[i], Scalar::one(p)}});
                for (const auto& [x, c] : prod) {
                    std::vector<int> nw;
                    nw.insert(nw.end(), w.begin(), w.begin() + (i - 1));
                    nw.push_back(x);
                    nw.insert(nw.end(), w.begin() + i + 1, w.end());
                    vec_axpy(img1, sgn * c, h.chain_vec(ai, n - 1, nw, Scalar::one(p)));
                }
            }
            // last: (-1)^{(eta_{n-1}+1)(|a_n|+1)} a_n a0 (x) [a1..a_{n-1}]
            {
                long etanm1 = a0deg + 1;
                for (int i = 1; i <= n - 1; ++i) etanm1 += a.space->basis[w[i - 1]].deg + 1;
                long an = a.space->basis[w[n - 1]].deg;
                Scalar sgn = Scalar(pow_sign((etanm1 + 1) * (an + 1)), p);
                SparseVec prod = a.mul(SparseVec{{w[n - 1], Scalar::one(p)}},
                                       SparseVec{{ai, Scalar::one(p)}});
                std::vector<int> nw(w.begin(), w.end() - 1);
                for (const auto& [x, c] : prod)
                    vec_axpy(img1, sgn * c, h.chain_vec(x, n - 1, nw, Scalar::one(p)));
            }
        }
        h.b0_.add_col(ti, img0);
        h.b1_.add_col(ti, img1);
    }
    return h;
}

SparseVec Hochschild::chain_vec(int a, int n, const std::vector<int>& w,
                                const Scalar& c) const {
    if (c.is_zero()) return {};
    int k;
    if (n == 0) {
        k = A.space->basis[a].li;
        if (A.space->basis[a].ri != k) return {};  // off-diagonal dies in C_0
    } else {
        k = bar.index(n, w);
        if (k < 0) throw std::logic_error("chain_vec: word missing");
    }
    auto it = cindex.find({a, n, k});
    if (it == cindex.end()) return {};  // cyclic mismatch annihilates
    return SparseVec{{it->second, c}};
}

SparseVec Hochschild::apply_b(const SparseVec& x) const {
    SparseVec y = b0_.apply(x);
    vec_axpy(y, Scalar::one(A.p), b1_.apply(x));
    return y;
}

Hochschild::Cochain Hochschild::zero_cochain(long deg) const {
    Cochain f;
    f.deg = deg;
    f.comp.resize(cap + 1);
    return f;
}

Hochschild::Cochain Hochschild::unit_cochain() const {
    Cochain f = zero_cochain(0);
    f.comp[0] = BlockMap(bar.wspace[0], A.space, 0);
    for (int l = 0; l < A.t; ++l) f.comp[0].add(A.unit_index(l), l, Scalar::one(A.p));
    return f;
}

Hochschild::Cochain Hochschild::add(const Cochain& f, const Cochain& g) const {
    if (f.deg != g.deg && !f.is_zero() && !g.is_zero())
        throw std::invalid_argument("cochain add: degree mismatch");
    Cochain r = zero_cochain(f.is_zero() ? g.deg : f.deg);
    for (int n = 0; n <= cap; ++n) {
        if (f.comp[n].valid() && g.comp[n].valid())
            r.comp[n] = map_add(f.comp[n], g.comp[n]);
        else if (f.comp[n].valid())
            r.comp[n] = f.comp[n];
        else if (g.comp[n].valid())
            r.comp[n] = g.comp[n];
    }
    return r;
}

Hochschild::Cochain Hochschild::scale(const Cochain& f, const Scalar& c) const {
    Cochain r = zero_cochain(f.deg);
    for (int n = 0; n <= cap; ++n)
        if (f.comp[n].valid()) r.comp[n] = map_scale(f.comp[n], c);
    return r;
}

bool Hochschild::equal(const Cochain& f, const Cochain& g) const {
    for (int n = 0; n <= cap; ++n) {
        bool fz = !f.comp[n].valid() || f.comp[n].is_zero();
        bool gz = !g.comp[n].valid() || g.comp[n].is_zero();
        if (fz != gz) return false;
        if (!fz && !map_equal(f.comp[n], g.comp[n])) return false;
    }
    return true;
}

SparseVec Hochschild::coch_val(const Cochain& f, int n, int wi) const {
    if (n > cap || !f.comp[n].valid()) return {};
    return f.comp[n].col(wi);
}

SparseVec Hochschild::coch_val_word(const Cochain& f, const std::vector<int>& w) const {
    int n = static_cast<int>(w.size());
    if (n == 0)
        throw std::logic_error("coch_val_word: weight-0 values need an idempotent");
    if (n > cap || !f.comp[n].valid()) return {};
    int wi = bar.index(n, w);
    if (wi < 0) return {};
    return f.comp[n].col(wi);
}

Hochschild::Cochain Hochschild::delta0(const Cochain& f) const {
    Cochain r = zero_cochain(f.deg - 1);
    for (int n = 0; n <= cap; ++n) {
        if (!f.comp[n].valid()) continue;
        BlockMap t = compose(A.diff, f.comp[n]);
        BlockMap u = compose(f.comp[n], bar.d0[n]);
        r.comp[n] = pow_sign(f.deg) < 0 ? map_add(t, u) : map_add(t, map_negate(u));
    }
    return r;
}

Hochschild::Cochain Hochschild::delta1(const Cochain& f) const {
    Cochain r = zero_cochain(f.deg - 1);
    const uint32_t p = A.p;
    for (int n = 0; n <= cap; ++n) {
        if (!f.comp[n].valid() || f.comp[n].is_zero()) continue;
        if (n + 1 > cap) {
            r.truncated = true;
            continue;
        }
        BlockMap out(bar.wspace[n + 1], A.space, f.deg - 1);
        // middle group = -(-1)^{|f|} f o d1
        {
            BlockMap mid = compose(f.comp[n], bar.d1[n + 1]);
            if (pow_sign(f.deg) > 0) mid = map_negate(mid);
            out = map_add(out, mid);
        }
        for (int k = 0; k < static_cast<int>(bar.words[n + 1].size()); ++k) {
            const auto& w = bar.words[n + 1][k];
            // (-1)^{|f|(|a_1|+1)} a_1 f[a_2..]
            {
                std::vector<int> suffix(w.begin() + 1, w.end());
                SparseVec fv = n == 0 ? coch_val(f, 0, A.space->basis[w[0]].ri)
                                      : coch_val_word(f, suffix);
                if (!fv.empty()) {
                    long a1 = A.space->basis[w[0]].deg;
                    Scalar sgn = Scalar(koszul_sign(f.deg, a1 + 1), p);
                    SparseVec prod = A.mul(SparseVec{{w[0], Scalar::one(p)}}, fv);
                    for (const auto& [x, c] : prod) out.add(x, k, sgn * c);
                }
            }
            // (-1)^{|f|+eps_n+1} f[a_1..a_n] a_{n+1}
            {
                std::vector<int> prefix(w.begin(), w.end() - 1);
                SparseVec fv = n == 0 ? coch_val(f, 0, A.space->basis[w.back()].li)
                                      : coch_val_word(f, prefix);
                if (!fv.empty()) {
                    long eps = 0;
                    for (int i = 0; i < n; ++i) eps += A.space->basis[w[i]].deg + 1;
                    Scalar sgn = Scalar(pow_sign(f.deg + eps + 1), p);
                    SparseVec prod = A.mul(fv, SparseVec{{w.back(), Scalar::one(p)}});
                    for (const auto& [x, c] : prod) out.add(x, k, sgn * c);
                }
            }
        }
        if (r.comp[n + 1].valid())
            r.comp[n + 1] = map_add(r.comp[n + 1], out);
        else
            r.comp[n + 1] = out;
    }
    r.truncated = r.truncated || f.truncated;
    return r;
}

Hochschild::Cochain Hochschild::delta(const Cochain& f) const {
    Cochain a0 = delta0(f);
    Cochain a1 = delta1(f);
    Cochain r = add(a0, a1);
    r.deg = f.deg - 1;
    r.truncated = a0.truncated || a1.truncated;
    return r;
}

Hochschild::Cochain Hochschild::cup(const Cochain& f, const Cochain& g) const {
    Cochain r = zero_cochain(f.deg + g.deg);
    r.truncated = f.truncated || g.truncated;
    const uint32_t p = A.p;
    for (int m = 0; m <= cap; ++m) {
        if (!f.comp[m].valid() || f.comp[m].is_zero()) continue;
        for (int k = 0; k <= cap; ++k) {
            if (!g.comp[k].valid() || g.comp[k].is_zero()) continue;
            if (m + k > cap) {
                r.truncated = true;
                continue;
            }
            int n = m + k;
            BlockMap out(bar.wspace[n], A.space, f.deg + g.deg);
            if (n == 0) {
                // value on e_l: f(e_l) g(e_l)
                for (int l = 0; l < A.t; ++l) {
                    SparseVec prod = A.mul(f.comp[0].col(l), g.comp[0].col(l));
                    for (const auto& [x, c] : prod) out.add(x, l, c);
                }
            } else {
                for (int wk = 0; wk < static_cast<int>(bar.words[n].size()); ++wk) {
                    const auto& w = bar.words[n][wk];
                    SparseVec fv, gv;
                    long epsm = 0;
                    for (int i = 0; i < m; ++i) epsm += A.space->basis[w[i]].deg + 1;
                    if (m == 0)
                        fv = coch_val(f, 0, A.space->basis[w[0]].li);
                    else
                        fv = coch_val_word(f, std::vector<int>(w.begin(), w.begin() + m));
                    if (fv.empty()) continue;
                    if (k == 0)
                        gv = coch_val(g, 0, A.space->basis[w.back()].ri);
                    else
                        gv = coch_val_word(g, std::vector<int>(w.begin() + m, w.end()));
                    if (gv.empty()) continue;
                    Scalar sgn = Scalar(koszul_sign(g.deg, epsm), p);
                    SparseVec prod = A.mul(fv, gv);
                    for (const auto& [x, c] : prod) out.add(x, wk, sgn * c);
                }
            }
            if (r.comp[n].valid())
                r.comp[n] = map_add(r.comp[n], out);
            else
                r.comp[n] = out;
        }
    }
    return r;
}

Hochschild::Cochain Hochschild::circle(const Cochain& f, const Cochain& g) const {
    // the inserted value enters a suspended slot: |f o g| = |f| + |g| + 1
    Cochain r = zero_cochain(f.deg + g.deg + 1);
    r.truncated = f.truncated || g.truncated;
    const uint32_t p = A.p;
    for (int m = 1; m <= cap; ++m) {  // the sum over insertion slots is empty for m = 0
        if (!f.comp[m].valid() || f.comp[m].is_zero()) continue;
        for (int k = 0; k <= cap; ++k) {
            if (!g.comp[k].valid() || g.comp[k].is_zero()) continue;
            int n = m + k - 1;
            if (n > cap) {
                r.truncated = true;
                continue;
            }
            BlockMap out(bar.wspace[n], A.space, f.deg + g.deg + 1);
            int nwords = n == 0 ? A.t : static_cast<int>(bar.words[n].size());
            for (int wk = 0; wk < nwords; ++wk) {
                std::vector<int> w =
                    n == 0 ? std::vector<int>{} : bar.words[n][wk];
                // insert g over window [i, i+k) of w (0-based slot i = paper i-1)
                for (int i = 0; i + k <= n; ++i) {
                    long eps = 0;
                    for (int j = 0; j < i; ++j) eps += A.space->basis[w[j]].deg + 1;
                    Scalar sgn = Scalar(koszul_sign(eps, g.deg + 1), p);
                    SparseVec gv;
                    if (k == 0) {
                        int l;
                        if (n == 0)
                            l = wk;
                        else if (i > 0)
                            l = A.space->basis[w[i - 1]].ri;
                        else
                            l = A.space->basis[w[i]].li;
                        gv = coch_val(g, 0, l);
                    } else {
                        gv = coch_val_word(
                            g, std::vector<int>(w.begin() + i, w.begin() + i + k));
                    }
                    if (gv.empty()) continue;
                    gv = A.abar_project(gv);
                    for (const auto& [gx, gc] : gv) {
                        std::vector<int> nw;
                        nw.insert(nw.end(), w.begin(), w.begin() + i);
                        nw.push_back(gx);
                        nw.insert(nw.end(), w.begin() + i + k, w.end());
                        SparseVec fv = coch_val_word(f, nw);
                        if (fv.empty()) continue;
                        for (const auto& [x, c] : fv) out.add(x, wk, sgn * gc * c);
                    }
                }
            }
            if (r.comp[n].valid())
                r.comp[n] = map_add(r.comp[n], out);
            else
                r.comp[n] = out;
        }
    }
    return r;
}

Hochschild::Cochain Hochschild::bracket(const Cochain& f, const Cochain& g) const {
    Cochain fg = circle(f, g);
    Cochain gf = circle(g, f);
    Scalar s = Scalar(-koszul_sign(f.deg + 1, g.deg + 1), A.p);
    Cochain r = add(fg, scale(gf, s));
    r.deg = f.deg + g.deg + 1;
    r.truncated = fg.truncated || gf.truncated;
    return r;
}

SparseVec Hochschild::connes_B(const SparseVec& x) const {
    const uint32_t p = A.p;
    SparseVec out;
    for (const auto& [ti, coeff] : x) {
        auto [ai, n, k] = ctuples[ti];
        if (n + 1 > cap)
            throw std::invalid_argument("connes_B: output exceeds the weight cap");
        SparseVec a0bar = A.abar_project(SparseVec{{ai, Scalar::one(p)}});
        if (a0bar.empty()) continue;
        std::vector<int> w = n == 0 ? std::vector<int>{} : bar.words[n][k];
        std::vector<long> eta(n + 1);
        eta[0] = A.space->basis[ai].deg + 1;
        for (int i = 1; i <= n; ++i) eta[i] = eta[i - 1] + A.space->basis[w[i - 1]].deg + 1;
        for (int i = 0; i <= n; ++i) {
            Scalar sgn = Scalar(pow_sign(eta[i] * (eta[n] - eta[i])), p);
            for (const auto& [a0x, a0c] : a0bar) {
                std::vector<int> nw;
                nw.insert(nw.end(), w.begin() + i, w.end());
                nw.push_back(a0x);
                nw.insert(nw.end(), w.begin(), w.begin() + i);
                int l = A.space->basis[nw.front()].li;
                vec_axpy(out, coeff * sgn * a0c,
                         chain_vec(A.unit_index(l), n + 1, nw, Scalar::one(p)));
            }
        }
    }
    return out;
}

SparseVec Hochschild::cap_i(const Cochain& f, const SparseVec& x) const {
    const uint32_t p = A.p;
    SparseVec out;
    for (const auto& [ti, coeff] : x) {
        auto [ai, n, k] = ctuples[ti];
        long a0 = A.space->basis[ai].deg;
        std::vector<int> w = n == 0 ? std::vector<int>{} : bar.words[n][k];
        for (int m = 0; m <= n; ++m) {
            SparseVec fv;
            if (m == 0)
                fv = coch_val(f, 0, A.space->basis[ai].ri);
            else
                fv = coch_val_word(f, std::vector<int>(w.begin(), w.begin() + m));
            if (fv.empty()) continue;
            Scalar sgn = Scalar(koszul_sign(a0, f.deg), p);
            SparseVec prod = A.mul(SparseVec{{ai, Scalar::one(p)}}, fv);
            std::vector<int> nw(w.begin() + m, w.end());
            for (const auto& [px, pc] : prod)
                vec_axpy(out, coeff * sgn * pc, chain_vec(px, n - m, nw, Scalar::one(p)));
        }
    }
    return out;
}

SparseVec Hochschild::lie_L(const Cochain& f, const SparseVec& x) const {
    const uint32_t p = A.p;
    SparseVec out;
    for (const auto& [ti, coeff] : x) {
        auto [ai, n, k] = ctuples[ti];
        std::vector<int> w = n == 0 ? std::vector<int>{} : bar.words[n][k];
        std::vector<long> eta(n + 1);
        eta[0] = A.space->basis[ai].deg + 1;
        for (int i = 1; i <= n; ++i) eta[i] = eta[i - 1] + A.space->basis[w[i - 1]].deg + 1;
        for (int m = 0; m <= cap; ++m) {
            if (!f.comp[m].valid() || f.comp[m].is_zero()) continue;
            if (n - m + 1 > cap)
                throw std::invalid_argument("lie_L: output exceeds the weight cap");
            // group 1: insert f over [i+1, i+m] keeping a0
            for (int i = kLFirstGroupStart; i <= n - m; ++i) {
                SparseVec fv;
                if (m == 0) {
                    int l = i > 0 ? A.space->basis[w[i - 1]].ri
                                  : A.space->basis[ai].ri;
                    fv = coch_val(f, 0, l);
                } else {
                    fv = coch_val_word(
                        f, std::vector<int>(w.begin() + i, w.begin() + i + m));
                }
                if (fv.empty()) continue;
                fv = A.abar_project(fv);
                Scalar sgn = Scalar(pow_sign((eta[i] + 1) * (f.deg + 1)), p);
                for (const auto& [gx, gc] : fv) {
                    std::vector<int> nw;
                    nw.insert(nw.end(), w.begin(), w.begin() + i);
                    nw.push_back(gx);
                    nw.insert(nw.end(), w.begin() + i + m, w.end());
                    vec_axpy(out, coeff * sgn * gc,
                             chain_vec(ai, n - m + 1, nw, Scalar::one(p)));
                }
            }
            // group 2: f wraps through a0; the window a_{i+1}..a_n, a0,
            // a_1..a_{m+i-n-1} must not reuse letters (m <= n+1)
            SparseVec a0bar = A.abar_project(SparseVec{{ai, Scalar::one(p)}});
            for (int i = n - m + 1; i <= n; ++i) {
                if (i < 0 || m + i - n - 1 < 0 || m > n + 1) continue;
                if (a0bar.empty()) continue;
                Scalar sgn =
                    Scalar(pow_sign((eta[n] - eta[i]) * eta[i] + f.deg + 1), p);
                for (const auto& [a0x, a0c] : a0bar) {
                    std::vector<int> fw;
                    fw.insert(fw.end(), w.begin() + i, w.end());
                    fw.push_back(a0x);
                    fw.insert(fw.end(), w.begin(), w.begin() + (m + i - n - 1));
                    SparseVec fv = coch_val_word(f, fw);
                    if (fv.empty()) continue;
                    std::vector<int> nw(w.begin() + (m + i - n - 1), w.begin() + i);
                    for (const auto& [px, pc] : fv)
                        vec_axpy(out, coeff * sgn * a0c * pc,
                                 chain_vec(px, n - m + 1, nw, Scalar::one(p)));
                }
            }
        }
    }
    return out;
}

SparseVec Hochschild::homotopy_S(const Cochain& f, const SparseVec& x) const {
    const uint32_t p = A.p;
    SparseVec out;
    for (const auto& [ti, coeff] : x) {
        auto [ai, pw, k] = ctuples[ti];
        int pp = pw;
        std::vector<int> w = pp == 0 ? std::vector<int>{} : bar.words[pp][k];
        SparseVec a0bar = A.abar_project(SparseVec{{ai, Scalar::one(p)}});
        if (a0bar.empty()) continue;
        std::vector<long> eta(pp + 1);
        eta[0] = A.space->basis[ai].deg + 1;
        for (int i = 1; i <= pp; ++i)
            eta[i] = eta[i - 1] + A.space->basis[w[i - 1]].deg + 1;
        for (int m = 0; m <= cap; ++m) {
            if (!f.comp[m].valid() || f.comp[m].is_zero()) continue;
            if (pp - m + 2 > cap)
                throw std::invalid_argument("homotopy_S: output exceeds the weight cap");
            for (int i = m + 1; i <= pp + 1; ++i) {
                for (int j = 1; j <= i - m; ++j) {
                    long e = (f.deg + 1) * (eta[pp] + eta[i - 1] - eta[j - 1] + 1) +
                             eta[i - 1] * (eta[pp] - eta[i - 1]);
                    Scalar sgn = Scalar(pow_sign(e), p);
                    SparseVec fv;
                    if (m == 0) {
                        int l = j > 1 ? A.space->basis[w[j - 2]].ri
                                      : A.space->basis[ai].ri;
                        fv = coch_val(f, 0, l);
                    } else {
                        fv = coch_val_word(
                            f, std::vector<int>(w.begin() + (j - 1),
                                                w.begin() + (j - 1 + m)));
                    }
                    if (fv.empty()) continue;
                    fv = A.abar_project(fv);
                    for (const auto& [a0x, a0c] : a0bar) {
                        for (const auto& [gx, gc] : fv) {
                            std::vector<int> nw;
                            nw.insert(nw.end(), w.begin() + (i - 1), w.end());
                            nw.push_back(a0x);
                            nw.insert(nw.end(), w.begin(), w.begin() + (j - 1));
                            nw.push_back(gx);
                            nw.insert(nw.end(), w.begin() + (j - 1 + m),
                                      w.begin() + (i - 1));
                            int l = A.space->basis[nw.front()].li;
                            vec_axpy(out, coeff * sgn * a0c * gc,
                                     chain_vec(A.unit_index(l), pp - m + 2, nw,
                                               Scalar::one(p)));
                        }
                    }
                }
            }
        }
    }
    return out;
}

SparseVec Hochschild::homotopy_T(const Cochain& f, const Cochain& g,
                                 const SparseVec& x) const {
    const uint32_t p = A.p;
    SparseVec out;
    for (const auto& [ti, coeff] : x) {
        auto [ai, pw, k] = ctuples[ti];
        int pp = pw;
        std::vector<int> w = pp == 0 ? std::vector<int>{} : bar.words[pp][k];
        SparseVec a0bar = A.abar_project(SparseVec{{ai, Scalar::one(p)}});
        if (a0bar.empty()) continue;
        std::vector<long> eta(pp + 1);
        eta[0] = A.space->basis[ai].deg + 1;
        for (int i = 1; i <= pp; ++i)
            eta[i] = eta[i - 1] + A.space->basis[w[i - 1]].deg + 1;
        for (int m = 0; m <= cap; ++m) {
            if (!f.comp[m].valid() || f.comp[m].is_zero()) continue;
            for (int n = 0; n <= cap; ++n) {
                if (!g.comp[n].valid() || g.comp[n].is_zero()) continue;
                if (pp - m - n + 2 < 0) continue;
                if (pp - m - n + 2 > cap)
                    throw std::invalid_argument(
                        "homotopy_T: output exceeds the weight cap");
                for (int i = pp - m + 3; i <= pp + 1; ++i) {
                    if (i < 1) continue;
                    for (int j = 1; j <= m + i - pp - 2; ++j) {
                        if (j + n - 1 > pp) continue;
                        long e;
                        if (kTSignVariant == 0)
                            e = (eta[pp] - eta[i - 1]) * eta[i - 1] +
                                (g.deg + 1) * (eta[pp] + 1);
                        else
                            e = (eta[pp] - eta[i - 1]) * eta[i - 1] +
                                (g.deg + 1) * (eta[pp] - eta[i - 1] + eta[j - 1] + 1);
                        Scalar sgn = Scalar(pow_sign(e), p);
                        SparseVec gv;
                        if (n == 0) {
                            int l = j > 1 ? A.space->basis[w[j - 2]].ri
                                          : A.space->basis[ai].ri;
                            gv = coch_val(g, 0, l);
                        } else {
                            gv = coch_val_word(
                                g, std::vector<int>(w.begin() + (j - 1),
                                                    w.begin() + (j - 1 + n)));
                        }
                        if (gv.empty()) continue;
                        gv = A.abar_project(gv);
                        for (const auto& [a0x, a0c] : a0bar) {
                            for (const auto& [gx, gc] : gv) {
                                // f window: a_i..a_p, abar0, a_1..a_{j-1}, g,
                                // a_{j+n}..a_{n+m+i-p-3}
                                std::vector<int> fw;
                                fw.insert(fw.end(), w.begin() + (i - 1), w.end());
                                fw.push_back(a0x);
                                fw.insert(fw.end(), w.begin(), w.begin() + (j - 1));
                                fw.push_back(gx);
                                int hi2 = n + m + i - pp - 3;  // 1-based end
                                fw.insert(fw.end(), w.begin() + (j + n - 1),
                                          w.begin() + hi2);
                                SparseVec fv = coch_val_word(f, fw);
                                if (fv.empty()) continue;
                                std::vector<int> nw(w.begin() + hi2,
                                                    w.begin() + (i - 1));
                                for (const auto& [px, pc] : fv)
                                    vec_axpy(out, coeff * sgn * a0c * gc * pc,
                                             chain_vec(px, pp - m - n + 2, nw,
                                                       Scalar::one(p)));
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

Hochschild::Cochain Hochschild::random_cochain(int weight, std::mt19937_64& rng) const {
    // homogeneous: pick a degree among the available Hom degrees
    const uint32_t p = A.p;
    std::vector<std::pair<int, int>> pairs;  // (word, a)
    std::map<long, std::vector<int>> by_deg;
    int nwords = weight == 0 ? A.t : static_cast<int>(bar.words[weight].size());
    for (int wk = 0; wk < nwords; ++wk) {
        int wli = weight == 0 ? wk : A.space->basis[bar.words[weight][wk].front()].li;
        int wri = weight == 0 ? wk : A.space->basis[bar.words[weight][wk].back()].ri;
        long wdeg = weight == 0 ? 0 : bar.word_deg(bar.words[weight][wk]);
        for (int ai = 0; ai < A.dim(); ++ai) {
            const auto& ae = A.space->basis[ai];
            if (ae.li != wli || ae.ri != wri) continue;
            by_deg[ae.deg - wdeg].push_back(static_cast<int>(pairs.size()));
            pairs.emplace_back(wk, ai);
        }
    }
    if (pairs.empty()) return zero_cochain(-weight);
    auto it = by_deg.begin();
    std::advance(it, rng() % by_deg.size());
    Cochain f = zero_cochain(it->first);
    f.comp[weight] = BlockMap(bar.wspace[weight], A.space, it->first);
    for (int pi : it->second) {
        long c = static_cast<long>(rng() % 7) - 3;
        if (c == 0) continue;
        f.comp[weight].add(pairs[pi].second, pairs[pi].first, Scalar(c, p));
    }
    return f;
}

SparseVec Hochschild::random_chain(int max_weight, std::mt19937_64& rng) const {
    SparseVec out;
    for (int ti = 0; ti < chain_dim(); ++ti) {
        if (chain_weight(ti) > max_weight) continue;
        long c = static_cast<long>(rng() % 7) - 3;
        if (c) out[ti] = Scalar(c, A.p);
    }
    return out;
}

std::string Hochschild::describe(const Cochain& f) const {
    std::string s = "deg " + std::to_string(f.deg) + ":";
    for (int n = 0; n <= cap; ++n) {
        if (!f.comp[n].valid() || f.comp[n].is_zero()) continue;
        s += " w" + std::to_string(n) + "{";
        for (int k = 0; k < f.comp[n].src()->dim(); ++k) {
            const auto& col = f.comp[n].col(k);
            if (col.empty()) continue;
            s += f.comp[n].src()->basis[k].label + "->" +
                 format_elt(col, *A.space) + "; ";
        }
        s += "}";
    }
    return s;
}

Hochschild::CochainSpace Hochschild::cochain_space(long lo, long hi) const {
    CochainSpace cs;
    std::vector<BasisElt> belts;
    for (int n = 0; n <= cap; ++n) {
        int nwords = n == 0 ? A.t : static_cast<int>(bar.words[n].size());
        for (int wk = 0; wk < nwords; ++wk) {
            int wli = n == 0 ? wk : A.space->basis[bar.words[n][wk].front()].li;
            int wri = n == 0 ? wk : A.space->basis[bar.words[n][wk].back()].ri;
            long wdeg = n == 0 ? 0 : bar.word_deg(bar.words[n][wk]);
            std::string wlab = n == 0 ? ("[]e" + std::to_string(wk + 1))
                                      : bar.wspace[n]->basis[wk].label;
            for (int ai = 0; ai < A.dim(); ++ai) {
                const auto& ae = A.space->basis[ai];
                if (ae.li != wli || ae.ri != wri) continue;
                long deg = ae.deg - wdeg;
                if (deg < lo - 2 || deg > hi + 2) continue;
                cs.index[{n, wk, ai}] = static_cast<int>(cs.tuples.size());
                cs.tuples.emplace_back(n, wk, ai);
                belts.push_back({wlab + "->" + ae.label, 0, 0, deg});
            }
        }
    }
    auto sp = std::make_shared<GradedSpace>();
    sp->t = 0;
    sp->p = A.p;
    sp->basis = std::move(belts);
    sp->finalize();
    cs.total = sp;
    return cs;
}

Hochschild::Cochain Hochschild::to_cochain(const CochainSpace& cs,
                                           const SparseVec& v) const {
    // all entries must share one total degree
    long deg = 0;
    bool seen = false;
    for (const auto& [i, c] : v) {
        (void)c;
        long d = cs.total->basis[i].deg;
        if (!seen) {
            deg = d;
            seen = true;
        } else if (d != deg) {
            throw std::invalid_argument("to_cochain: inhomogeneous vector");
        }
    }
    Cochain f = zero_cochain(deg);
    for (const auto& [i, c] : v) {
        auto [n, wk, ai] = cs.tuples[i];
        if (!f.comp[n].valid()) f.comp[n] = BlockMap(bar.wspace[n], A.space, deg);
        f.comp[n].add(ai, wk, c);
    }
    return f;
}

SparseVec Hochschild::from_cochain(const CochainSpace& cs, const Cochain& f) const {
    SparseVec v;
    for (int n = 0; n <= cap; ++n) {
        if (!f.comp[n].valid()) continue;
        for (int wk = 0; wk < f.comp[n].src()->dim(); ++wk) {
            for (const auto& [ai, c] : f.comp[n].col(wk)) {
                auto it = cs.index.find({n, wk, ai});
                if (it == cs.index.end())
                    throw std::invalid_argument("from_cochain: entry outside window");
                v[it->second] = c;
            }
        }
    }
    return v;
}

ComplexWindow Hochschild::cochain_window(const CochainSpace& cs, long lo, long hi) const {
    ComplexWindow cw;
    cw.total = cs.total;
    cw.lo = lo;
    cw.hi = hi;
    cw.d = BlockMap(cs.total, cs.total, -1);
    for (int i = 0; i < cs.total->dim(); ++i) {
        auto [n, wk, ai] = cs.tuples[i];
        Cochain e = zero_cochain(cs.total->basis[i].deg);
        e.comp[n] = BlockMap(bar.wspace[n], A.space, e.deg);
        e.comp[n].add(ai, wk, Scalar::one(A.p));
        Cochain de = delta(e);
        SparseVec col;
        for (int m = 0; m <= cap; ++m) {
            if (!de.comp[m].valid()) continue;
            for (int wk2 = 0; wk2 < de.comp[m].src()->dim(); ++wk2)
                for (const auto& [ai2, c] : de.comp[m].col(wk2)) {
                    auto it = cs.index.find({m, wk2, ai2});
                    if (it != cs.index.end()) vec_axpy(col, c, SparseVec{{it->second, Scalar::one(A.p)}});
                    // entries outside the degree pad are handled by
                    // space_complete bookkeeping below
                }
        }
        cw.d.add_col(i, col);
    }
    // completeness: cochain degrees of omitted weights N > cap occupy
    // [amin - N smax, amax - N smin]
    LetterRangeInfo lr = letter_info();
    if (!lr.any) {
        for (long q = lo - 2; q <= hi + 2; ++q) cw.space_complete.insert(q);
    } else {
        cw.space_complete = complete_degrees_for_cap(-lr.smax, -lr.smin, lr.amin,
                                                     lr.amax, cap, lo, hi);
    }
    return cw;
}

ComplexWindow Hochschild::chain_window(long lo, long hi) const {
    ComplexWindow cw;
    cw.total = chain_total;
    cw.lo = lo;
    cw.hi = hi;
    cw.d = map_add(b0_, b1_);
    LetterRangeInfo lr = letter_info();
    if (!lr.any) {
        for (long q = lo - 2; q <= hi + 2; ++q) cw.space_complete.insert(q);
    } else {
        cw.space_complete = complete_degrees_for_cap(lr.smin, lr.smax, lr.amin, lr.amax,
                                                     cap, lo, hi);
    }
    return cw;
}

Hochschild::LetterRangeInfo Hochschild::letter_info() const {
    LetterRangeInfo r;
    for (int i : A.abar_indices()) {
        long d = A.space->basis[i].deg + 1;
        if (!r.any) {
            r.any = true;
            r.smin = r.smax = d;
        } else {
            r.smin = std::min(r.smin, d);
            r.smax = std::max(r.smax, d);
        }
    }
    auto [alo, ahi] = A.space->degree_range();
    r.amin = alo;
    r.amax = ahi;
    return r;
}

int center_dimension(const DgKRing& a) {
    // z in degree 0 with x z = z x for all basis x and d z = 0
    const auto& idx0 = a.space->degree_indices(0);
    int nz = static_cast<int>(idx0.size());
    std::vector<SparseVec> rows;  // equations over the nz unknowns
    auto eqs = [&](const SparseVec& v) {
        if (!v.empty()) rows.push_back(v);
    };
    for (int x = 0; x < a.dim(); ++x) {
        // commutator equation per target basis element
        std::map<int, SparseVec> by_target;  // target -> coefficients
        for (int zi = 0; zi < nz; ++zi) {
            int z = idx0[zi];
            SparseVec xz = a.mul(SparseVec{{x, Scalar::one(a.p)}},
                                 SparseVec{{z, Scalar::one(a.p)}});
            SparseVec zx = a.mul(SparseVec{{z, Scalar::one(a.p)}},
                                 SparseVec{{x, Scalar::one(a.p)}});
            vec_axpy(xz, Scalar(-1, a.p), zx);
            for (const auto& [t, c] : xz) vec_axpy(by_target[t], c, SparseVec{{zi, Scalar::one(a.p)}});
        }
        for (auto& [t, row] : by_target) eqs(row);
    }
    for (int zi = 0; zi < nz; ++zi) {
        SparseVec dz = a.d(SparseVec{{idx0[zi], Scalar::one(a.p)}});
        for (const auto& [t, c] : dz) {
            (void)t;
            (void)c;
        }
        std::map<int, SparseVec> by_target;
        for (const auto& [t, c] : dz) vec_axpy(by_target[t], c, SparseVec{{zi, Scalar::one(a.p)}});
        for (auto& [t, row] : by_target) eqs(row);
    }
    SparseMatrix m(static_cast<int>(rows.size()), nz, a.p);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        for (const auto& [c, v] : rows[r]) m.set(r, c, v);
    return nz - m.rank();
}

int hh0_dimension_direct(const DgKRing& a) {
    // (+)_i e_i A e_i modulo graded cyclic commutators x y - (-1)^{|x||y|} y x
    std::vector<int> diag;
    std::map<int, int> pos;
    for (int i = 0; i < a.dim(); ++i)
        if (a.space->basis[i].li == a.space->basis[i].ri) {
            pos[i] = static_cast<int>(diag.size());
            diag.push_back(i);
        }
    Reducer red(static_cast<int>(diag.size()), a.p);
    for (int x = 0; x < a.dim(); ++x) {
        for (int y = 0; y < a.dim(); ++y) {
            const auto& bx = a.space->basis[x];
            const auto& by = a.space->basis[y];
            if (bx.ri != by.li || by.ri != bx.li) continue;
            SparseVec xy = a.mul(SparseVec{{x, Scalar::one(a.p)}},
                                 SparseVec{{y, Scalar::one(a.p)}});
            SparseVec yx = a.mul(SparseVec{{y, Scalar::one(a.p)}},
                                 SparseVec{{x, Scalar::one(a.p)}});
            vec_axpy(xy, Scalar(-koszul_sign(bx.deg, by.deg), a.p), yx);
            SparseVec row;
            for (const auto& [t, c] : xy) row[pos.at(t)] = c;
            if (!row.empty()) red.insert(row);
        }
    }
    return static_cast<int>(diag.size()) - red.size();
}

}  // namespace hhcalc
