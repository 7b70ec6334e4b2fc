#include "hhcalc/quiver.hpp"

#include <algorithm>

namespace hhcalc {

namespace {

using Path = std::vector<int>;

std::string path_label(const QuiverPresentation& q, const Path& pa) {
    // function-composition order: last traversed arrow leftmost
    std::string s;
    for (auto it = pa.rbegin(); it != pa.rend(); ++it) {
        if (!s.empty()) s += ".";
        s += q.arrows[*it].label;
    }
    return s;
}

int path_source(const QuiverPresentation& q, const Path& pa) {
    return q.arrows[pa.front()].source;
}
int path_target(const QuiverPresentation& q, const Path& pa) {
    return q.arrows[pa.back()].target;
}
long path_degree(const QuiverPresentation& q, const Path& pa) {
    long d = 0;
    for (int a : pa) d += q.arrows[a].deg;
    return d;
}

}  // namespace

RawRingData quiver_compile(const QuiverPresentation& q) {
    const uint32_t p = q.p;
    if (q.vertices < 1) throw std::invalid_argument("quiver: vertices must be >= 1");
    for (const auto& a : q.arrows)
        if (a.source < 1 || a.source > q.vertices || a.target < 1 ||
            a.target > q.vertices)
            throw std::invalid_argument("quiver: arrow '" + a.label +
                                        "' endpoint out of range");

    // enumerate composable paths per length
    std::vector<std::vector<Path>> paths;  // paths[len]
    paths.push_back({});                   // length 0 placeholder (vertices)
    std::vector<Path> len1;
    for (int i = 0; i < static_cast<int>(q.arrows.size()); ++i) len1.push_back({i});
    paths.push_back(len1);

    int hard_cap = q.truncate > 0 ? q.truncate : q.length_bound;
    for (int len = 2; len <= hard_cap; ++len) {
        std::vector<Path> cur;
        for (const auto& pa : paths[len - 1])
            for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a)
                if (q.arrows[a].source == path_target(q, pa)) {
                    Path np = pa;
                    np.push_back(a);
                    cur.push_back(np);
                }
        paths.push_back(cur);
        if (cur.empty()) break;
    }
    int max_len = static_cast<int>(paths.size()) - 1;

    // validate relations: composable, endpoint- and degree-homogeneous, length >= 2
    for (const auto& rel : q.relations) {
        if (rel.empty()) continue;
        int s = -1, t2 = -1;
        long dg = 0;
        bool first = true;
        for (const auto& term : rel) {
            if (term.arrows.size() < 2)
                throw std::invalid_argument("quiver: relation term of length < 2");
            for (size_t i = 0; i + 1 < term.arrows.size(); ++i)
                if (q.arrows[term.arrows[i]].target != q.arrows[term.arrows[i + 1]].source)
                    throw std::invalid_argument("quiver: non-composable relation term");
            int ts = path_source(q, term.arrows), tt = path_target(q, term.arrows);
            long td = path_degree(q, term.arrows);
            if (first) {
                s = ts;
                t2 = tt;
                dg = td;
                first = false;
            } else if (ts != s || tt != t2 || td != dg) {
                throw std::invalid_argument(
                    "quiver: relation not endpoint/degree homogeneous");
            }
        }
    }

    // per-length path index
    std::vector<std::map<Path, int>> pidx(max_len + 1);
    for (int len = 1; len <= max_len; ++len)
        for (int i = 0; i < static_cast<int>(paths[len].size()); ++i)
            pidx[len][paths[len][i]] = i;

    // ideal spanning sets per length: u . r . v  (concatenation uvr in
    // traversal order v, r, u), plus all paths of length >= truncate
    std::vector<Reducer> ideal;  // per length, over path coordinates
    ideal.reserve(max_len + 1);
    for (int len = 0; len <= max_len; ++len)
        ideal.emplace_back(len >= 1 ? static_cast<int>(paths[len].size()) : 1, p);

    for (int len = 2; len <= max_len; ++len) {
        for (const auto& rel : q.relations) {
            if (rel.empty()) continue;
            int rl = static_cast<int>(rel.front().arrows.size());
            if (rl > len) continue;
            // pad with paths on both sides: v (pre, traversed first), u (post)
            int rest = len - rl;
            const std::vector<Path> unit_paths = {{}};
            for (int pre = 0; pre <= rest; ++pre) {
                int post = rest - pre;
                const std::vector<Path>& pres = pre == 0 ? unit_paths : paths[pre];
                const std::vector<Path>& posts = post == 0 ? unit_paths : paths[post];
                for (const auto& vpath : pres) {
                    for (const auto& upath : posts) {
                        SparseVec vec;
                        bool okall = true;
                        for (const auto& term : rel) {
                            // composability: vpath then term then upath
                            if (!vpath.empty() &&
                                path_target(q, vpath) != path_source(q, term.arrows)) {
                                okall = false;
                                break;
                            }
                            if (!upath.empty() &&
                                path_target(q, term.arrows) != path_source(q, upath)) {
                                okall = false;
                                break;
                            }
                            Path w = vpath;
                            w.insert(w.end(), term.arrows.begin(), term.arrows.end());
                            w.insert(w.end(), upath.begin(), upath.end());
                            auto it = pidx[len].find(w);
                            if (it == pidx[len].end()) {
                                okall = false;
                                break;
                            }
                            vec_axpy(vec, term.coeff,
                                     SparseVec{{it->second, Scalar::one(p)}});
                        }
                        if (okall && !vec.empty()) ideal[len].insert(vec);
                    }
                }
            }
        }
        if (q.truncate > 0 && len >= q.truncate)
            for (int i = 0; i < static_cast<int>(paths[len].size()); ++i)
                ideal[len].insert(SparseVec{{i, Scalar::one(p)}});
    }

    // quotient basis per length; find the cutoff where it becomes empty
    std::vector<std::vector<int>> reps(max_len + 1);  // surviving path indices
    int cutoff = -1;
    for (int len = 1; len <= max_len; ++len) {
        for (int i = 0; i < static_cast<int>(paths[len].size()); ++i)
            if (!ideal[len].pivots().count(i)) reps[len].push_back(i);
        if (reps[len].empty()) {
            cutoff = len;
            break;
        }
    }
    if (cutoff < 0) {
        if (max_len < hard_cap) {
            cutoff = max_len + 1;  // no paths at all beyond max_len
        } else {
            throw std::invalid_argument(
                "quiver: ideal not cofinite within length bound " +
                std::to_string(hard_cap) + " (non-admissible relation set?)");
        }
    }

    // assemble the algebra basis: vertices, then path representatives
    RawRingData raw;
    raw.t = q.vertices;
    raw.p = p;
    std::vector<BasisElt> basis;
    for (int v = 1; v <= q.vertices; ++v)
        basis.push_back({"e" + std::to_string(v), v - 1, v - 1, 0});
    struct Mono {
        int len;
        int pi;  // index into paths[len]
    };
    std::vector<Mono> monos;  // aligned with basis tail
    for (int len = 1; len < cutoff; ++len)
        for (int i : reps[len]) {
            const Path& pa = paths[len][i];
            basis.push_back({path_label(q, pa), path_target(q, pa) - 1,
                             path_source(q, pa) - 1, path_degree(q, pa)});
            monos.push_back({len, i});
        }
    raw.space = make_space(q.vertices, p, basis);
    const int nb = raw.space->dim();
    const int nv = q.vertices;

    // reduce an arbitrary path-sum (grouped by length) to basis coordinates
    auto reduce_to_basis = [&](const std::map<int, SparseVec>& by_len) {
        SparseVec out;
        for (const auto& [len, vec] : by_len) {
            if (len >= cutoff || vec.empty()) continue;
            auto [res, combo] = ideal[len].reduce(vec);
            (void)combo;
            for (const auto& [pi2, c] : res) {
                // residual is supported on representative monomials
                int base = nv;
                for (int l2 = 1; l2 < len; ++l2) base += static_cast<int>(reps[l2].size());
                auto pos =
                    std::lower_bound(reps[len].begin(), reps[len].end(), pi2);
                if (pos == reps[len].end() || *pos != pi2)
                    throw std::logic_error("quiver: residual off representatives");
                int idx = base + static_cast<int>(pos - reps[len].begin());
                vec_axpy(out, c, SparseVec{{idx, Scalar::one(p)}});
            }
        }
        return out;
    };

    // product table on non-vertex monomials; unit products are implied
    auto mono_of = [&](int bi) { return monos[bi - nv]; };
    for (int i = nv; i < nb; ++i) {
        for (int j = nv; j < nb; ++j) {
            // product basis_i * basis_j = "j then i": traversal order j, i
            Mono mi = mono_of(i), mj = mono_of(j);
            const Path& pi2 = paths[mi.len][mi.pi];
            const Path& pj = paths[mj.len][mj.pi];
            if (path_target(q, pj) != path_source(q, pi2)) continue;
            Path w = pj;
            w.insert(w.end(), pi2.begin(), pi2.end());
            int wl = mi.len + mj.len;
            std::map<int, SparseVec> grp;
            if (wl < cutoff) {
                auto it = pidx[wl].find(w);
                if (it == pidx[wl].end()) throw std::logic_error("quiver: missing path");
                grp[wl] = SparseVec{{it->second, Scalar::one(p)}};
            }
            SparseVec img = reduce_to_basis(grp);
            if (!img.empty()) raw.mu[{i, j}] = img;
        }
    }
    // unit products
    for (int l = 0; l < nv; ++l)
        for (int i = 0; i < nb; ++i) {
            const auto& be = raw.space->basis[i];
            if (be.li == l) {
                auto key = std::make_pair(l, i);
                raw.mu[key] = SparseVec{{i, Scalar::one(p)}};
            }
            if (be.ri == l) {
                auto key = std::make_pair(i, l);
                raw.mu[key] = SparseVec{{i, Scalar::one(p)}};
            }
        }

    raw.unit_comp.resize(nv);
    for (int l = 0; l < nv; ++l) raw.unit_comp[l] = SparseVec{{l, Scalar::one(p)}};
    raw.aug = BlockMap(raw.space, k_unit_space(nv, p), 0);
    for (int l = 0; l < nv; ++l) raw.aug.add(l, l, Scalar::one(p));

    // differential by the graded Leibniz rule on path monomials, then checked
    // for ideal preservation (each relation must die in the quotient)
    raw.diff = BlockMap(raw.space, raw.space, -1);
    if (!q.darrow.empty()) {
        auto d_path = [&](const Path& pa) {
            // d(a_n ... a_1) = sum_i +- a_n ... d(a_i) ... a_1; in traversal
            // order the sign for slot i (0-based from the first traversed) is
            // (-1)^{sum of degrees of arrows traversed after i ... }
            std::map<int, SparseVec> grp;
            for (size_t i = 0; i < pa.size(); ++i) {
                auto it = q.darrow.find(pa[i]);
                if (it == q.darrow.end()) continue;
                // function order: path = a_n o ... o a_1 with a_1 = pa[0].
                // Leibniz for p o q: d(p o q) = d(p) o q + (-1)^{|p|} p o d(q);
                // slot i carries (-1)^{sum_{j>i} deg(pa[j])}
                long s = 0;
                for (size_t j2 = i + 1; j2 < pa.size(); ++j2) s += q.arrows[pa[j2]].deg;
                Scalar sgn = Scalar(pow_sign(s), p);
                for (const auto& term : it->second) {
                    Path w(pa.begin(), pa.begin() + i);
                    w.insert(w.end(), term.arrows.begin(), term.arrows.end());
                    w.insert(w.end(), pa.begin() + i + 1, pa.end());
                    // composability of the substituted value
                    bool okc = true;
                    for (size_t j2 = 0; j2 + 1 < w.size(); ++j2)
                        if (q.arrows[w[j2]].target != q.arrows[w[j2 + 1]].source)
                            okc = false;
                    if (!okc)
                        throw std::invalid_argument(
                            "quiver: differential value not composable in context");
                    int wl = static_cast<int>(w.size());
                    if (wl > max_len) continue;
                    auto pit = pidx[wl].find(w);
                    if (pit == pidx[wl].end()) continue;
                    vec_axpy(grp[wl], sgn * term.coeff,
                             SparseVec{{pit->second, Scalar::one(p)}});
                }
            }
            return grp;
        };
        for (int i = nv; i < nb; ++i) {
            Mono m = mono_of(i);
            SparseVec img = reduce_to_basis(d_path(paths[m.len][m.pi]));
            if (!img.empty()) raw.diff.add_col(i, img);
        }
        // well-definedness: d(relation) must reduce to 0
        for (const auto& rel : q.relations) {
            std::map<int, SparseVec> acc;
            for (const auto& term : rel) {
                auto grp = d_path(term.arrows);
                for (auto& [len, v] : grp) vec_axpy(acc[len], term.coeff, v);
            }
            if (!reduce_to_basis(acc).empty())
                throw std::invalid_argument(
                    "quiver: inconsistent differential (does not preserve the ideal)");
        }
    }
    return raw;
}

}  // namespace hhcalc
