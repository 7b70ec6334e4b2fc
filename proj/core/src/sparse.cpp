#include "hhcalc/sparse.hpp"

#include <algorithm>
#include <cassert>

namespace hhcalc {

void vec_axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
    if (a.is_zero()) return;
    for (const auto& [i, v] : x) {
        auto it = y.find(i);
        if (it == y.end()) {
            Scalar t = a * v;
            if (!t.is_zero()) y.emplace(i, std::move(t));
        } else {
            it->second += a * v;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

SparseVec vec_scale(const SparseVec& x, const Scalar& a) {
    SparseVec r;
    if (a.is_zero()) return r;
    for (const auto& [i, v] : x) r.emplace(i, a * v);
    return r;
}

bool vec_is_zero(const SparseVec& x) { return x.empty(); }

Scalar vec_get(const SparseVec& x, int i, uint32_t p) {
    auto it = x.find(i);
    return it == x.end() ? Scalar::zero(p) : it->second;
}

SparseMatrix::SparseMatrix(int rows, int cols, uint32_t p)
    : rows_(rows), cols_(cols), p_(p), row_(rows) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMatrix: negative dims");
}

void SparseMatrix::set(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("SparseMatrix::set index");
    if (v.characteristic() != p_)
        throw std::invalid_argument("SparseMatrix: mixed-field entry");
    if (v.is_zero())
        row_[r].erase(c);
    else
        row_[r][c] = v;
}

void SparseMatrix::add(int r, int c, const Scalar& v) {
    set(r, c, get(r, c) + v);
}

Scalar SparseMatrix::get(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("SparseMatrix::get index");
    auto it = row_[r].find(c);
    return it == row_[r].end() ? Scalar::zero(p_) : it->second;
}

long SparseMatrix::nnz() const {
    long n = 0;
    for (const auto& r : row_) n += static_cast<long>(r.size());
    return n;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_, p_);
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r]) t.row_[c][r] = v;
    return t;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
    SparseVec y;
    for (int r = 0; r < rows_; ++r) {
        Scalar acc = Scalar::zero(p_);
        const SparseVec& rw = row_[r];
        if (rw.size() <= x.size()) {
            for (const auto& [c, v] : rw) {
                auto it = x.find(c);
                if (it != x.end()) acc += v * it->second;
            }
        } else {
            for (const auto& [c, v] : x) {
                auto it = rw.find(c);
                if (it != rw.end()) acc += it->second * v;
            }
        }
        if (!acc.is_zero()) y.emplace(r, std::move(acc));
    }
    return y;
}

std::vector<Scalar> SparseMatrix::apply_dense(const std::vector<Scalar>& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    std::vector<Scalar> y(rows_, Scalar::zero(p_));
    for (int r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r]) y[r] += v * x[c];
    return y;
}

namespace {

// Full Gauss-Jordan elimination on a row-sparse working copy with Markowitz
// pivot selection, ties broken by lowest (row, col). When the live part of
// the matrix fills past kDenseFillThreshold the selection degrades to
// positional pivoting (lowest col, then lowest row): bar-complex blocks
// densify quickly and the Markowitz bookkeeping stops paying for itself.
constexpr double kDenseFillThreshold = 0.35;

struct Elimination {
    std::vector<SparseVec> rows;              // working rows
    std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order
    uint32_t p;

    explicit Elimination(const SparseMatrix& m) : p(m.characteristic()) {
        rows.resize(m.rows());
        for (int r = 0; r < m.rows(); ++r) rows[r] = m.row(r);
        run(m.rows(), m.cols());
    }

    void run(int nr, int nc) {
        std::vector<bool> row_done(nr, false);
        std::vector<int> col_count(nc, 0);
        auto recount = [&] {
            std::fill(col_count.begin(), col_count.end(), 0);
            for (int r = 0; r < nr; ++r)
                if (!row_done[r])
                    for (const auto& [c, v] : rows[r]) { (void)v; ++col_count[c]; }
        };
        recount();

        while (true) {
            long active_cells = 0;
            int live_rows = 0;
            for (int r = 0; r < nr; ++r) {
                if (row_done[r] || rows[r].empty()) continue;
                ++live_rows;
                active_cells += static_cast<long>(rows[r].size());
            }
            if (live_rows == 0) break;

            int br = -1, bc = -1;
            bool dense = active_cells >
                         static_cast<long>(kDenseFillThreshold * live_rows * nc);
            if (dense) {
                int min_col = nc;
                for (int r = 0; r < nr; ++r) {
                    if (row_done[r] || rows[r].empty()) continue;
                    min_col = std::min(min_col, rows[r].begin()->first);
                }
                for (int r = 0; r < nr; ++r) {
                    if (row_done[r] || rows[r].empty()) continue;
                    if (rows[r].count(min_col)) { br = r; bc = min_col; break; }
                }
            } else {
                long best = -1;
                for (int r = 0; r < nr; ++r) {
                    if (row_done[r] || rows[r].empty()) continue;
                    long rn = static_cast<long>(rows[r].size()) - 1;
                    for (const auto& [c, v] : rows[r]) {
                        (void)v;
                        long score = rn * (col_count[c] - 1);
                        if (best == -1 || score < best ||
                            (score == best && (r < br || (r == br && c < bc)))) {
                            best = score;
                            br = r;
                            bc = c;
                        }
                    }
                }
            }
            if (br == -1) break;

            Scalar pv = rows[br].at(bc);
            if (!pv.is_one()) {
                Scalar inv = pv.inverse();
                for (auto& [c, v] : rows[br]) v *= inv;
            }
            for (int r = 0; r < nr; ++r) {
                if (r == br) continue;
                auto it = rows[r].find(bc);
                if (it == rows[r].end()) continue;
                Scalar f = -it->second;
                vec_axpy(rows[r], f, rows[br]);
            }
            row_done[br] = true;
            pivots.emplace_back(br, bc);
            recount();
        }
    }
};

}  // namespace

int SparseMatrix::rank() const {
    Elimination e(*this);
    return static_cast<int>(e.pivots.size());
}

std::vector<SparseVec> SparseMatrix::kernel_basis() const {
    Elimination e(*this);
    std::vector<bool> is_pivot(cols_, false);
    for (auto& [r, c] : e.pivots) { (void)r; is_pivot[c] = true; }
    std::vector<SparseVec> basis;
    for (int f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        SparseVec x;
        x.emplace(f, Scalar::one(p_));
        // each eliminated row reads: x_{c_i} + sum_{free f} a_{i,f} x_f = 0
        for (auto& [r, c] : e.pivots) {
            auto it = e.rows[r].find(f);
            if (it != e.rows[r].end()) {
                Scalar t = -it->second;
                if (!t.is_zero()) x[c] = t;
            }
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<SparseVec> SparseMatrix::solve(const SparseVec& b) const {
    for (const auto& [i, v] : b) {
        (void)v;
        if (i < 0 || i >= rows_) throw std::out_of_range("solve: b index");
    }
    // column-space reduction: b is consistent iff it reduces to zero against
    // the columns of m; the tracked combination is a particular solution.
    SparseMatrix t = transpose();
    Reducer red(rows_, p_);
    std::vector<int> gen_col;  // generator index -> column
    for (int c = 0; c < cols_; ++c) {
        int g = red.insert(t.row(c));
        if (g >= 0) {
            assert(g == static_cast<int>(gen_col.size()));
            gen_col.push_back(c);
        }
    }
    auto [res, combo] = red.reduce(b);
    if (!res.empty()) return std::nullopt;
    SparseVec x;
    for (const auto& [g, cf] : combo)
        if (!cf.is_zero()) x[gen_col[g]] = cf;
    return x;
}

int Reducer::insert(const SparseVec& v) {
    auto [res, combo] = reduce(v);
    if (res.empty()) return -1;
    int piv = res.begin()->first;
    Scalar inv = res.begin()->second.inverse();
    SparseVec unit = vec_scale(res, inv);
    // res = v - sum combo*gen, so unit = inv*v - sum (inv*combo_g)*gen_g
    SparseVec unit_combo;
    unit_combo.emplace(n_independent_, inv);
    for (const auto& [g, cf] : combo) {
        Scalar x = -(inv * cf);
        if (!x.is_zero()) unit_combo[g] = x;
    }
    // keep the Gauss-Jordan invariant: no echelon row touches another pivot
    for (size_t k = 0; k < echelon_.size(); ++k) {
        auto it = echelon_[k].find(piv);
        if (it == echelon_[k].end()) continue;
        Scalar f = -it->second;
        vec_axpy(echelon_[k], f, unit);
        vec_axpy(combo_[k], f, unit_combo);
    }
    echelon_.push_back(std::move(unit));
    combo_.push_back(std::move(unit_combo));
    pivot_gen_[piv] = static_cast<int>(echelon_.size()) - 1;
    return n_independent_++;
}

std::pair<SparseVec, SparseVec> Reducer::reduce(const SparseVec& v) const {
    SparseVec res = v;
    SparseVec combo;
    bool hit = true;
    while (hit && !res.empty()) {
        hit = false;
        for (auto it = res.begin(); it != res.end(); ++it) {
            auto pg = pivot_gen_.find(it->first);
            if (pg == pivot_gen_.end()) continue;
            int k = pg->second;
            Scalar f = it->second;
            vec_axpy(res, -f, echelon_[k]);
            vec_axpy(combo, f, combo_[k]);
            hit = true;
            break;
        }
    }
    return {std::move(res), std::move(combo)};
}

bool Reducer::contains(const SparseVec& v) const { return reduce(v).first.empty(); }

QuotientBasis::QuotientBasis(const std::vector<SparseVec>& subspace, int ambient_dim,
                             uint32_t p_in)
    : ambient(ambient_dim), p(p_in), sub(ambient_dim, p_in) {
    for (const auto& v : subspace) {
        for (const auto& [i, s] : v) {
            (void)s;
            if (i < 0 || i >= ambient_dim)
                throw std::out_of_range("QuotientBasis: vector length mismatch");
        }
        sub.insert(v);
    }
    for (int c = 0; c < ambient_dim; ++c)
        if (!sub.pivots().count(c)) rep_cols.push_back(c);
}

std::vector<Scalar> QuotientBasis::rep_coords(const SparseVec& v) const {
    auto [res, combo] = sub.reduce(v);
    (void)combo;
    std::vector<Scalar> out;
    out.reserve(rep_cols.size());
    for (int c : rep_cols) out.push_back(vec_get(res, c, p));
    return out;
}

}  // namespace hhcalc
