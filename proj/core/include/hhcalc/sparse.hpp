#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hhcalc/field.hpp"

namespace hhcalc {

// Ordered sparse coordinate vector; zeros are never stored.
using SparseVec = std::map<int, Scalar>;

void vec_axpy(SparseVec& y, const Scalar& a, const SparseVec& x);
SparseVec vec_scale(const SparseVec& x, const Scalar& a);
bool vec_is_zero(const SparseVec& x);
Scalar vec_get(const SparseVec& x, int i, uint32_t p);

// Exact sparse matrix over Q or F_p. Entries are stored row-major; a stored
// entry is never zero and indices are range-checked on insertion.
class SparseMatrix {
public:
    SparseMatrix(int rows, int cols, uint32_t p = 0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    uint32_t characteristic() const { return p_; }

    void set(int r, int c, const Scalar& v);
    void add(int r, int c, const Scalar& v);
    Scalar get(int r, int c) const;
    const SparseVec& row(int r) const { return row_[r]; }
    long nnz() const;

    SparseMatrix transpose() const;
    SparseVec apply(const SparseVec& x) const;          // m * x
    std::vector<Scalar> apply_dense(const std::vector<Scalar>& x) const;

    int rank() const;
    std::vector<SparseVec> kernel_basis() const;
    // Some x with m*x = b, or nullopt when the system is inconsistent.
    std::optional<SparseVec> solve(const SparseVec& b) const;

private:
    int rows_, cols_;
    uint32_t p_;
    std::vector<SparseVec> row_;
};

// Incremental echelon reducer: tracks an independent generating set and can
// express later vectors against it. Powers kernel/quotient/homology bases.
class Reducer {
public:
    Reducer(int dim, uint32_t p) : dim_(dim), p_(p) {}

    // Inserts v; returns the generator index if independent, -1 otherwise.
    int insert(const SparseVec& v);
    // Returns (residual, combination over inserted independent generators)
    // with v = residual + sum combo_g * gen_g.
    std::pair<SparseVec, SparseVec> reduce(const SparseVec& v) const;
    bool contains(const SparseVec& v) const;

    int size() const { return n_independent_; }
    int dim() const { return dim_; }
    const std::map<int, int>& pivots() const { return pivot_gen_; }

private:
    int dim_;
    uint32_t p_;
    int n_independent_ = 0;
    // pivot column -> echelon row index
    std::map<int, int> pivot_gen_;
    std::vector<SparseVec> echelon_;  // unit leading entry at pivot
    std::vector<SparseVec> combo_;    // echelon row as combo of inserted gens
};

// Coset representatives completing a basis of ambient/subspace, plus an
// expression procedure; used for homology class bases.
struct QuotientBasis {
    int ambient = 0;
    uint32_t p = 0;
    std::vector<int> rep_cols;  // ascending; representative e_k for each k
    Reducer sub;

    QuotientBasis(const std::vector<SparseVec>& subspace, int ambient_dim, uint32_t p);
    // v = subspace part + sum rep_coeffs[i] * e_{rep_cols[i]}
    std::vector<Scalar> rep_coords(const SparseVec& v) const;
};

}  // namespace hhcalc
