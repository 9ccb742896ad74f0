#pragma once

#include <vector>

#include "bbvp/rational_expr.hpp"

namespace bbvp {

// Dense matrix of exact rational expressions with fraction-free determinant
// and the elementary row/column operations used by the symbol reductions.
class SymMatrix {
  public:
    SymMatrix() : rows_(0), cols_(0) {}
    SymMatrix(int rows, int cols);
    static SymMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    RationalExpr& at(int i, int j);
    const RationalExpr& at(int i, int j) const;

    SymMatrix operator*(const SymMatrix& o) const;
    bool operator==(const SymMatrix& o) const;

    void add_multiple_of_row(int dst, int src, const RationalExpr& f);
    void add_multiple_of_col(int dst, int src, const RationalExpr& f);
    void scale_row(int i, const RationalExpr& f);

    SymMatrix substitute(const std::map<Var, RationalExpr>& bind) const;

    std::string str() const;

  private:
    int rows_, cols_;
    std::vector<RationalExpr> e_;
};

// Determinant by fraction-free Bareiss elimination after clearing row
// denominators; exact. Cofactor expansion kept as an independent oracle.
RationalExpr det_bareiss(const SymMatrix& m);
RationalExpr det_cofactor(const SymMatrix& m);

// Determinant by dynamic programming over column subsets, one row at a
// time. Division-free: every product is a stored minor times a matrix
// entry, so sparse symbolic matrices avoid the intermediate blowup of
// fraction-free elimination. Agrees with det_bareiss; preferred for the
// 8x8 and 11x11 symbol matrices.
RationalExpr det_minor_expansion(const SymMatrix& m);

// Remainder of f modulo p in the variable z: f = q p + r with
// deg_z r < deg_z p, computed fraction-free over the coefficient field of
// the remaining indeterminates.
RationalExpr rem_in_z(const RationalExpr& f, const Poly& p);

}  // namespace bbvp
