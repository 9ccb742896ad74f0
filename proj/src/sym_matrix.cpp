#include "bbvp/sym_matrix.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace bbvp {

SymMatrix::SymMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = RationalExpr::constant(1);
    return m;
}

RationalExpr& SymMatrix::at(int i, int j) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("SymMatrix::at");
    return e_[static_cast<size_t>(i) * cols_ + j];
}

const RationalExpr& SymMatrix::at(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("SymMatrix::at");
    return e_[static_cast<size_t>(i) * cols_ + j];
}

SymMatrix SymMatrix::operator*(const SymMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch");
    SymMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            RationalExpr acc;
            for (int k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

bool SymMatrix::operator==(const SymMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!(at(i, j) == o.at(i, j))) return false;
    return true;
}

void SymMatrix::add_multiple_of_row(int dst, int src, const RationalExpr& f) {
    for (int j = 0; j < cols_; ++j) at(dst, j) = at(dst, j) + f * at(src, j);
}

void SymMatrix::add_multiple_of_col(int dst, int src, const RationalExpr& f) {
    for (int i = 0; i < rows_; ++i) at(i, dst) = at(i, dst) + f * at(i, src);
}

void SymMatrix::scale_row(int i, const RationalExpr& f) {
    for (int j = 0; j < cols_; ++j) at(i, j) = f * at(i, j);
}

SymMatrix SymMatrix::substitute(const std::map<Var, RationalExpr>& bind) const {
    SymMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).substitute(bind);
    return r;
}

std::string SymMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) os << " ; ";
            os << at(i, j).str();
        }
        os << "\n";
    }
    return os.str();
}

namespace {

// lcm of denominators within a row by exact-division probing; denominators
// in the symbol matrices are powers of N times constants, so this stays tiny.
Poly row_denominator(const SymMatrix& m, int i) {
    Poly l = Poly::constant(1);
    for (int j = 0; j < m.cols(); ++j) {
        const Poly& d = m.at(i, j).den();
        if (d.is_constant()) continue;
        if (Poly::divide_exact(l, d)) continue;  // d divides l already
        if (Poly::divide_exact(d, l)) {
            l = d;  // l divides d: d is the larger factor
        } else {
            l = l * d;
        }
    }
    return l;
}

// Clear denominators row by row; det(m) = det(a) / returned factor.
RationalExpr clear_row_denominators(const SymMatrix& m,
                                    std::vector<std::vector<Poly>>& a) {
    const int n = m.rows();
    a.assign(n, std::vector<Poly>(n));
    RationalExpr factor = RationalExpr::constant(1);
    for (int i = 0; i < n; ++i) {
        Poly rd = row_denominator(m, i);
        factor = factor * RationalExpr(rd);
        for (int j = 0; j < n; ++j) {
            RationalExpr scaled = m.at(i, j) * RationalExpr(rd);
            if (!scaled.is_poly())
                throw std::logic_error("row denominator clearing failed");
            // fold the constant denominator into the coefficients
            mpq_class c = scaled.den().constant_value();
            a[i][j] = (mpq_class(1) / c) * scaled.num();
        }
    }
    return factor;
}

RationalExpr det_cofactor_impl(const SymMatrix& m, std::vector<int> cols) {
    const int n = static_cast<int>(cols.size());
    const int row = m.rows() - n;
    if (n == 1) return m.at(row, cols[0]);
    RationalExpr acc;
    for (int k = 0; k < n; ++k) {
        const RationalExpr& piv = m.at(row, cols[k]);
        if (piv.is_zero()) continue;
        std::vector<int> sub;
        sub.reserve(n - 1);
        for (int j = 0; j < n; ++j)
            if (j != k) sub.push_back(cols[j]);
        RationalExpr minor = det_cofactor_impl(m, sub);
        RationalExpr term = piv * minor;
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

RationalExpr det_cofactor(const SymMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    if (m.rows() == 0) return RationalExpr::constant(1);
    std::vector<int> cols(m.cols());
    for (int j = 0; j < m.cols(); ++j) cols[j] = j;
    return det_cofactor_impl(m, cols);
}

RationalExpr det_bareiss(const SymMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return RationalExpr::constant(1);

    std::vector<std::vector<Poly>> a;
    RationalExpr factor = clear_row_denominators(m, a);

    int sign = 1;
    Poly prev = Poly::constant(1);
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k].is_zero()) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (!a[i][k].is_zero()) {
                    p = i;
                    break;
                }
            if (p < 0) return RationalExpr();  // zero column: det 0
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Poly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                auto q = Poly::divide_exact(num, prev);
                if (!q) throw std::logic_error("Bareiss division not exact");
                a[i][j] = *q;
            }
            a[i][k] = Poly();
        }
        prev = a[k][k];
    }
    Poly det = a[n - 1][n - 1];
    if (sign < 0) det = -det;
    return RationalExpr(det) / factor;
}

RationalExpr det_minor_expansion(const SymMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return RationalExpr::constant(1);
    if (n > 25) throw std::invalid_argument("subset-minor determinant limited to n <= 25");

    std::vector<std::vector<Poly>> a;
    RationalExpr factor = clear_row_denominators(m, a);

    // minors[mask] = det of rows 0..k-1 against the column set `mask`,
    // k = popcount(mask); only nonzero minors are kept.
    std::vector<std::pair<uint32_t, Poly>> cur;
    cur.emplace_back(0u, Poly::constant(1));
    std::unordered_map<uint32_t, Poly> next;
    for (int r = 0; r < n; ++r) {
        next.clear();
        for (const auto& [mask, minor] : cur) {
            for (int c = 0; c < n; ++c) {
                if (mask & (1u << c)) continue;
                const Poly& e = a[r][c];
                if (e.is_zero()) continue;
                Poly term = minor * e;
                const int pos = std::popcount(mask & ((1u << c) - 1u));
                if ((r + pos) % 2) term = -term;
                auto [it, inserted] = next.try_emplace(mask | (1u << c), term);
                if (!inserted) it->second += term;
            }
        }
        cur.clear();
        for (auto& [mask, minor] : next)
            if (!minor.is_zero()) cur.emplace_back(mask, std::move(minor));
    }
    const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    Poly det;
    for (auto& [mask, minor] : cur)
        if (mask == full) det = std::move(minor);
    return RationalExpr(det) / factor;
}

RationalExpr rem_in_z(const RationalExpr& f, const Poly& p) {
    const int d = p.degree_in(Var::z);
    if (d <= 0) throw std::invalid_argument("modulus must have positive degree in z");
    Poly cd = p.coeff_of(Var::z, d);
    Poly r = f.num();
    int k = 0;
    while (r.degree_in(Var::z) >= d && !r.is_zero()) {
        const int md = r.degree_in(Var::z);
        Poly lead = r.coeff_of(Var::z, md);
        r = cd * r - lead * Poly::variable(Var::z, md - d) * p;
        ++k;
    }
    return RationalExpr(r, cd.pow(k) * f.den());
}

}  // namespace bbvp
