#include "lieax/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace lieax {

ExprMatrix::ExprMatrix(CoordsPtr coords, std::size_t rows, std::size_t cols)
    : coords_(std::move(coords)), rows_(rows), cols_(cols) {
  entries_.reserve(rows * cols);
  for (std::size_t k = 0; k < rows * cols; ++k) entries_.push_back(ScalarExpr::zero(coords_));
}

ExprMatrix ExprMatrix::identity(CoordsPtr coords, std::size_t n) {
  ExprMatrix m(coords, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ScalarExpr::one(coords);
  return m;
}

ScalarExpr& ExprMatrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw DomainError("matrix index out of range");
  return entries_[i * cols_ + j];
}

const ScalarExpr& ExprMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw DomainError("matrix index out of range");
  return entries_[i * cols_ + j];
}

std::vector<ScalarExpr> ExprMatrix::column(std::size_t j) const {
  std::vector<ScalarExpr> c;
  c.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
  return c;
}

std::vector<ScalarExpr> ExprMatrix::row(std::size_t i) const {
  std::vector<ScalarExpr> r;
  r.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r.push_back(at(i, j));
  return r;
}

ExprMatrix ExprMatrix::transposed() const {
  ExprMatrix t(coords_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

ExprMatrix ExprMatrix::with_appended_column(const std::vector<ScalarExpr>& col) const {
  if (col.size() != rows_) throw DomainError("appended column has wrong length");
  ExprMatrix m(coords_, rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    m.at(i, cols_) = col[i];
  }
  return m;
}

ExprMatrix matmul(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix dimension mismatch");
  ExprMatrix r(a.coords(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      ScalarExpr s = ScalarExpr::zero(a.coords());
      for (std::size_t k = 0; k < a.cols(); ++k) s = s + a.at(i, k) * b.at(k, j);
      r.at(i, j) = s;
    }
  }
  return r;
}

std::vector<ScalarExpr> matvec(const ExprMatrix& a, const std::vector<ScalarExpr>& x) {
  if (a.cols() != x.size()) throw DomainError("matrix dimension mismatch");
  std::vector<ScalarExpr> r;
  r.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ScalarExpr s = ScalarExpr::zero(a.coords());
    for (std::size_t k = 0; k < a.cols(); ++k) s = s + a.at(i, k) * x[k];
    r.push_back(s);
  }
  return r;
}

namespace {

// Exact polynomial quotient; Bareiss guarantees divisibility, so a failure
// here is a programming error.
ScalarExpr exact_div(const ScalarExpr& a, const ScalarExpr& b) {
  ScalarExpr q = a / b;
  assert(q.den().is_constant());
  return q;
}

// Multiplies each row by its entries' denominators until the whole row is
// polynomial. Row scaling by nonzero polynomials preserves rank, nullspace
// and solution sets.
void clear_row_denominators(ExprMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (;;) {
      const ScalarExpr* pending = nullptr;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!m.at(i, j).den().is_constant()) {
          pending = &m.at(i, j);
          break;
        }
      }
      if (!pending) break;
      ScalarExpr scale =
          ScalarExpr::from_fraction(m.coords(), pending->den(), Polynomial::constant(pending->den().nvars(), 1));
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) * scale;
    }
  }
}

struct Echelon {
  ExprMatrix mat;
  std::vector<std::size_t> pivot_cols;  // one per pivot row, increasing
};

// Fraction-free row echelon form. Only columns < pivot_col_limit are
// eligible as pivots; trailing columns (e.g. an augmented right-hand side)
// are transformed along.
Echelon bareiss_echelon(ExprMatrix m, std::size_t pivot_col_limit) {
  clear_row_denominators(m);
  std::vector<std::size_t> pivots;
  ScalarExpr prev = ScalarExpr::one(m.coords());
  std::size_t prow = 0;
  for (std::size_t col = 0; col < pivot_col_limit && prow < m.rows(); ++col) {
    std::size_t found = m.rows();
    for (std::size_t i = prow; i < m.rows(); ++i) {
      if (!m.at(i, col).is_zero()) {
        found = i;
        break;
      }
    }
    if (found == m.rows()) continue;
    if (found != prow) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(prow, j), m.at(found, j));
    }
    const ScalarExpr pivot = m.at(prow, col);
    for (std::size_t i = prow + 1; i < m.rows(); ++i) {
      const ScalarExpr head = m.at(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j == col) {
          m.at(i, j) = ScalarExpr::zero(m.coords());
        } else {
          m.at(i, j) = exact_div(pivot * m.at(i, j) - head * m.at(prow, j), prev);
        }
      }
    }
    prev = pivot;
    pivots.push_back(col);
    ++prow;
  }
  return Echelon{std::move(m), std::move(pivots)};
}

// Solves the echelon system for the named right-hand-side column, with free
// variables fixed to zero. `ncols` is the number of unknowns.
std::vector<ScalarExpr> back_substitute(const Echelon& e, std::size_t ncols, std::size_t rhs_col) {
  std::vector<ScalarExpr> x(ncols, ScalarExpr::zero(e.mat.coords()));
  for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
    std::size_t pc = e.pivot_cols[k];
    ScalarExpr s = e.mat.at(k, rhs_col);
    for (std::size_t j = pc + 1; j < ncols; ++j) s = s - e.mat.at(k, j) * x[j];
    x[pc] = s / e.mat.at(k, pc);
  }
  return x;
}

void clear_vector_denominators(std::vector<ScalarExpr>& v, const CoordsPtr& coords) {
  for (;;) {
    const Polynomial* pending = nullptr;
    for (const auto& e : v) {
      if (!e.den().is_constant()) {
        pending = &e.den();
        break;
      }
    }
    if (!pending) break;
    ScalarExpr scale =
        ScalarExpr::from_fraction(coords, *pending, Polynomial::constant(pending->nvars(), 1));
    for (auto& e : v) e = e * scale;
  }
}

}  // namespace

std::size_t generic_rank(const ExprMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return bareiss_echelon(m, m.cols()).pivot_cols.size();
}

std::vector<std::vector<ScalarExpr>> nullspace_columns(const ExprMatrix& m) {
  std::vector<std::vector<ScalarExpr>> basis;
  if (m.cols() == 0) return basis;
  if (m.rows() == 0) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::vector<ScalarExpr> v(m.cols(), ScalarExpr::zero(m.coords()));
      v[j] = ScalarExpr::one(m.coords());
      basis.push_back(std::move(v));
    }
    return basis;
  }
  Echelon e = bareiss_echelon(m, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t pc : e.pivot_cols) is_pivot[pc] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<ScalarExpr> v(m.cols(), ScalarExpr::zero(m.coords()));
    v[f] = ScalarExpr::one(m.coords());
    for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
      std::size_t pc = e.pivot_cols[k];
      if (pc > f) continue;
      ScalarExpr s = ScalarExpr::zero(m.coords());
      for (std::size_t j = pc + 1; j <= f; ++j) s = s - e.mat.at(k, j) * v[j];
      v[pc] = s / e.mat.at(k, pc);
    }
    clear_vector_denominators(v, m.coords());
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<ScalarExpr>> solve(const ExprMatrix& m, const std::vector<ScalarExpr>& b) {
  if (b.size() != m.rows()) throw DomainError("right-hand side has wrong length");
  Echelon e = bareiss_echelon(m.with_appended_column(b), m.cols());
  for (std::size_t i = e.pivot_cols.size(); i < m.rows(); ++i) {
    if (!e.mat.at(i, m.cols()).is_zero()) return std::nullopt;
  }
  return back_substitute(e, m.cols(), m.cols());
}

ExprMatrix inverse(const ExprMatrix& m) {
  if (m.rows() != m.cols()) throw SingularMatrixError("cannot invert a non-square matrix");
  std::size_t n = m.rows();
  ExprMatrix aug(m.coords(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = ScalarExpr::one(m.coords());
  }
  Echelon e = bareiss_echelon(std::move(aug), n);
  if (e.pivot_cols.size() != n) throw SingularMatrixError("matrix is singular (generic rank deficient)");
  ExprMatrix inv(m.coords(), n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<ScalarExpr> x = back_substitute(e, n, n + c);
    for (std::size_t i = 0; i < n; ++i) inv.at(i, c) = x[i];
  }
  return inv;
}

ScalarExpr determinant(const ExprMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant requires a square matrix");
  std::size_t n = m.rows();
  if (n == 0) return ScalarExpr::one(m.coords());
  if (n == 1) return m.at(0, 0);
  if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  // cofactor expansion along the first column; fine at the ranks in play
  ScalarExpr det = ScalarExpr::zero(m.coords());
  for (std::size_t i = 0; i < n; ++i) {
    if (m.at(i, 0).is_zero()) continue;
    ExprMatrix minor(m.coords(), n - 1, n - 1);
    for (std::size_t r = 0, mr = 0; r < n; ++r) {
      if (r == i) continue;
      for (std::size_t c = 1; c < n; ++c) minor.at(mr, c - 1) = m.at(r, c);
      ++mr;
    }
    ScalarExpr term = m.at(i, 0) * determinant(minor);
    det = (i % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace lieax
