#ifndef LIEAX_LINALG_HPP
#define LIEAX_LINALG_HPP

#include <optional>
#include <vector>

#include "lieax/expr.hpp"

namespace lieax {

class SingularMatrixError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Dense matrix of scalar expressions over one shared coordinate system.
/// Rank, nullspace, solve and inverse are generic (function-field) notions.
class ExprMatrix {
public:
  ExprMatrix(CoordsPtr coords, std::size_t rows, std::size_t cols);
  static ExprMatrix identity(CoordsPtr coords, std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const CoordsPtr& coords() const noexcept { return coords_; }

  ScalarExpr& at(std::size_t i, std::size_t j);
  const ScalarExpr& at(std::size_t i, std::size_t j) const;

  std::vector<ScalarExpr> column(std::size_t j) const;
  std::vector<ScalarExpr> row(std::size_t i) const;
  ExprMatrix transposed() const;
  ExprMatrix with_appended_column(const std::vector<ScalarExpr>& col) const;

private:
  CoordsPtr coords_;
  std::size_t rows_, cols_;
  std::vector<ScalarExpr> entries_;
};

ExprMatrix matmul(const ExprMatrix& a, const ExprMatrix& b);
std::vector<ScalarExpr> matvec(const ExprMatrix& a, const std::vector<ScalarExpr>& x);

/// Generic rank via fraction-free (Bareiss) elimination with exact pivot
/// zero-tests; pivots are the first nonzero entry in column order.
std::size_t generic_rank(const ExprMatrix& m);

/// cols - rank linearly independent columns v with M v = 0 exactly.
/// Entries are polynomials (denominators cleared); deterministic.
std::vector<std::vector<ScalarExpr>> nullspace_columns(const ExprMatrix& m);

/// Some x with M x = b when the system is consistent over the function
/// field, nullopt otherwise (free variables are set to zero).
std::optional<std::vector<ScalarExpr>> solve(const ExprMatrix& m, const std::vector<ScalarExpr>& b);

/// Exact inverse; throws SingularMatrixError when the generic rank is
/// deficient.
ExprMatrix inverse(const ExprMatrix& m);

ScalarExpr determinant(const ExprMatrix& m);

}  // namespace lieax

#endif
