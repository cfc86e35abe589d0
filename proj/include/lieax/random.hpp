#ifndef LIEAX_RANDOM_HPP
#define LIEAX_RANDOM_HPP

#include <cstdint>
#include <random>

#include "lieax/connection.hpp"
#include "lieax/forms.hpp"

namespace lieax {

/// Deterministic seeded generator for the randomized property checks.
/// All sampling goes through explicit modular reduction so a seed pins the
/// byte-exact output.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }

  long int_in(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::mt19937_64 engine_;
};

/// Sparse random polynomial with small integer coefficients and total degree
/// at most max_degree. May be zero.
ScalarExpr random_polynomial(const CoordsPtr& coords, unsigned max_degree, Rng& rng);

/// As above but never value-zero.
ScalarExpr random_polynomial_nonzero(const CoordsPtr& coords, unsigned max_degree, Rng& rng);

Section random_section(const AlgebraPtr& algebra, unsigned max_degree, Rng& rng);

Form random_form(const AlgebraPtr& algebra, std::size_t degree, unsigned max_degree, Rng& rng);

Connection random_connection(const AlgebraPtr& algebra, unsigned max_degree, Rng& rng);

/// Random torsion-free connection: symmetric Gamma on an algebra with zero
/// structure functions.
Connection random_symmetric_connection(const AlgebraPtr& algebra, unsigned max_degree, Rng& rng);

/// Random generically invertible matrix: a product of unit shears
/// I + f E_{ij} with polynomial f, optionally permuted. det = +-1.
ExprMatrix random_unimodular_matrix(const CoordsPtr& coords, std::size_t n, unsigned max_degree,
                                    unsigned shears, Rng& rng);

}  // namespace lieax

#endif
