#include "lieax/random.hpp"

namespace lieax {

ScalarExpr random_polynomial(const CoordsPtr& coords, unsigned max_degree, Rng& rng) {
  std::size_t nvars = coords->dimension();
  Polynomial p(nvars);
  std::size_t nterms = rng.below(4);
  for (std::size_t t = 0; t < nterms; ++t) {
    long coeff = rng.int_in(-3, 3);
    if (coeff == 0) continue;
    Exponents e(nvars, 0);
    if (nvars > 0) {
      unsigned deg = static_cast<unsigned>(rng.below(max_degree + 1));
      for (unsigned k = 0; k < deg; ++k) e[rng.below(nvars)] += 1;
    }
    p.add_term(e, mpq_class(coeff));
  }
  return ScalarExpr::from_fraction(coords, std::move(p),
                                   Polynomial::constant(nvars, 1));
}

ScalarExpr random_polynomial_nonzero(const CoordsPtr& coords, unsigned max_degree, Rng& rng) {
  for (;;) {
    ScalarExpr e = random_polynomial(coords, max_degree, rng);
    if (!e.is_zero()) return e;
  }
}

Section random_section(const AlgebraPtr& algebra, unsigned max_degree, Rng& rng) {
  std::vector<ScalarExpr> comps;
  comps.reserve(algebra->rank());
  for (std::size_t a = 0; a < algebra->rank(); ++a) {
    comps.push_back(random_polynomial(algebra->coords(), max_degree, rng));
  }
  return Section(algebra, std::move(comps));
}

Form random_form(const AlgebraPtr& algebra, std::size_t degree, unsigned max_degree, Rng& rng) {
  Form w = Form::zero(algebra, degree);
  if (degree > algebra->rank()) return w;
  // walk the increasing tuples in lexicographic order
  std::vector<std::size_t> key(degree);
  for (std::size_t i = 0; i < degree; ++i) key[i] = i;
  for (;;) {
    w.add_component(key, random_polynomial(algebra->coords(), max_degree, rng));
    std::size_t i = degree;
    bool done = true;
    while (i-- > 0) {
      if (key[i] + (degree - i) < algebra->rank()) {
        done = false;
        break;
      }
    }
    if (done || degree == 0) break;
    ++key[i];
    for (std::size_t j = i + 1; j < degree; ++j) key[j] = key[j - 1] + 1;
  }
  return w;
}

Connection random_connection(const AlgebraPtr& algebra, unsigned max_degree, Rng& rng) {
  std::size_t p = algebra->rank();
  std::vector<ScalarExpr> flat;
  flat.reserve(p * p * p);
  for (std::size_t k = 0; k < p * p * p; ++k) {
    flat.push_back(random_polynomial(algebra->coords(), max_degree, rng));
  }
  return Connection(algebra, std::move(flat));
}

Connection random_symmetric_connection(const AlgebraPtr& algebra, unsigned max_degree, Rng& rng) {
  std::size_t p = algebra->rank();
  std::vector<ScalarExpr> flat(p * p * p, ScalarExpr::zero(algebra->coords()));
  auto idx = [p](std::size_t a, std::size_t b, std::size_t c) { return (a * p + b) * p + c; };
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      for (std::size_t c = b; c < p; ++c) {
        ScalarExpr g = random_polynomial(algebra->coords(), max_degree, rng);
        flat[idx(a, b, c)] = g;
        flat[idx(a, c, b)] = g;
      }
    }
  }
  return Connection(algebra, std::move(flat));
}

ExprMatrix random_unimodular_matrix(const CoordsPtr& coords, std::size_t n, unsigned max_degree,
                                    unsigned shears, Rng& rng) {
  ExprMatrix g = ExprMatrix::identity(coords, n);
  if (n < 2) return g;
  for (unsigned s = 0; s < shears; ++s) {
    std::size_t i = rng.below(n);
    std::size_t j = rng.below(n);
    if (i == j) j = (j + 1) % n;
    ExprMatrix shear = ExprMatrix::identity(coords, n);
    shear.at(i, j) = random_polynomial(coords, max_degree, rng);
    g = matmul(g, shear);
  }
  return g;
}

}  // namespace lieax
