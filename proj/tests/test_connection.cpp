#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lieax/connection.hpp"
#include "lieax/random.hpp"
#include "support/corpus.hpp"

using namespace lieax;

namespace {

Connection single_gamma(const AlgebraPtr& alg, std::size_t a, std::size_t b, std::size_t c,
                        const ScalarExpr& value) {
  std::size_t p = alg->rank();
  std::vector<ScalarExpr> flat(p * p * p, ScalarExpr::zero(alg->coords()));
  flat[(a * p + b) * p + c] = value;
  return Connection(alg, std::move(flat));
}

}  // namespace

TEST_CASE("covariant derivative: flat cases and the frame case") {
  AlgebraPtr tm = corpus::standard_tm(2);
  Connection zero = zero_connection(tm);
  Section v = Section::frame(tm, 0) + Section::frame(tm, 1);
  Rng rng(1);
  Section u = random_section(tm, 2, rng);
  CHECK(covariant_derivative(zero, u, v).is_zero());

  Connection conn = random_connection(tm, 2, rng);
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t c = 0; c < 2; ++c) {
      Section dv = covariant_derivative(conn, Section::frame(tm, c), Section::frame(tm, b));
      for (std::size_t a = 0; a < 2; ++a) CHECK(dv.components[a].value_equals(conn.gamma(a, b, c)));
    }
  }
}

TEST_CASE("covariant derivative on R^1 with Gamma = x") {
  AlgebraPtr tm = corpus::standard_tm(1);
  ScalarExpr x = ScalarExpr::coordinate(tm->coords(), std::size_t{0});
  Connection conn = single_gamma(tm, 0, 0, 0, x);
  Section dv = covariant_derivative(conn, Section::frame(tm, 0), Section::frame(tm, 0));
  CHECK(dv.components[0].value_equals(x));
}

TEST_CASE("connection forms evaluate to the coefficients") {
  AlgebraPtr tm = corpus::standard_tm(2);
  CHECK(connection_forms(zero_connection(tm))[0][1].is_zero());
  Rng rng(2);
  Connection conn = random_connection(tm, 2, rng);
  auto omega = connection_forms(conn);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t c = 0; c < 2; ++c) {
        CHECK(evaluate(omega[a][b], {Section::frame(tm, c)}).value_equals(conn.gamma(a, b, c)));
      }
    }
  }
}

TEST_CASE("torsion: symmetric coefficients with vanishing structure give zero") {
  AlgebraPtr tm = corpus::standard_tm(3);
  Rng rng(3);
  Connection sym = random_symmetric_connection(tm, 2, rng);
  VectorValuedForm t = torsion(sym);
  for (const Form& f : t.components) CHECK(f.is_zero());
}

TEST_CASE("torsion: zero connection on so(3) gives -L") {
  AlgebraPtr so3 = corpus::so3();
  VectorValuedForm t = torsion(zero_connection(so3));
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = a + 1; b < 3; ++b) {
        CHECK(t.components[c].component({a, b}).value_equals(-so3->structure(c, a, b)));
      }
    }
  }
}

TEST_CASE("torsion: frame-pair evaluation equals the closed form, and is antisymmetric") {
  for (const AlgebraPtr& alg :
       {corpus::standard_tm(2), corpus::affine_r1(), corpus::random_validated_algebroid(31)}) {
    Rng rng(4);
    Connection conn = random_connection(alg, 2, rng);
    VectorValuedForm t = torsion(conn);
    std::size_t p = alg->rank();
    for (std::size_t c = 0; c < p; ++c) {
      for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a + 1; b < p; ++b) {
          ScalarExpr closed = torsion_coefficient_closed_form(conn, c, a, b);
          CHECK(t.components[c].component({a, b}).value_equals(closed));
          // antisymmetry of the closed form in (a, b)
          CHECK(torsion_coefficient_closed_form(conn, c, b, a).value_equals(-closed));
        }
        CHECK(torsion_coefficient_closed_form(conn, c, a, a).is_zero());
      }
    }
  }
}

TEST_CASE("curvature: flat and rank-1 cases") {
  AlgebraPtr tm3 = corpus::standard_tm(3);
  auto r = curvature(zero_connection(tm3));
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) CHECK(r[a][b].is_zero());
  }

  AlgebraPtr tm1 = corpus::standard_tm(1);
  ScalarExpr fx = parse_expr("x1^2 + 3*x1", tm1->coords());
  auto r1 = curvature(single_gamma(tm1, 0, 0, 0, fx));
  CHECK(r1[0][0].is_zero());  // degree-2 forms over rank 1 vanish
}

TEST_CASE("curvature two-path: definition equals d Omega + Omega ^ Omega") {
  AlgebraPtr tm3 = corpus::standard_tm(3);
  Rng rng(5);
  Connection conn = random_connection(tm3, 2, rng);
  auto r = curvature(conn);
  auto omega = connection_forms(conn);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      Form rhs = d(omega[a][b]);
      for (std::size_t c = 0; c < 3; ++c) rhs = rhs + wedge(omega[a][c], omega[c][b]);
      CHECK(r[a][b].equals(rhs));
    }
  }
}

TEST_CASE("Cartan identities: trivial and randomized connections") {
  AlgebraPtr tm2 = corpus::standard_tm(2);
  CHECK(verify_cartan_identities(zero_connection(tm2)).pass());
  for (const AlgebraPtr& alg :
       {corpus::so3(), corpus::standard_tm(3), corpus::affine_r1(),
        corpus::random_validated_algebroid(32), corpus::random_validated_algebroid(33)}) {
    Rng rng(6);
    for (int t = 0; t < 3; ++t) {
      Connection conn = random_connection(alg, 2, rng);
      CHECK(verify_cartan_identities(conn).pass());
    }
  }
}

TEST_CASE("Bianchi identities: trivial, torsion-free, randomized") {
  AlgebraPtr tm3 = corpus::standard_tm(3);
  CHECK(verify_bianchi_identities(zero_connection(tm3)).pass());

  Rng rng(7);
  Connection sym = random_symmetric_connection(tm3, 2, rng);
  CheckReport rep = verify_bianchi_identities(sym);
  CHECK(rep.pass());
  bool has_torsion_free_check = false;
  for (const auto& f : rep.findings) {
    if (f.check_id == "bianchi-1-torsion-free") has_torsion_free_check = true;
  }
  CHECK(has_torsion_free_check);

  for (const AlgebraPtr& alg :
       {corpus::so3(), corpus::affine_r1(), corpus::random_validated_algebroid(34)}) {
    Connection conn = random_connection(alg, 2, rng);
    CHECK(verify_bianchi_identities(conn).pass());
  }
}

TEST_CASE("curvature antisymmetry in the direction pair") {
  AlgebraPtr alg = corpus::random_validated_algebroid(35);
  Rng rng(8);
  Connection conn = random_connection(alg, 1, rng);
  std::size_t p = alg->rank();
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t dd = c + 1; dd < p; ++dd) {
      for (std::size_t b = 0; b < p; ++b) {
        Section fwd = covariant_derivative(conn, Section::frame(alg, c),
                                           covariant_derivative(conn, Section::frame(alg, dd),
                                                                Section::frame(alg, b))) -
                      covariant_derivative(conn, Section::frame(alg, dd),
                                           covariant_derivative(conn, Section::frame(alg, c),
                                                                Section::frame(alg, b))) -
                      covariant_derivative(
                          conn, bracket(Section::frame(alg, c), Section::frame(alg, dd)),
                          Section::frame(alg, b));
        Section bwd = covariant_derivative(conn, Section::frame(alg, dd),
                                           covariant_derivative(conn, Section::frame(alg, c),
                                                                Section::frame(alg, b))) -
                      covariant_derivative(conn, Section::frame(alg, c),
                                           covariant_derivative(conn, Section::frame(alg, dd),
                                                                Section::frame(alg, b))) -
                      covariant_derivative(
                          conn, bracket(Section::frame(alg, dd), Section::frame(alg, c)),
                          Section::frame(alg, b));
        CHECK((fwd + bwd).is_zero());
      }
    }
  }
}
