#include "lieax/connection.hpp"

namespace lieax {

Connection::Connection(AlgebraPtr algebra, std::vector<ScalarExpr> gamma_flat)
    : algebra_(std::move(algebra)), gamma_(std::move(gamma_flat)) {
  std::size_t p = algebra_->rank();
  if (gamma_.size() != p * p * p) {
    throw DomainError("connection needs rank^3 coefficients");
  }
  for (const auto& g : gamma_) {
    if (!(g.coords() == algebra_->coords()) && *g.coords() != *algebra_->coords()) {
      throw DomainError("connection coefficients live over the wrong coordinate system");
    }
  }
}

const ScalarExpr& Connection::gamma(std::size_t a, std::size_t b, std::size_t c) const {
  std::size_t p = rank();
  if (a >= p || b >= p || c >= p) throw DomainError("connection index out of range");
  return gamma_[(a * p + b) * p + c];
}

Connection zero_connection(AlgebraPtr algebra) {
  std::size_t p = algebra->rank();
  std::vector<ScalarExpr> flat(p * p * p, ScalarExpr::zero(algebra->coords()));
  return Connection(std::move(algebra), std::move(flat));
}

Section covariant_derivative(const Connection& conn, const Section& u, const Section& v) {
  require_same_algebra(conn.algebra(), u.algebra);
  require_same_algebra(conn.algebra(), v.algebra);
  const AlgebraPtr& alg = conn.algebra();
  std::size_t p = alg->rank();
  std::vector<ScalarExpr> comps;
  comps.reserve(p);
  for (std::size_t a = 0; a < p; ++a) {
    ScalarExpr s = anchor_apply(u, v.components[a]);
    for (std::size_t b = 0; b < p; ++b) {
      if (v.components[b].is_zero()) continue;
      for (std::size_t c = 0; c < p; ++c) {
        const ScalarExpr& g = conn.gamma(a, b, c);
        if (g.is_zero() || u.components[c].is_zero()) continue;
        s = s + g * v.components[b] * u.components[c];
      }
    }
    comps.push_back(std::move(s));
  }
  return Section(alg, std::move(comps));
}

std::vector<std::vector<Form>> connection_forms(const Connection& conn) {
  const AlgebraPtr& alg = conn.algebra();
  std::size_t p = alg->rank();
  std::vector<std::vector<Form>> omega;
  omega.reserve(p);
  for (std::size_t a = 0; a < p; ++a) {
    std::vector<Form> row;
    row.reserve(p);
    for (std::size_t b = 0; b < p; ++b) {
      Form w = Form::zero(alg, 1);
      for (std::size_t c = 0; c < p; ++c) w.add_component({c}, conn.gamma(a, b, c));
      row.push_back(std::move(w));
    }
    omega.push_back(std::move(row));
  }
  return omega;
}

VectorValuedForm torsion(const Connection& conn) {
  const AlgebraPtr& alg = conn.algebra();
  std::size_t p = alg->rank();
  VectorValuedForm t{alg, 2, {}};
  t.components.reserve(p);
  for (std::size_t c = 0; c < p; ++c) t.components.push_back(Form::zero(alg, 2));
  for (std::size_t a = 0; a < p; ++a) {
    Section ta = Section::frame(alg, a);
    for (std::size_t b = a + 1; b < p; ++b) {
      Section tb = Section::frame(alg, b);
      Section value = covariant_derivative(conn, ta, tb) - covariant_derivative(conn, tb, ta) -
                      bracket(ta, tb);
      for (std::size_t c = 0; c < p; ++c) t.components[c].add_component({a, b}, value.components[c]);
    }
  }
  return t;
}

ScalarExpr torsion_coefficient_closed_form(const Connection& conn, std::size_t c, std::size_t a,
                                           std::size_t b) {
  return conn.gamma(c, b, a) - conn.gamma(c, a, b) - conn.algebra()->structure(c, a, b);
}

std::vector<std::vector<Form>> curvature(const Connection& conn) {
  const AlgebraPtr& alg = conn.algebra();
  std::size_t p = alg->rank();
  std::vector<std::vector<Form>> r(p, std::vector<Form>());
  for (std::size_t a = 0; a < p; ++a) {
    r[a].reserve(p);
    for (std::size_t b = 0; b < p; ++b) r[a].push_back(Form::zero(alg, 2));
  }
  for (std::size_t c = 0; c < p; ++c) {
    Section tc = Section::frame(alg, c);
    for (std::size_t dd = c + 1; dd < p; ++dd) {
      Section td = Section::frame(alg, dd);
      Section br = bracket(tc, td);
      for (std::size_t b = 0; b < p; ++b) {
        Section sb = Section::frame(alg, b);
        Section value = covariant_derivative(conn, tc, covariant_derivative(conn, td, sb)) -
                        covariant_derivative(conn, td, covariant_derivative(conn, tc, sb)) -
                        covariant_derivative(conn, br, sb);
        for (std::size_t a = 0; a < p; ++a) r[a][b].add_component({c, dd}, value.components[a]);
      }
    }
  }
  return r;
}

CheckReport verify_cartan_identities(const Connection& conn) {
  const AlgebraPtr& alg = conn.algebra();
  std::size_t p = alg->rank();
  CheckReport report;
  report.name = "cartan identities";
  VectorValuedForm t = torsion(conn);
  std::vector<std::vector<Form>> omega = connection_forms(conn);
  std::vector<std::vector<Form>> r = curvature(conn);
  for (std::size_t a = 0; a < p; ++a) {
    Form rhs = d(Form::coframe(alg, a));
    for (std::size_t b = 0; b < p; ++b) rhs = rhs + wedge(omega[a][b], Form::coframe(alg, b));
    Form residual = t.components[a] - rhs;
    report.add("cartan-1", {a + 1}, residual.is_zero(), residual.str());
  }
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      Form rhs = d(omega[a][b]);
      for (std::size_t c = 0; c < p; ++c) rhs = rhs + wedge(omega[a][c], omega[c][b]);
      Form residual = r[a][b] - rhs;
      report.add("cartan-2", {a + 1, b + 1}, residual.is_zero(), residual.str());
    }
  }
  return report;
}

CheckReport verify_bianchi_identities(const Connection& conn) {
  const AlgebraPtr& alg = conn.algebra();
  std::size_t p = alg->rank();
  CheckReport report;
  report.name = "bianchi identities";
  VectorValuedForm t = torsion(conn);
  std::vector<std::vector<Form>> omega = connection_forms(conn);
  std::vector<std::vector<Form>> r = curvature(conn);
  for (std::size_t a = 0; a < p; ++a) {
    Form rhs = Form::zero(alg, 3);
    for (std::size_t b = 0; b < p; ++b) rhs = rhs + wedge(r[a][b], Form::coframe(alg, b));
    for (std::size_t c = 0; c < p; ++c) rhs = rhs - wedge(omega[a][c], t.components[c]);
    Form residual = d(t.components[a]) - rhs;
    report.add("bianchi-1", {a + 1}, residual.is_zero(), residual.str());
  }
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      Form rhs = Form::zero(alg, 3);
      for (std::size_t c = 0; c < p; ++c) {
        rhs = rhs + wedge(r[a][c], omega[c][b]) - wedge(omega[a][c], r[c][b]);
      }
      Form residual = d(r[a][b]) - rhs;
      report.add("bianchi-2", {a + 1, b + 1}, residual.is_zero(), residual.str());
    }
  }
  bool torsion_free = true;
  for (const auto& f : t.components) {
    if (!f.is_zero()) torsion_free = false;
  }
  if (torsion_free) {
    for (std::size_t a = 0; a < p; ++a) {
      Form s = Form::zero(alg, 3);
      for (std::size_t b = 0; b < p; ++b) s = s + wedge(r[a][b], Form::coframe(alg, b));
      report.add("bianchi-1-torsion-free", {a + 1}, s.is_zero(), s.str());
    }
  }
  return report;
}

}  // namespace lieax
