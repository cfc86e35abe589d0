#ifndef LIEAX_CONNECTION_HPP
#define LIEAX_CONNECTION_HPP

#include <vector>

#include "lieax/forms.hpp"

namespace lieax {

/// Linear rho-connection on a frame algebra (in practice the pull-back
/// algebroid), by coefficients Gamma^a_{bc}: a the output index, b the
/// section index, c the direction index, so D_{T_c} T_b = Gamma^a_{bc} T_a
/// and the connection form is Omega^a_b = Gamma^a_{bc} T^c.
class Connection {
public:
  Connection(AlgebraPtr algebra, std::vector<ScalarExpr> gamma_flat);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  std::size_t rank() const noexcept { return algebra_->rank(); }
  const ScalarExpr& gamma(std::size_t a, std::size_t b, std::size_t c) const;

private:
  AlgebraPtr algebra_;
  std::vector<ScalarExpr> gamma_;  // a * p^2 + b * p + c
};

Connection zero_connection(AlgebraPtr algebra);

/// (D_U V)^a = U^c anchor(T_c)(V^a) + Gamma^a_{bc} V^b U^c.
Section covariant_derivative(const Connection& conn, const Section& u, const Section& v);

/// Connection 1-forms Omega^a_b, indexed [a][b].
std::vector<std::vector<Form>> connection_forms(const Connection& conn);

/// Vector valued q-form: one scalar q-form per frame index (the part
/// multiplying T_a).
struct VectorValuedForm {
  AlgebraPtr algebra;
  std::size_t degree;
  std::vector<Form> components;
};

/// Torsion computed from the definition on frame pairs:
/// T(T_a, T_b) = D_{T_a} T_b - D_{T_b} T_a - [T_a, T_b]; the component
/// scalar 2-forms T^c carry the values on increasing frame pairs.
VectorValuedForm torsion(const Connection& conn);

/// Closed-form torsion coefficient Gamma^c_{ba} - Gamma^c_{ab} - L^c_{ab};
/// independent of the frame-pair evaluation path above.
ScalarExpr torsion_coefficient_closed_form(const Connection& conn, std::size_t c, std::size_t a,
                                           std::size_t b);

/// Curvature scalar 2-forms R^a_b, indexed [a][b], computed from the
/// definition R(T_c, T_d) S_b = D_{T_c} D_{T_d} S_b - D_{T_d} D_{T_c} S_b
/// - D_{[T_c,T_d]} S_b applied to frame triples.
std::vector<std::vector<Form>> curvature(const Connection& conn);

/// First and second identities of Cartan type:
/// T^a = d T^a_coframe + Omega^a_b ^ T^b and R^a_b = d Omega^a_b +
/// Omega^a_c ^ Omega^c_b, exact residuals for every index.
CheckReport verify_cartan_identities(const Connection& conn);

/// First and second identities of Bianchi type:
/// d T^a = R^a_b ^ T^b - Omega^a_c ^ T^c and
/// d R^a_b = R^a_c ^ Omega^c_b - Omega^a_c ^ R^c_b; when the torsion
/// vanishes additionally R^a_b ^ T^b = 0.
CheckReport verify_bianchi_identities(const Connection& conn);

}  // namespace lieax

#endif
