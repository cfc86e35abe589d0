#ifndef LIEAX_FORMS_HPP
#define LIEAX_FORMS_HPP

#include <map>
#include <vector>

#include "lieax/algebroid.hpp"

namespace lieax {

/// Exterior q-form over a frame algebra, stored sparsely on strictly
/// increasing frame-index tuples. The determinant convention is used
/// throughout: (t^{a1} ^ ... ^ t^{aq})(t_{b1},...,t_{bq}) = det ||delta||,
/// so the component at an increasing key equals the value on that frame
/// tuple. Degrees above the rank collapse to the zero form.
class Form {
public:
  using Key = std::vector<std::size_t>;

  static Form zero(AlgebraPtr algebra, std::size_t degree);
  static Form scalar(AlgebraPtr algebra, ScalarExpr f);
  /// The coframe element t^alpha.
  static Form coframe(AlgebraPtr algebra, std::size_t alpha);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  std::size_t degree() const noexcept { return degree_; }
  const std::map<Key, ScalarExpr>& components() const noexcept { return comps_; }

  /// Component at a strictly increasing key; zero when absent.
  ScalarExpr component(const Key& key) const;
  /// Component at an arbitrary tuple, resolved by antisymmetry (zero on
  /// repeated indices).
  ScalarExpr component_signed(const Key& key) const;
  /// Accumulates into the component at a strictly increasing key.
  void add_component(const Key& key, const ScalarExpr& value);

  bool is_zero() const noexcept { return comps_.empty(); }
  bool equals(const Form& other) const;

  Form operator-() const;
  friend Form operator+(const Form& a, const Form& b);
  friend Form operator-(const Form& a, const Form& b);
  Form scaled(const ScalarExpr& f) const;

  /// Canonical form literal, e.g. "(x1) * e^{1,2} + (2) * e^{3,4}";
  /// degree-0 forms print as a bare expression.
  std::string str() const;

private:
  Form(AlgebraPtr algebra, std::size_t degree);

  AlgebraPtr algebra_;
  std::size_t degree_;
  std::map<Key, ScalarExpr> comps_;
};

/// Multilinear antisymmetric evaluation on sections.
ScalarExpr evaluate(const Form& omega, const std::vector<Section>& args);

/// Exterior product by the shuffle sum.
Form wedge(const Form& omega, const Form& theta);

/// Exterior product through the full 1/(q! r!) antisymmetrization sum,
/// evaluated on frame tuples. Independent oracle for wedge().
Form wedge_definitional(const Form& omega, const Form& theta);

/// Interior product i_z; zero on degree-0 forms.
Form interior(const Section& z, const Form& omega);

/// Interior product through slot evaluation on frame tuples. Independent
/// oracle for interior().
Form interior_definitional(const Section& z, const Form& omega);

/// Covariant Lie derivative L_z, componentwise on frame tuples.
Form lie_derivative(const Section& z, const Form& omega);

/// Exterior differential through the coordinate formula
/// (anchor-weighted partials plus structure-function terms).
Form d(const Form& omega);

/// Exterior differential through the intrinsic alternating-sum formula,
/// evaluated with brackets on frame tuples. Independent oracle for d().
Form d_intrinsic(const Form& omega);

bool is_closed(const Form& omega);
bool verify_exactness_witness(const Form& eta, const Form& omega);
/// Degree-2 only: d omega = 0 and the antisymmetric component matrix has
/// full generic rank.
bool is_symplectic(const Form& omega);

/// Verifies the structure equations of Maurer-Cartan type:
/// d t^a = -1/2 L^a_{bc} t^b ^ t^c for every coframe element and
/// d c^i = sum_a a^i_a t^a for every base coordinate.
CheckReport maurer_cartan_check(const AlgebraPtr& algebra);

/// Morphism of anchored frame algebras: frame map phi (components over the
/// source coordinates) over the invertible base map phi0 (target coordinates
/// as expressions of source ones; inverse supplied explicitly).
struct Morphism {
  AlgebraPtr source;
  AlgebraPtr target;
  ExprMatrix phi;                        // p_target x p_source, over source coords
  std::vector<ScalarExpr> phi0;          // size dim(target), over source coords
  std::vector<ScalarExpr> phi0_inverse;  // size dim(source), over target coords
};

/// Validates dimensions and that phi0 and its declared inverse compose to
/// the identity both ways.
Morphism make_morphism(AlgebraPtr source, AlgebraPtr target, ExprMatrix phi,
                       std::vector<ScalarExpr> phi0, std::vector<ScalarExpr> phi0_inverse);

/// Identity morphism of an algebra onto itself.
Morphism identity_morphism(const AlgebraPtr& algebra);

/// Gamma(phi, phi0) z: components (phi z) o phi0^{-1} over the target.
Section push_section(const Morphism& m, const Section& z);

/// Pullback of a target form: phi-matrix contraction of components and
/// substitution of the base map into the coefficients.
Form pullback(const Morphism& m, const Form& omega_target);

}  // namespace lieax

#endif
