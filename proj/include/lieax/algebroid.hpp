#ifndef LIEAX_ALGEBROID_HPP
#define LIEAX_ALGEBROID_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lieax/expr.hpp"
#include "lieax/linalg.hpp"
#include "lieax/report.hpp"

namespace lieax {

/// Anchored frame algebra: base coordinates, a frame t_1..t_p, the anchor
/// matrix a^i_alpha (n x p) and the structure functions L^gamma_{alpha beta}.
/// This one object models an ordinary Lie algebroid, the reduction of a
/// generalized Lie algebroid through its effective anchor, and the pull-back
/// Lie algebroid; the whole exterior calculus is built on top of it.
///
/// Structure functions are stored for alpha < beta only and extended by
/// antisymmetry, so L^g_{ab} = -L^g_{ba} and L^g_{aa} = 0 hold by
/// construction. All indices are 0-based in code (1-based in files/reports).
class FrameAlgebra {
public:
  FrameAlgebra(CoordsPtr coords, std::vector<std::string> frame_names, ExprMatrix anchor,
               std::map<std::array<std::size_t, 3>, ScalarExpr> structure);

  const CoordsPtr& coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return coords_->dimension(); }
  std::size_t rank() const noexcept { return frame_names_.size(); }
  const std::vector<std::string>& frame_names() const noexcept { return frame_names_; }
  const ExprMatrix& anchor() const noexcept { return anchor_; }

  /// L^gamma_{alpha beta}, antisymmetric extension included.
  ScalarExpr structure(std::size_t gamma, std::size_t alpha, std::size_t beta) const;
  /// The stored (alpha < beta) table, zero entries omitted.
  const std::map<std::array<std::size_t, 3>, ScalarExpr>& structure_table() const noexcept {
    return structure_;
  }

  /// The derivation f -> sum_i a^i_alpha df/dc^i given by frame section alpha.
  ScalarExpr anchor_apply_frame(std::size_t alpha, const ScalarExpr& f) const;

  bool same_as(const FrameAlgebra& other) const;

private:
  CoordsPtr coords_;
  std::vector<std::string> frame_names_;
  ExprMatrix anchor_;
  std::map<std::array<std::size_t, 3>, ScalarExpr> structure_;
};

using AlgebraPtr = std::shared_ptr<const FrameAlgebra>;

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Section z = z^alpha t_alpha of the frame algebra.
struct Section {
  AlgebraPtr algebra;
  std::vector<ScalarExpr> components;

  Section(AlgebraPtr alg, std::vector<ScalarExpr> comps);
  static Section zero(AlgebraPtr alg);
  static Section frame(AlgebraPtr alg, std::size_t alpha);

  bool is_zero() const;
  std::string str() const;
};

Section operator+(const Section& a, const Section& b);
Section operator-(const Section& a, const Section& b);
Section scaled(const ScalarExpr& f, const Section& z);

/// L_z f through the anchor: sum_alpha z^alpha sum_i a^i_alpha df/dc^i.
ScalarExpr anchor_apply(const Section& z, const ScalarExpr& f);

/// [u,v]^g = u^a v^b L^g_{ab} + anchor(u)(v^g) - anchor(v)(u^g).
Section bracket(const Section& u, const Section& v);

/// Checks the Jacobi identity on all frame triples and the anchor-morphism
/// identity on all frame pairs and coordinates; failures carry the offending
/// indices and the nonzero residual. Exact, never throws.
CheckReport validate_axioms(const AlgebraPtr& algebra);

/// New frame t'_beta = G^alpha_beta t_alpha over the same base; G must be
/// generically invertible. Anchor and structure functions transform
/// accordingly (computed through brackets, not a closed formula).
AlgebraPtr frame_change(const AlgebraPtr& algebra, const ExprMatrix& g);

/// The same algebroid in new base coordinates y = fwd(x); `inv` gives
/// x = inv(y) over `new_coords`. The anchor picks up the Jacobian of fwd.
AlgebraPtr base_change(const AlgebraPtr& algebra, const std::vector<ScalarExpr>& fwd,
                       const std::vector<ScalarExpr>& inv, CoordsPtr new_coords);

/// Input data of a generalized Lie algebroid: bundle over N with structure
/// functions and rho (targeting TM), plus the base maps h : M -> N and
/// eta : N -> M. When h o eta is not the identity an explicit inverse must
/// be supplied in the expression language.
struct GeneralizedAlgebroidSpec {
  CoordsPtr m_coords;  // dim m
  CoordsPtr n_coords;  // dim n
  std::vector<std::string> frame_names;
  ExprMatrix rho;  // m x p over n_coords
  std::map<std::array<std::size_t, 3>, ScalarExpr> structure;  // over n_coords
  std::vector<ScalarExpr> h;    // n exprs over m_coords
  std::vector<ScalarExpr> eta;  // m exprs over n_coords
  std::optional<std::vector<ScalarExpr>> h_eta_inverse;  // n exprs over n_coords

  std::size_t rank() const { return frame_names.size(); }
};

/// Throws DomainError unless dimensions line up and h o eta is the identity
/// (or composes to the identity with the declared inverse, both ways).
void validate_spec(const GeneralizedAlgebroidSpec& spec);

/// Effective anchor theta^i_alpha = [d h^i/dx^j o eta] rho^j_alpha,
/// re-expressed through the declared inverse of h o eta when that
/// composition is not the identity.
ExprMatrix effective_anchor(const GeneralizedAlgebroidSpec& spec);

/// The frame algebra over N with the effective anchor and the given
/// structure functions.
AlgebraPtr as_frame_algebra(const GeneralizedAlgebroidSpec& spec);

/// The pull-back Lie algebroid over M: anchor rho o h, structure L o h.
AlgebraPtr pullback_algebroid(const GeneralizedAlgebroidSpec& spec);

}  // namespace lieax

#endif
