#ifndef LIEAX_INTEGRABILITY_HPP
#define LIEAX_INTEGRABILITY_HPP

#include <optional>
#include <vector>

#include "lieax/forms.hpp"

namespace lieax {

/// Interior differential system: a rank-r subbundle of the (pull-back)
/// frame algebra, given by the component columns of its spanning sections.
struct IDS {
  AlgebraPtr algebra;
  ExprMatrix span;  // p x r, generic rank r, 1 <= r <= p

  std::size_t rank() const { return span.cols(); }
  Section spanning_section(std::size_t i) const { return Section(algebra, span.column(i)); }
};

/// Validates the rank invariant; the error message names the independent
/// columns found when the span is generically rank deficient.
IDS make_ids(AlgebraPtr algebra, ExprMatrix span);

/// Annihilator coframe: p - r independent 1-forms with Theta(S_i) = 0,
/// computed as the nullspace of span^T, denominators cleared.
struct Annihilator {
  std::vector<Form> coframes;
};
Annihilator annihilator(const IDS& ids);

struct InvolutivityResult {
  bool involutive = false;

  /// For each pair a < b, the coefficients x with span * x = [S_a, S_b].
  struct PairCertificate {
    std::size_t a, b;  // 0-based
    std::vector<ScalarExpr> coefficients;
  };
  std::vector<PairCertificate> certificates;

  /// First failing pair with the annihilator residual Theta^alpha([S_a,S_b]).
  struct Counterexample {
    std::size_t a, b;
    std::size_t theta_index;  // 0-based into the annihilator list
    ScalarExpr residual;
  };
  std::optional<Counterexample> counterexample;
};

/// Decides involutivity by bracket-and-solve on all spanning pairs; the
/// annihilator-evaluation route is run alongside and must agree
/// (std::logic_error otherwise).
InvolutivityResult is_involutive(const IDS& ids);

/// Constructive Frobenius-type certificate. On an involutive system,
/// completes the span to a full frame, builds the dual coframe
/// Theta^1..Theta^p, expands d Theta^alpha (alpha > r) in the Theta wedge
/// basis and assembles Omega^alpha_beta so that
/// d Theta^alpha = sum_beta Omega^alpha_beta ^ Theta^beta, verified exactly
/// before returning. On a non-involutive system returns the witness
/// coefficient A^alpha_{bc} = -Theta^alpha([S_b, S_c]).
struct FrobeniusCertificate {
  struct Witness {
    std::size_t alpha;  // 0-based, >= r
    std::size_t b, c;   // 0-based, < r
    ScalarExpr a_coefficient;
  };

  bool involutive;
  std::vector<Form> theta;               // dual coframe, size p
  std::vector<std::vector<Form>> omega;  // (p-r) x (p-r), index offset by r
  ExprMatrix completed_frame;            // p x p, columns S_1..S_p
  std::optional<Witness> witness;
};
FrobeniusCertificate frobenius_certificate(const IDS& ids);

/// Cartan-type criterion: the ideal generated by the annihilator is closed
/// under d, decided by d Theta^alpha ^ Theta^{r+1} ^ ... ^ Theta^p = 0 for
/// every generator.
bool eds_closure_check(const IDS& ids);

}  // namespace lieax

#endif
