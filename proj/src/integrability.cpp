#include "lieax/integrability.hpp"

#include <string>

namespace lieax {

namespace {

Form one_form(const AlgebraPtr& alg, const std::vector<ScalarExpr>& comps) {
  Form w = Form::zero(alg, 1);
  for (std::size_t i = 0; i < comps.size(); ++i) w.add_component({i}, comps[i]);
  return w;
}

}  // namespace

IDS make_ids(AlgebraPtr algebra, ExprMatrix span) {
  std::size_t p = algebra->rank();
  std::size_t r = span.cols();
  if (span.rows() != p) throw DomainError("span must have one row per frame index");
  if (r < 1 || r > p) throw DomainError("span rank must satisfy 1 <= r <= rank");
  if (!(span.coords() == algebra->coords()) && *span.coords() != *algebra->coords()) {
    throw DomainError("span entries live over the wrong coordinate system");
  }
  std::size_t found = generic_rank(span);
  if (found != r) {
    // name an independent subset as the witness
    std::string witness;
    ExprMatrix probe(span.coords(), p, 0);
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < r && kept.size() < found; ++j) {
      ExprMatrix cand = probe.with_appended_column(span.column(j));
      if (generic_rank(cand) > kept.size()) {
        probe = std::move(cand);
        kept.push_back(j);
      }
    }
    for (std::size_t j : kept) witness += (witness.empty() ? "" : ",") + std::to_string(j + 1);
    throw DomainError("span is generically rank deficient: rank " + std::to_string(found) +
                      " < " + std::to_string(r) + " (independent columns: {" + witness + "})");
  }
  return IDS{std::move(algebra), std::move(span)};
}

Annihilator annihilator(const IDS& ids) {
  std::vector<std::vector<ScalarExpr>> null = nullspace_columns(ids.span.transposed());
  Annihilator ann;
  ann.coframes.reserve(null.size());
  for (const auto& v : null) ann.coframes.push_back(one_form(ids.algebra, v));
  return ann;
}

InvolutivityResult is_involutive(const IDS& ids) {
  std::size_t r = ids.rank();
  Annihilator ann = annihilator(ids);
  InvolutivityResult result;
  result.involutive = true;
  for (std::size_t a = 0; a < r && result.involutive; ++a) {
    for (std::size_t b = a + 1; b < r; ++b) {
      Section br = bracket(ids.spanning_section(a), ids.spanning_section(b));
      auto sol = solve(ids.span, br.components);

      // annihilator route must reach the same verdict
      std::optional<std::pair<std::size_t, ScalarExpr>> nonzero;
      for (std::size_t t = 0; t < ann.coframes.size() && !nonzero; ++t) {
        ScalarExpr value = evaluate(ann.coframes[t], {br});
        if (!value.is_zero()) nonzero.emplace(t, value);
      }
      if (sol.has_value() == nonzero.has_value()) {
        throw std::logic_error("involutivity cross-check disagreement between solve and annihilator");
      }

      if (sol) {
        result.certificates.push_back({a, b, std::move(*sol)});
      } else {
        result.involutive = false;
        result.counterexample =
            InvolutivityResult::Counterexample{a, b, nonzero->first, nonzero->second};
        break;
      }
    }
  }
  if (!result.involutive) result.certificates.clear();
  return result;
}

FrobeniusCertificate frobenius_certificate(const IDS& ids) {
  const AlgebraPtr& alg = ids.algebra;
  std::size_t p = alg->rank();
  std::size_t r = ids.rank();

  // deterministic greedy completion by standard basis columns
  ExprMatrix frame = ids.span;
  std::size_t have = r;
  for (std::size_t j = 0; j < p && have < p; ++j) {
    std::vector<ScalarExpr> e(p, ScalarExpr::zero(alg->coords()));
    e[j] = ScalarExpr::one(alg->coords());
    ExprMatrix cand = frame.with_appended_column(e);
    if (generic_rank(cand) > have) {
      frame = std::move(cand);
      ++have;
    }
  }
  if (have != p) throw std::logic_error("frame completion failed despite full-rank span");

  ExprMatrix dual = inverse(frame);  // row a is the coframe Theta^a
  FrobeniusCertificate cert{false, {}, {}, frame, std::nullopt};
  cert.theta.reserve(p);
  for (std::size_t a = 0; a < p; ++a) cert.theta.push_back(one_form(alg, dual.row(a)));

  std::vector<Section> frame_sections;
  frame_sections.reserve(p);
  for (std::size_t j = 0; j < p; ++j) frame_sections.push_back(Section(alg, frame.column(j)));

  // expand d Theta^alpha in the Theta wedge basis by evaluation on the
  // completed frame: coefficient at (i < j) is d Theta^alpha (S_i, S_j)
  std::size_t nann = p - r;
  std::vector<Form> dtheta;
  dtheta.reserve(nann);
  for (std::size_t al = r; al < p; ++al) dtheta.push_back(d(cert.theta[al]));

  for (std::size_t al = r; al < p; ++al) {
    const Form& dt = dtheta[al - r];
    for (std::size_t b = 0; b < r; ++b) {
      for (std::size_t c = b + 1; c < r; ++c) {
        ScalarExpr a_coeff = evaluate(dt, {frame_sections[b], frame_sections[c]});
        // proof cross-check: A^alpha_{bc} = -Theta^alpha([S_b, S_c])
        ScalarExpr indep =
            -evaluate(cert.theta[al], {bracket(frame_sections[b], frame_sections[c])});
        if (!a_coeff.value_equals(indep)) {
          throw std::logic_error("Frobenius A-coefficient cross-check disagreement");
        }
        if (!a_coeff.is_zero()) {
          cert.involutive = false;
          cert.witness = FrobeniusCertificate::Witness{al, b, c, a_coeff};
          return cert;
        }
      }
    }
  }

  // involutive: Omega^alpha_gamma = B^alpha_{b gamma} Theta^b
  //                               + 1/2 C^alpha_{beta gamma} Theta^beta
  cert.involutive = true;
  ScalarExpr half = ScalarExpr::from_rational(alg->coords(), mpq_class(1, 2));
  cert.omega.assign(nann, std::vector<Form>());
  for (std::size_t al = r; al < p; ++al) {
    const Form& dt = dtheta[al - r];
    auto& row = cert.omega[al - r];
    row.reserve(nann);
    for (std::size_t ga = r; ga < p; ++ga) {
      Form w = Form::zero(alg, 1);
      for (std::size_t b = 0; b < r; ++b) {
        ScalarExpr bcoeff = evaluate(dt, {frame_sections[b], frame_sections[ga]});
        if (!bcoeff.is_zero()) w = w + cert.theta[b].scaled(bcoeff);
      }
      for (std::size_t be = r; be < p; ++be) {
        if (be == ga) continue;
        // C^alpha_{beta gamma} with antisymmetric extension
        ScalarExpr ccoeff = be < ga ? evaluate(dt, {frame_sections[be], frame_sections[ga]})
                                    : -evaluate(dt, {frame_sections[ga], frame_sections[be]});
        if (!ccoeff.is_zero()) w = w + cert.theta[be].scaled(half * ccoeff);
      }
      row.push_back(std::move(w));
    }
  }

  // the certificate is only returned once d Theta^alpha = sum Omega ^ Theta
  // holds exactly
  for (std::size_t al = r; al < p; ++al) {
    Form rhs = Form::zero(alg, 2);
    for (std::size_t ga = r; ga < p; ++ga) {
      rhs = rhs + wedge(cert.omega[al - r][ga - r], cert.theta[ga]);
    }
    if (!dtheta[al - r].equals(rhs)) {
      throw std::logic_error("Frobenius certificate failed its exactness verification");
    }
  }
  return cert;
}

bool eds_closure_check(const IDS& ids) {
  Annihilator ann = annihilator(ids);
  if (ann.coframes.empty()) return true;  // r = p, the zero ideal
  Form big = ann.coframes[0];
  for (std::size_t i = 1; i < ann.coframes.size(); ++i) big = wedge(big, ann.coframes[i]);
  for (const auto& theta : ann.coframes) {
    if (!wedge(d(theta), big).is_zero()) return false;
  }
  return true;
}

}  // namespace lieax
