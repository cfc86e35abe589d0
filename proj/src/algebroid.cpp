#include "lieax/algebroid.hpp"

#include <algorithm>
#include <unordered_set>

namespace lieax {

FrameAlgebra::FrameAlgebra(CoordsPtr coords, std::vector<std::string> frame_names,
                           ExprMatrix anchor,
                           std::map<std::array<std::size_t, 3>, ScalarExpr> structure)
    : coords_(std::move(coords)),
      frame_names_(std::move(frame_names)),
      anchor_(std::move(anchor)) {
  if (frame_names_.empty()) throw DomainError("frame algebra needs rank >= 1");
  std::unordered_set<std::string> seen;
  for (const auto& n : frame_names_) {
    if (!is_valid_identifier(n)) throw DomainError("invalid frame name: '" + n + "'");
    if (!seen.insert(n).second) throw DomainError("duplicate frame name: '" + n + "'");
  }
  if (anchor_.rows() != coords_->dimension() || anchor_.cols() != frame_names_.size()) {
    throw DomainError("anchor matrix must be (base dimension) x (rank)");
  }
  if (!(anchor_.coords() == coords_) && *anchor_.coords() != *coords_) {
    throw DomainError("anchor entries live over the wrong coordinate system");
  }
  for (auto& [key, expr] : structure) {
    if (!(expr.coords() == coords_) && *expr.coords() != *coords_) {
      throw DomainError("structure functions live over the wrong coordinate system");
    }
    auto [gamma, alpha, beta] = key;
    if (gamma >= rank() || alpha >= rank() || beta >= rank()) {
      throw DomainError("structure function index out of range");
    }
    if (alpha >= beta) throw DomainError("structure functions are stored for alpha < beta only");
    if (!expr.is_zero()) structure_.emplace(key, std::move(expr));
  }
}

ScalarExpr FrameAlgebra::structure(std::size_t gamma, std::size_t alpha, std::size_t beta) const {
  if (gamma >= rank() || alpha >= rank() || beta >= rank()) {
    throw DomainError("structure function index out of range");
  }
  if (alpha == beta) return ScalarExpr::zero(coords_);
  bool flip = alpha > beta;
  if (flip) std::swap(alpha, beta);
  auto it = structure_.find({gamma, alpha, beta});
  if (it == structure_.end()) return ScalarExpr::zero(coords_);
  return flip ? -it->second : it->second;
}

ScalarExpr FrameAlgebra::anchor_apply_frame(std::size_t alpha, const ScalarExpr& f) const {
  ScalarExpr s = ScalarExpr::zero(coords_);
  for (std::size_t i = 0; i < dim(); ++i) {
    const ScalarExpr& a = anchor_.at(i, alpha);
    if (a.is_zero()) continue;
    s = s + a * f.partial(i);
  }
  return s;
}

bool FrameAlgebra::same_as(const FrameAlgebra& other) const {
  if (this == &other) return true;
  if (*coords_ != *other.coords_ || frame_names_ != other.frame_names_) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t a = 0; a < rank(); ++a) {
      if (!anchor_.at(i, a).value_equals(other.anchor_.at(i, a))) return false;
    }
  }
  for (std::size_t g = 0; g < rank(); ++g) {
    for (std::size_t a = 0; a < rank(); ++a) {
      for (std::size_t b = a + 1; b < rank(); ++b) {
        if (!structure(g, a, b).value_equals(other.structure(g, a, b))) return false;
      }
    }
  }
  return true;
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return;
  if (a && b && a->same_as(*b)) return;
  throw DomainError("sections/forms live over different frame algebras");
}

Section::Section(AlgebraPtr alg, std::vector<ScalarExpr> comps)
    : algebra(std::move(alg)), components(std::move(comps)) {
  if (components.size() != algebra->rank()) {
    throw DomainError("section needs exactly rank components");
  }
}

Section Section::zero(AlgebraPtr alg) {
  std::vector<ScalarExpr> c(alg->rank(), ScalarExpr::zero(alg->coords()));
  return Section(std::move(alg), std::move(c));
}

Section Section::frame(AlgebraPtr alg, std::size_t alpha) {
  if (alpha >= alg->rank()) throw DomainError("frame index out of range");
  Section s = zero(alg);
  s.components[alpha] = ScalarExpr::one(s.algebra->coords());
  return s;
}

bool Section::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](const ScalarExpr& e) { return e.is_zero(); });
}

std::string Section::str() const {
  std::string s;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += ", ";
    s += components[i].str();
  }
  return s;
}

Section operator+(const Section& a, const Section& b) {
  require_same_algebra(a.algebra, b.algebra);
  std::vector<ScalarExpr> c;
  c.reserve(a.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) c.push_back(a.components[i] + b.components[i]);
  return Section(a.algebra, std::move(c));
}

Section operator-(const Section& a, const Section& b) {
  require_same_algebra(a.algebra, b.algebra);
  std::vector<ScalarExpr> c;
  c.reserve(a.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) c.push_back(a.components[i] - b.components[i]);
  return Section(a.algebra, std::move(c));
}

Section scaled(const ScalarExpr& f, const Section& z) {
  std::vector<ScalarExpr> c;
  c.reserve(z.components.size());
  for (const auto& e : z.components) c.push_back(f * e);
  return Section(z.algebra, std::move(c));
}

ScalarExpr anchor_apply(const Section& z, const ScalarExpr& f) {
  const FrameAlgebra& alg = *z.algebra;
  ScalarExpr s = ScalarExpr::zero(alg.coords());
  for (std::size_t a = 0; a < alg.rank(); ++a) {
    if (z.components[a].is_zero()) continue;
    s = s + z.components[a] * alg.anchor_apply_frame(a, f);
  }
  return s;
}

Section bracket(const Section& u, const Section& v) {
  require_same_algebra(u.algebra, v.algebra);
  const FrameAlgebra& alg = *u.algebra;
  std::size_t p = alg.rank();
  std::vector<ScalarExpr> c;
  c.reserve(p);
  for (std::size_t g = 0; g < p; ++g) {
    ScalarExpr s = anchor_apply(u, v.components[g]) - anchor_apply(v, u.components[g]);
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = a + 1; b < p; ++b) {
        ScalarExpr l = alg.structure(g, a, b);
        if (l.is_zero()) continue;
        // antisymmetric pair (a,b) and (b,a) folded together
        s = s + (u.components[a] * v.components[b] - u.components[b] * v.components[a]) * l;
      }
    }
    c.push_back(std::move(s));
  }
  return Section(u.algebra, std::move(c));
}

CheckReport validate_axioms(const AlgebraPtr& algebra) {
  const FrameAlgebra& alg = *algebra;
  std::size_t p = alg.rank();
  CheckReport report;
  report.name = "algebroid axioms";
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) {
      for (std::size_t g = b + 1; g < p; ++g) {
        Section ta = Section::frame(algebra, a);
        Section tb = Section::frame(algebra, b);
        Section tg = Section::frame(algebra, g);
        Section cyc = bracket(bracket(ta, tb), tg) + bracket(bracket(tb, tg), ta) +
                      bracket(bracket(tg, ta), tb);
        report.add("jacobi", {a + 1, b + 1, g + 1}, cyc.is_zero(), cyc.str());
      }
    }
  }
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) {
      for (std::size_t i = 0; i < alg.dim(); ++i) {
        ScalarExpr lhs = ScalarExpr::zero(alg.coords());
        for (std::size_t g = 0; g < p; ++g) {
          ScalarExpr l = alg.structure(g, a, b);
          if (l.is_zero()) continue;
          lhs = lhs + l * alg.anchor().at(i, g);
        }
        ScalarExpr rhs = ScalarExpr::zero(alg.coords());
        for (std::size_t j = 0; j < alg.dim(); ++j) {
          rhs = rhs + alg.anchor().at(j, a) * alg.anchor().at(i, b).partial(j) -
                alg.anchor().at(j, b) * alg.anchor().at(i, a).partial(j);
        }
        ScalarExpr residual = lhs - rhs;
        report.add("anchor-morphism", {a + 1, b + 1, i + 1}, residual.is_zero(), residual.str());
      }
    }
  }
  return report;
}

AlgebraPtr frame_change(const AlgebraPtr& algebra, const ExprMatrix& g) {
  const FrameAlgebra& alg = *algebra;
  std::size_t p = alg.rank();
  if (g.rows() != p || g.cols() != p) throw DomainError("frame change matrix must be rank x rank");
  ExprMatrix ginv = inverse(g);  // throws when generically singular
  ExprMatrix new_anchor = matmul(alg.anchor(), g);
  std::map<std::array<std::size_t, 3>, ScalarExpr> new_structure;
  for (std::size_t a = 0; a < p; ++a) {
    Section sa = Section(algebra, g.column(a));
    for (std::size_t b = a + 1; b < p; ++b) {
      Section sb = Section(algebra, g.column(b));
      std::vector<ScalarExpr> w = bracket(sa, sb).components;
      // express [t'_a, t'_b] in the new frame
      std::vector<ScalarExpr> x = matvec(ginv, w);
      for (std::size_t gamma = 0; gamma < p; ++gamma) {
        if (!x[gamma].is_zero()) new_structure.emplace(std::array<std::size_t, 3>{gamma, a, b}, x[gamma]);
      }
    }
  }
  return std::make_shared<const FrameAlgebra>(alg.coords(), alg.frame_names(), std::move(new_anchor),
                                              std::move(new_structure));
}

AlgebraPtr base_change(const AlgebraPtr& algebra, const std::vector<ScalarExpr>& fwd,
                       const std::vector<ScalarExpr>& inv, CoordsPtr new_coords) {
  const FrameAlgebra& alg = *algebra;
  std::size_t n = alg.dim();
  if (fwd.size() != new_coords->dimension() || inv.size() != n) {
    throw DomainError("base change maps have wrong dimensions");
  }
  for (std::size_t j = 0; j < fwd.size(); ++j) {
    ScalarExpr round = fwd[j].substitute(inv, new_coords);
    if (!round.value_equals(ScalarExpr::coordinate(new_coords, j))) {
      throw DomainError("base change maps do not compose to the identity");
    }
  }
  ExprMatrix new_anchor(new_coords, new_coords->dimension(), alg.rank());
  for (std::size_t j = 0; j < new_coords->dimension(); ++j) {
    for (std::size_t a = 0; a < alg.rank(); ++a) {
      ScalarExpr s = ScalarExpr::zero(alg.coords());
      for (std::size_t i = 0; i < n; ++i) s = s + fwd[j].partial(i) * alg.anchor().at(i, a);
      new_anchor.at(j, a) = s.substitute(inv, new_coords);
    }
  }
  std::map<std::array<std::size_t, 3>, ScalarExpr> new_structure;
  for (const auto& [key, expr] : alg.structure_table()) {
    new_structure.emplace(key, expr.substitute(inv, new_coords));
  }
  return std::make_shared<const FrameAlgebra>(new_coords, alg.frame_names(), std::move(new_anchor),
                                              std::move(new_structure));
}

void validate_spec(const GeneralizedAlgebroidSpec& spec) {
  std::size_t m = spec.m_coords->dimension();
  std::size_t n = spec.n_coords->dimension();
  std::size_t p = spec.rank();
  if (p == 0) throw DomainError("generalized algebroid needs rank >= 1");
  if (spec.rho.rows() != m || spec.rho.cols() != p) {
    throw DomainError("rho must be (dim M) x (rank) over the N coordinates");
  }
  if (spec.h.size() != n) throw DomainError("h must supply one expression per N coordinate");
  if (spec.eta.size() != m) throw DomainError("eta must supply one expression per M coordinate");

  // h o eta : N -> N in coordinates
  std::vector<ScalarExpr> comp;
  comp.reserve(n);
  for (std::size_t i = 0; i < n; ++i) comp.push_back(spec.h[i].substitute(spec.eta, spec.n_coords));

  bool is_identity = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!comp[i].value_equals(ScalarExpr::coordinate(spec.n_coords, i))) is_identity = false;
  }
  if (is_identity) return;
  if (!spec.h_eta_inverse) {
    throw DomainError("h o eta is not the identity and no h_eta_inverse was supplied");
  }
  const auto& inv = *spec.h_eta_inverse;
  if (inv.size() != n) throw DomainError("h_eta_inverse must supply one expression per N coordinate");
  for (std::size_t i = 0; i < n; ++i) {
    ScalarExpr a = comp[i].substitute(inv, spec.n_coords);
    ScalarExpr b = inv[i].substitute(comp, spec.n_coords);
    if (!a.value_equals(ScalarExpr::coordinate(spec.n_coords, i)) ||
        !b.value_equals(ScalarExpr::coordinate(spec.n_coords, i))) {
      throw DomainError("declared h_eta_inverse does not invert h o eta");
    }
  }
}

ExprMatrix effective_anchor(const GeneralizedAlgebroidSpec& spec) {
  validate_spec(spec);
  std::size_t m = spec.m_coords->dimension();
  std::size_t n = spec.n_coords->dimension();
  std::size_t p = spec.rank();

  std::vector<ScalarExpr> comp;
  comp.reserve(n);
  for (std::size_t i = 0; i < n; ++i) comp.push_back(spec.h[i].substitute(spec.eta, spec.n_coords));
  bool is_identity = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!comp[i].value_equals(ScalarExpr::coordinate(spec.n_coords, i))) is_identity = false;
  }

  ExprMatrix theta(spec.n_coords, n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      ScalarExpr s = ScalarExpr::zero(spec.n_coords);
      for (std::size_t j = 0; j < m; ++j) {
        // d h^i/dx^j composed with eta, times rho^j_a
        ScalarExpr dh = spec.h[i].partial(j).substitute(spec.eta, spec.n_coords);
        s = s + dh * spec.rho.at(j, a);
      }
      if (!is_identity) s = s.substitute(*spec.h_eta_inverse, spec.n_coords);
      theta.at(i, a) = s;
    }
  }
  return theta;
}

AlgebraPtr as_frame_algebra(const GeneralizedAlgebroidSpec& spec) {
  ExprMatrix theta = effective_anchor(spec);
  return std::make_shared<const FrameAlgebra>(spec.n_coords, spec.frame_names, std::move(theta),
                                              spec.structure);
}

AlgebraPtr pullback_algebroid(const GeneralizedAlgebroidSpec& spec) {
  validate_spec(spec);
  std::size_t m = spec.m_coords->dimension();
  std::size_t p = spec.rank();
  ExprMatrix anchor(spec.m_coords, m, p);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      anchor.at(i, a) = spec.rho.at(i, a).substitute(spec.h, spec.m_coords);
    }
  }
  std::map<std::array<std::size_t, 3>, ScalarExpr> structure;
  for (const auto& [key, expr] : spec.structure) {
    structure.emplace(key, expr.substitute(spec.h, spec.m_coords));
  }
  return std::make_shared<const FrameAlgebra>(spec.m_coords, spec.frame_names, std::move(anchor),
                                              std::move(structure));
}

}  // namespace lieax
