#include "lieax/forms.hpp"

#include <algorithm>

namespace lieax {

namespace {

// Calls fn on every strictly increasing k-tuple from {0..n-1}.
template <typename Fn>
void for_each_increasing_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  if (k == 0) {
    fn(t);
    return;
  }
  for (;;) {
    fn(t);
    std::size_t i = k;
    bool done = true;
    while (i-- > 0) {
      if (t[i] + (k - i) < n) {
        done = false;
        break;
      }
    }
    if (done) return;
    ++t[i];
    for (std::size_t j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
  }
}

// Sorts the key in place; returns +1/-1 for the permutation applied, 0 when
// an index repeats.
int sort_key_sign(Form::Key& key) {
  int sign = 1;
  for (std::size_t i = 1; i < key.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && key[j - 1] > key[j]) {
      std::swap(key[j - 1], key[j]);
      sign = -sign;
      --j;
    }
    if (j > 0 && key[j - 1] == key[j]) return 0;
  }
  return sign;
}

}  // namespace

Form::Form(AlgebraPtr algebra, std::size_t degree)
    : algebra_(std::move(algebra)), degree_(degree) {}

Form Form::zero(AlgebraPtr algebra, std::size_t degree) { return Form(std::move(algebra), degree); }

Form Form::scalar(AlgebraPtr algebra, ScalarExpr f) {
  Form w(std::move(algebra), 0);
  if (!f.is_zero()) w.comps_.emplace(Key{}, std::move(f));
  return w;
}

Form Form::coframe(AlgebraPtr algebra, std::size_t alpha) {
  if (alpha >= algebra->rank()) throw DomainError("coframe index out of range");
  Form w(algebra, 1);
  w.comps_.emplace(Key{alpha}, ScalarExpr::one(algebra->coords()));
  return w;
}

ScalarExpr Form::component(const Key& key) const {
  auto it = comps_.find(key);
  if (it == comps_.end()) return ScalarExpr::zero(algebra_->coords());
  return it->second;
}

ScalarExpr Form::component_signed(const Key& key) const {
  Key k = key;
  int sign = sort_key_sign(k);
  if (sign == 0) return ScalarExpr::zero(algebra_->coords());
  ScalarExpr c = component(k);
  return sign > 0 ? c : -c;
}

void Form::add_component(const Key& key, const ScalarExpr& value) {
  if (key.size() != degree_) throw DomainError("component key length must equal the form degree");
  if (!std::is_sorted(key.begin(), key.end()) ||
      std::adjacent_find(key.begin(), key.end()) != key.end()) {
    throw DomainError("component keys must be strictly increasing");
  }
  for (std::size_t i : key) {
    if (i >= algebra_->rank()) throw DomainError("component index out of range");
  }
  if (value.is_zero()) return;
  auto it = comps_.find(key);
  if (it == comps_.end()) {
    comps_.emplace(key, value);
    return;
  }
  it->second = it->second + value;
  if (it->second.is_zero()) comps_.erase(it);
}

bool Form::equals(const Form& other) const {
  require_same_algebra(algebra_, other.algebra_);
  // the zero form belongs to every degree
  if (degree_ != other.degree_) return is_zero() && other.is_zero();
  return (*this - other).is_zero();
}

Form Form::operator-() const {
  Form r(algebra_, degree_);
  for (const auto& [k, v] : comps_) r.comps_.emplace(k, -v);
  return r;
}

Form operator+(const Form& a, const Form& b) {
  require_same_algebra(a.algebra_, b.algebra_);
  if (a.degree_ != b.degree_) {
    // the zero form belongs to every degree
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    throw DomainError("cannot add forms of different degrees");
  }
  Form r = a;
  for (const auto& [k, v] : b.comps_) r.add_component(k, v);
  return r;
}

Form operator-(const Form& a, const Form& b) {
  require_same_algebra(a.algebra_, b.algebra_);
  if (a.degree_ != b.degree_) {
    if (a.is_zero()) return -b;
    if (b.is_zero()) return a;
    throw DomainError("cannot subtract forms of different degrees");
  }
  Form r = a;
  for (const auto& [k, v] : b.comps_) r.add_component(k, -v);
  return r;
}

Form Form::scaled(const ScalarExpr& f) const {
  Form r(algebra_, degree_);
  for (const auto& [k, v] : comps_) {
    ScalarExpr s = f * v;
    if (!s.is_zero()) r.comps_.emplace(k, std::move(s));
  }
  return r;
}

std::string Form::str() const {
  if (degree_ == 0) return component(Key{}).str();
  if (comps_.empty()) return "0";
  std::string s;
  for (const auto& [k, v] : comps_) {
    if (!s.empty()) s += " + ";
    s += "(" + v.str() + ") * e^{";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(k[i] + 1);
    }
    s += "}";
  }
  return s;
}

ScalarExpr evaluate(const Form& omega, const std::vector<Section>& args) {
  if (args.size() != omega.degree()) throw DomainError("evaluation arity must equal the form degree");
  for (const auto& z : args) require_same_algebra(omega.algebra(), z.algebra);
  const CoordsPtr& coords = omega.algebra()->coords();
  if (omega.degree() == 0) return omega.component({});
  std::size_t q = omega.degree();
  ScalarExpr acc = ScalarExpr::zero(coords);
  for (const auto& [key, comp] : omega.components()) {
    ExprMatrix m(coords, q, q);
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < q; ++j) m.at(i, j) = args[i].components[key[j]];
    }
    acc = acc + comp * determinant(m);
  }
  return acc;
}

Form wedge(const Form& omega, const Form& theta) {
  require_same_algebra(omega.algebra(), theta.algebra());
  std::size_t q = omega.degree(), r = theta.degree();
  Form result = Form::zero(omega.algebra(), q + r);
  if (q + r > omega.algebra()->rank()) return result;
  for (const auto& [ka, va] : omega.components()) {
    for (const auto& [kb, vb] : theta.components()) {
      // merge the two increasing keys, counting inversions
      Form::Key merged;
      merged.reserve(q + r);
      std::size_t i = 0, j = 0;
      std::size_t inversions = 0;
      bool clash = false;
      while (i < ka.size() && j < kb.size()) {
        if (ka[i] == kb[j]) {
          clash = true;
          break;
        }
        if (ka[i] < kb[j]) {
          merged.push_back(ka[i++]);
        } else {
          merged.push_back(kb[j++]);
          inversions += ka.size() - i;
        }
      }
      if (clash) continue;
      while (i < ka.size()) merged.push_back(ka[i++]);
      while (j < kb.size()) merged.push_back(kb[j++]);
      ScalarExpr term = va * vb;
      result.add_component(merged, (inversions % 2 == 0) ? term : -term);
    }
  }
  return result;
}

Form wedge_definitional(const Form& omega, const Form& theta) {
  require_same_algebra(omega.algebra(), theta.algebra());
  const AlgebraPtr& alg = omega.algebra();
  std::size_t q = omega.degree(), r = theta.degree();
  Form result = Form::zero(alg, q + r);
  if (q + r > alg->rank()) return result;
  mpq_class norm = 1;
  for (std::size_t k = 2; k <= q; ++k) norm *= static_cast<unsigned long>(k);
  for (std::size_t k = 2; k <= r; ++k) norm *= static_cast<unsigned long>(k);
  ScalarExpr scale = ScalarExpr::from_rational(alg->coords(), 1 / norm);
  for_each_increasing_tuple(alg->rank(), q + r, [&](const std::vector<std::size_t>& key) {
    std::vector<std::size_t> pos(q + r);
    for (std::size_t i = 0; i < q + r; ++i) pos[i] = i;
    ScalarExpr acc = ScalarExpr::zero(alg->coords());
    do {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
          if (pos[i] > pos[j]) ++inversions;
        }
      }
      std::vector<Section> first, second;
      for (std::size_t i = 0; i < q; ++i) first.push_back(Section::frame(alg, key[pos[i]]));
      for (std::size_t i = q; i < q + r; ++i) second.push_back(Section::frame(alg, key[pos[i]]));
      ScalarExpr term = evaluate(omega, first) * evaluate(theta, second);
      acc = (inversions % 2 == 0) ? acc + term : acc - term;
    } while (std::next_permutation(pos.begin(), pos.end()));
    result.add_component(key, scale * acc);
  });
  return result;
}

Form interior(const Section& z, const Form& omega) {
  require_same_algebra(z.algebra, omega.algebra());
  if (omega.degree() == 0) return Form::zero(omega.algebra(), 0);
  Form result = Form::zero(omega.algebra(), omega.degree() - 1);
  for (const auto& [key, comp] : omega.components()) {
    for (std::size_t t = 0; t < key.size(); ++t) {
      const ScalarExpr& zc = z.components[key[t]];
      if (zc.is_zero()) continue;
      Form::Key rest;
      rest.reserve(key.size() - 1);
      for (std::size_t s = 0; s < key.size(); ++s) {
        if (s != t) rest.push_back(key[s]);
      }
      ScalarExpr term = zc * comp;
      result.add_component(rest, (t % 2 == 0) ? term : -term);
    }
  }
  return result;
}

Form interior_definitional(const Section& z, const Form& omega) {
  require_same_algebra(z.algebra, omega.algebra());
  const AlgebraPtr& alg = omega.algebra();
  if (omega.degree() == 0) return Form::zero(alg, 0);
  Form result = Form::zero(alg, omega.degree() - 1);
  for_each_increasing_tuple(alg->rank(), omega.degree() - 1, [&](const std::vector<std::size_t>& key) {
    std::vector<Section> args{z};
    for (std::size_t i : key) args.push_back(Section::frame(alg, i));
    result.add_component(key, evaluate(omega, args));
  });
  return result;
}

Form lie_derivative(const Section& z, const Form& omega) {
  require_same_algebra(z.algebra, omega.algebra());
  const AlgebraPtr& alg = omega.algebra();
  if (omega.degree() == 0) {
    return Form::scalar(alg, anchor_apply(z, omega.component({})));
  }
  std::size_t p = alg->rank();
  // brackets [z, t_beta], reused across components
  std::vector<Section> zb;
  zb.reserve(p);
  for (std::size_t b = 0; b < p; ++b) zb.push_back(bracket(z, Section::frame(alg, b)));

  Form result = Form::zero(alg, omega.degree());
  for_each_increasing_tuple(p, omega.degree(), [&](const std::vector<std::size_t>& key) {
    ScalarExpr v = anchor_apply(z, omega.component(key));
    for (std::size_t i = 0; i < key.size(); ++i) {
      const Section& w = zb[key[i]];
      for (std::size_t g = 0; g < p; ++g) {
        if (w.components[g].is_zero()) continue;
        Form::Key slot = key;
        slot[i] = g;
        ScalarExpr c = omega.component_signed(slot);
        if (c.is_zero()) continue;
        v = v - w.components[g] * c;
      }
    }
    result.add_component(key, v);
  });
  return result;
}

Form d(const Form& omega) {
  const AlgebraPtr& alg = omega.algebra();
  std::size_t p = alg->rank();
  std::size_t q = omega.degree();
  Form result = Form::zero(alg, q + 1);
  if (q == 0) {
    const ScalarExpr f = omega.component({});
    for (std::size_t a = 0; a < p; ++a) result.add_component({a}, alg->anchor_apply_frame(a, f));
    return result;
  }
  for_each_increasing_tuple(p, q + 1, [&](const std::vector<std::size_t>& key) {
    ScalarExpr v = ScalarExpr::zero(alg->coords());
    for (std::size_t i = 0; i <= q; ++i) {
      Form::Key rest;
      rest.reserve(q);
      for (std::size_t s = 0; s <= q; ++s) {
        if (s != i) rest.push_back(key[s]);
      }
      ScalarExpr part = alg->anchor_apply_frame(key[i], omega.component(rest));
      v = (i % 2 == 0) ? v + part : v - part;
    }
    for (std::size_t i = 0; i <= q; ++i) {
      for (std::size_t j = i + 1; j <= q; ++j) {
        Form::Key rest;
        rest.reserve(q);
        for (std::size_t s = 0; s <= q; ++s) {
          if (s != i && s != j) rest.push_back(key[s]);
        }
        for (std::size_t g = 0; g < p; ++g) {
          ScalarExpr l = alg->structure(g, key[i], key[j]);
          if (l.is_zero()) continue;
          Form::Key full;
          full.reserve(q);
          full.push_back(g);
          full.insert(full.end(), rest.begin(), rest.end());
          ScalarExpr c = omega.component_signed(full);
          if (c.is_zero()) continue;
          ScalarExpr term = l * c;
          v = ((i + j) % 2 == 0) ? v + term : v - term;
        }
      }
    }
    result.add_component(key, v);
  });
  return result;
}

Form d_intrinsic(const Form& omega) {
  const AlgebraPtr& alg = omega.algebra();
  std::size_t p = alg->rank();
  std::size_t q = omega.degree();
  Form result = Form::zero(alg, q + 1);
  for_each_increasing_tuple(p, q + 1, [&](const std::vector<std::size_t>& key) {
    ScalarExpr v = ScalarExpr::zero(alg->coords());
    for (std::size_t i = 0; i <= q; ++i) {
      std::vector<Section> rest;
      rest.reserve(q);
      for (std::size_t s = 0; s <= q; ++s) {
        if (s != i) rest.push_back(Section::frame(alg, key[s]));
      }
      ScalarExpr part = anchor_apply(Section::frame(alg, key[i]), evaluate(omega, rest));
      v = (i % 2 == 0) ? v + part : v - part;
    }
    for (std::size_t i = 0; i <= q; ++i) {
      for (std::size_t j = i + 1; j <= q; ++j) {
        std::vector<Section> args;
        args.reserve(q);
        args.push_back(bracket(Section::frame(alg, key[i]), Section::frame(alg, key[j])));
        for (std::size_t s = 0; s <= q; ++s) {
          if (s != i && s != j) args.push_back(Section::frame(alg, key[s]));
        }
        ScalarExpr part = evaluate(omega, args);
        v = ((i + j) % 2 == 0) ? v + part : v - part;
      }
    }
    result.add_component(key, v);
  });
  return result;
}

bool is_closed(const Form& omega) { return d(omega).is_zero(); }

bool verify_exactness_witness(const Form& eta, const Form& omega) {
  require_same_algebra(eta.algebra(), omega.algebra());
  if (eta.degree() + 1 != omega.degree()) throw DomainError("witness must have degree one less");
  return d(eta).equals(omega);
}

bool is_symplectic(const Form& omega) {
  if (omega.degree() != 2) throw DomainError("symplectic check requires a 2-form");
  const AlgebraPtr& alg = omega.algebra();
  std::size_t p = alg->rank();
  if (!is_closed(omega)) return false;
  ExprMatrix b(alg->coords(), p, p);
  for (const auto& [key, comp] : omega.components()) {
    b.at(key[0], key[1]) = comp;
    b.at(key[1], key[0]) = -comp;
  }
  return generic_rank(b) == p;
}

CheckReport maurer_cartan_check(const AlgebraPtr& algebra) {
  const FrameAlgebra& alg = *algebra;
  std::size_t p = alg.rank();
  CheckReport report;
  report.name = "maurer-cartan";
  for (std::size_t a = 0; a < p; ++a) {
    Form residual = d(Form::coframe(algebra, a));
    for (std::size_t b = 0; b < p; ++b) {
      for (std::size_t g = b + 1; g < p; ++g) {
        residual.add_component({b, g}, alg.structure(a, b, g));
      }
    }
    report.add("structure-equation-coframe", {a + 1}, residual.is_zero(), residual.str());
  }
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    Form residual = d(Form::scalar(algebra, ScalarExpr::coordinate(alg.coords(), i)));
    for (std::size_t a = 0; a < p; ++a) residual.add_component({a}, -alg.anchor().at(i, a));
    report.add("structure-equation-coordinate", {i + 1}, residual.is_zero(), residual.str());
  }
  return report;
}

Morphism make_morphism(AlgebraPtr source, AlgebraPtr target, ExprMatrix phi,
                       std::vector<ScalarExpr> phi0, std::vector<ScalarExpr> phi0_inverse) {
  if (phi.rows() != target->rank() || phi.cols() != source->rank()) {
    throw DomainError("phi must be (target rank) x (source rank)");
  }
  if (phi0.size() != target->dim() || phi0_inverse.size() != source->dim()) {
    throw DomainError("base map components have wrong dimensions");
  }
  for (std::size_t i = 0; i < phi0.size(); ++i) {
    ScalarExpr round = phi0[i].substitute(phi0_inverse, target->coords());
    if (!round.value_equals(ScalarExpr::coordinate(target->coords(), i))) {
      throw DomainError("phi0 and its declared inverse do not compose to the identity");
    }
  }
  for (std::size_t j = 0; j < phi0_inverse.size(); ++j) {
    ScalarExpr round = phi0_inverse[j].substitute(phi0, source->coords());
    if (!round.value_equals(ScalarExpr::coordinate(source->coords(), j))) {
      throw DomainError("phi0 and its declared inverse do not compose to the identity");
    }
  }
  return Morphism{std::move(source), std::move(target), std::move(phi), std::move(phi0),
                  std::move(phi0_inverse)};
}

Morphism identity_morphism(const AlgebraPtr& algebra) {
  std::vector<ScalarExpr> id;
  id.reserve(algebra->dim());
  for (std::size_t i = 0; i < algebra->dim(); ++i) {
    id.push_back(ScalarExpr::coordinate(algebra->coords(), i));
  }
  return make_morphism(algebra, algebra, ExprMatrix::identity(algebra->coords(), algebra->rank()),
                       id, id);
}

Section push_section(const Morphism& m, const Section& z) {
  require_same_algebra(m.source, z.algebra);
  std::vector<ScalarExpr> comps;
  comps.reserve(m.target->rank());
  for (std::size_t b = 0; b < m.target->rank(); ++b) {
    ScalarExpr s = ScalarExpr::zero(m.source->coords());
    for (std::size_t a = 0; a < m.source->rank(); ++a) s = s + m.phi.at(b, a) * z.components[a];
    comps.push_back(s.substitute(m.phi0_inverse, m.target->coords()));
  }
  return Section(m.target, std::move(comps));
}

Form pullback(const Morphism& m, const Form& omega_target) {
  require_same_algebra(m.target, omega_target.algebra());
  std::size_t q = omega_target.degree();
  Form result = Form::zero(m.source, q);
  if (q == 0) {
    result.add_component({}, omega_target.component({}).substitute(m.phi0, m.source->coords()));
    return result;
  }
  if (q > m.source->rank()) return result;
  for (const auto& [key_b, comp] : omega_target.components()) {
    ScalarExpr coeff = comp.substitute(m.phi0, m.source->coords());
    for_each_increasing_tuple(m.source->rank(), q, [&](const std::vector<std::size_t>& key_a) {
      ExprMatrix sub(m.source->coords(), q, q);
      for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) sub.at(i, j) = m.phi.at(key_b[i], key_a[j]);
      }
      ScalarExpr det = determinant(sub);
      if (!det.is_zero()) result.add_component(key_a, coeff * det);
    });
  }
  return result;
}

}  // namespace lieax
