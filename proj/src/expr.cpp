#include "lieax/expr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace lieax {

bool is_valid_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name.substr(1)) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

CoordinateSystem::CoordinateSystem(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!is_valid_identifier(n)) throw DomainError("invalid coordinate name: '" + n + "'");
    if (!seen.insert(n).second) throw DomainError("duplicate coordinate name: '" + n + "'");
  }
}

std::optional<std::size_t> CoordinateSystem::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

CoordsPtr make_coords(std::vector<std::string> names) {
  return std::make_shared<const CoordinateSystem>(std::move(names));
}

bool GrlexDescending::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial Polynomial::constant(std::size_t nvars, const mpq_class& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DomainError("variable index out of range");
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exponents& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

mpq_class Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  }
  return d;
}

const mpq_class& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return terms_.begin()->second;
}

void Polynomial::add_term(const Exponents& exps, const mpq_class& coeff) {
  if (exps.size() != nvars_) throw DomainError("exponent vector length mismatch");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("polynomial arity mismatch");
  Polynomial r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("polynomial arity mismatch");
  Polynomial r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("polynomial arity mismatch");
  Polynomial r(a.nvars_);
  Exponents e(a.nvars_, 0);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return nvars_ == other.nvars_ && terms_ == other.terms_;
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
  Polynomial r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = Polynomial::constant(nvars_, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw DomainError("variable index out of range");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

std::optional<Polynomial> Polynomial::divided_exactly_by(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DomainError("division by zero polynomial");
  Polynomial quotient(nvars_);
  Polynomial rem = *this;
  const Exponents& dlm = divisor.terms_.begin()->first;
  const mpq_class& dlc = divisor.terms_.begin()->second;
  Exponents q(nvars_, 0);
  while (!rem.is_zero()) {
    const Exponents& rlm = rem.terms_.begin()->first;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (rlm[i] < dlm[i]) return std::nullopt;
      q[i] = rlm[i] - dlm[i];
    }
    mpq_class qc = rem.terms_.begin()->second / dlc;
    quotient.add_term(q, qc);
    Polynomial t(nvars_);
    t.add_term(q, qc);
    rem = rem - t * divisor;
  }
  return quotient;
}

namespace {

std::string monomial_str(const Exponents& e, const CoordinateSystem& coords) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += coords.name(i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string coeff_str(const mpq_class& c) { return c.get_str(); }

}  // namespace

std::string Polynomial::str(const CoordinateSystem& coords) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpq_class mag = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) s += "-";
      first = false;
    } else {
      s += neg ? " - " : " + ";
    }
    std::string mono = monomial_str(e, coords);
    if (mono.empty()) {
      s += coeff_str(mag);
    } else if (mag == 1) {
      s += mono;
    } else {
      s += coeff_str(mag) + "*" + mono;
    }
  }
  return s;
}

ScalarExpr::ScalarExpr(CoordsPtr coords, Polynomial num, Polynomial den)
    : coords_(std::move(coords)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void ScalarExpr::normalize() {
  if (den_.is_zero()) throw DomainError("zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(den_.nvars(), 1);
    return;
  }
  if (auto q = num_.divided_exactly_by(den_)) {
    num_ = std::move(*q);
    den_ = Polynomial::constant(den_.nvars(), 1);
    return;
  }
  if (auto q = den_.divided_exactly_by(num_)) {
    den_ = std::move(*q);
    num_ = Polynomial::constant(num_.nvars(), 1);
  }
  mpq_class lc = den_.leading_coefficient();
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    den_ = den_.scaled(inv);
    num_ = num_.scaled(inv);
  }
}

ScalarExpr ScalarExpr::zero(CoordsPtr coords) { return from_rational(std::move(coords), 0); }

ScalarExpr ScalarExpr::one(CoordsPtr coords) { return from_rational(std::move(coords), 1); }

ScalarExpr ScalarExpr::from_rational(CoordsPtr coords, const mpq_class& c) {
  std::size_t n = coords->dimension();
  return ScalarExpr(std::move(coords), Polynomial::constant(n, c), Polynomial::constant(n, 1));
}

ScalarExpr ScalarExpr::from_int(CoordsPtr coords, long v) {
  return from_rational(std::move(coords), mpq_class(v));
}

ScalarExpr ScalarExpr::coordinate(CoordsPtr coords, std::size_t index) {
  std::size_t n = coords->dimension();
  return ScalarExpr(std::move(coords), Polynomial::variable(n, index), Polynomial::constant(n, 1));
}

ScalarExpr ScalarExpr::coordinate(CoordsPtr coords, std::string_view name) {
  auto idx = coords->index_of(name);
  if (!idx) throw DomainError("unknown coordinate: '" + std::string(name) + "'");
  return coordinate(std::move(coords), *idx);
}

ScalarExpr ScalarExpr::from_fraction(CoordsPtr coords, Polynomial num, Polynomial den) {
  return ScalarExpr(std::move(coords), std::move(num), std::move(den));
}

bool ScalarExpr::is_one() const {
  return num_.is_constant() && den_.is_constant() && num_.constant_value() == den_.constant_value() &&
         !num_.is_zero();
}

bool ScalarExpr::value_equals(const ScalarExpr& other) const {
  require_same_coords(*this, other);
  return (num_ * other.den_ - other.num_ * den_).is_zero();
}

void require_same_coords(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.coords() == b.coords()) return;
  if (*a.coords() == *b.coords()) return;
  throw DomainError("coordinate system mismatch");
}

ScalarExpr ScalarExpr::operator-() const { return ScalarExpr(coords_, -num_, den_); }

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  require_same_coords(a, b);
  if (a.den_ == b.den_) return ScalarExpr(a.coords_, a.num_ + b.num_, a.den_);
  return ScalarExpr(a.coords_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  require_same_coords(a, b);
  if (a.den_ == b.den_) return ScalarExpr(a.coords_, a.num_ - b.num_, a.den_);
  return ScalarExpr(a.coords_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  require_same_coords(a, b);
  return ScalarExpr(a.coords_, a.num_ * b.num_, a.den_ * b.den_);
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  require_same_coords(a, b);
  if (b.is_zero()) throw DomainError("division by value-zero expression");
  return ScalarExpr(a.coords_, a.num_ * b.den_, a.den_ * b.num_);
}

ScalarExpr ScalarExpr::pow(unsigned e) const {
  ScalarExpr r = ScalarExpr::one(coords_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

ScalarExpr ScalarExpr::partial(std::size_t var) const {
  if (var >= coords_->dimension()) throw DomainError("coordinate index out of range");
  Polynomial dn = num_.derivative(var);
  if (den_.is_constant()) {
    return ScalarExpr(coords_, std::move(dn), den_);
  }
  Polynomial dd = den_.derivative(var);
  return ScalarExpr(coords_, dn * den_ - num_ * dd, den_ * den_);
}

ScalarExpr ScalarExpr::partial(std::string_view coord_name) const {
  auto idx = coords_->index_of(coord_name);
  if (!idx) throw DomainError("unknown coordinate: '" + std::string(coord_name) + "'");
  return partial(*idx);
}

namespace {

// Evaluates a polynomial at the given (already validated) bindings, with
// per-variable power caching.
ScalarExpr eval_poly(const Polynomial& p, const std::vector<ScalarExpr>& bindings,
                     const CoordsPtr& target) {
  ScalarExpr acc = ScalarExpr::zero(target);
  std::vector<std::vector<ScalarExpr>> powers(bindings.size());
  auto power_of = [&](std::size_t var, std::uint32_t e) -> const ScalarExpr& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(ScalarExpr::one(target));
    while (cache.size() <= e) cache.push_back(cache.back() * bindings[var]);
    return cache[e];
  };
  for (const auto& [exps, c] : p.terms()) {
    ScalarExpr term = ScalarExpr::from_rational(target, c);
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] > 0) term = term * power_of(v, exps[v]);
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace

ScalarExpr ScalarExpr::substitute(const std::vector<ScalarExpr>& bindings, CoordsPtr target) const {
  if (bindings.size() != coords_->dimension()) {
    throw DomainError("substitution requires a binding for every coordinate");
  }
  for (const auto& b : bindings) {
    if (!(b.coords() == target) && *b.coords() != *target) {
      throw DomainError("substitution binding over wrong coordinate system");
    }
  }
  ScalarExpr n = eval_poly(num_, bindings, target);
  ScalarExpr d = eval_poly(den_, bindings, target);
  if (d.is_zero()) throw DomainError("substitution makes a denominator value-zero");
  return n / d;
}

ScalarExpr ScalarExpr::substitute(const std::map<std::string, ScalarExpr>& bindings,
                                  CoordsPtr target) const {
  for (const auto& [name, value] : bindings) {
    (void)value;
    if (!coords_->index_of(name)) {
      throw DomainError("binding for unknown coordinate: '" + name + "'");
    }
  }
  std::vector<ScalarExpr> by_index;
  by_index.reserve(coords_->dimension());
  for (std::size_t i = 0; i < coords_->dimension(); ++i) {
    auto it = bindings.find(coords_->name(i));
    if (it == bindings.end()) {
      throw DomainError("unbound coordinate: '" + coords_->name(i) + "'");
    }
    by_index.push_back(it->second);
  }
  return substitute(by_index, std::move(target));
}

std::string ScalarExpr::str() const {
  if (den_.is_constant()) {
    // canonical form scales constants into the numerator, so den is 1 here
    return num_.str(*coords_);
  }
  return "(" + num_.str(*coords_) + ")/(" + den_.str(*coords_) + ")";
}

namespace {

class Parser {
public:
  Parser(std::string_view text, CoordsPtr coords) : text_(text), coords_(std::move(coords)) {}

  ScalarExpr run() {
    ScalarExpr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

private:
  std::string_view text_;
  CoordsPtr coords_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ScalarExpr parse_sum() {
    ScalarExpr e = parse_term();
    for (;;) {
      if (eat('+')) {
        e = e + parse_term();
      } else if (eat('-')) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  ScalarExpr parse_term() {
    ScalarExpr e = parse_factor();
    for (;;) {
      if (eat('*')) {
        e = e * parse_factor();
      } else if (peek() == '/') {
        std::size_t op_pos = pos_;
        ++pos_;
        ScalarExpr rhs = parse_factor();
        if (rhs.is_zero()) throw ParseError("division by zero constant", op_pos);
        e = e / rhs;
      } else {
        return e;
      }
    }
  }

  ScalarExpr parse_factor() {
    bool negate = eat('-');
    ScalarExpr e = parse_atom();
    if (peek() == '^') {
      std::size_t op_pos = pos_;
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        throw ParseError("exponent must be a nonnegative integer", pos_);
      }
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("exponent must be a nonnegative integer", op_pos);
      }
      unsigned long exp = 0;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        exp = exp * 10 + static_cast<unsigned long>(text_[pos_] - '0');
        if (exp > 100000) throw ParseError("exponent too large", start);
        ++pos_;
      }
      e = e.pow(static_cast<unsigned>(exp));
    }
    return negate ? -e : e;
  }

  ScalarExpr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarExpr e = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class v(std::string(text_.substr(start, pos_ - start)), 10);
      return ScalarExpr::from_rational(coords_, mpq_class(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto idx = coords_->index_of(name);
      if (!idx) throw ParseError("unknown identifier '" + name + "'", start);
      return ScalarExpr::coordinate(coords_, *idx);
    }
    fail("expected integer, identifier or '('");
  }
};

}  // namespace

ScalarExpr parse_expr(std::string_view text, CoordsPtr coords) {
  return Parser(text, std::move(coords)).run();
}

}  // namespace lieax
