#ifndef LIEAX_EXPR_HPP
#define LIEAX_EXPR_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lieax {

/// Syntax error in the expression (or form/section literal) grammar.
/// `position` is a 0-based byte offset into the offending text.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Violation of a mathematical precondition: division by a value-zero
/// expression, unknown coordinate, mismatched coordinate systems, singular
/// matrix, malformed declaration data, and the like.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Ordered list of distinct coordinate names. Dimension 0 is legal (base
/// manifold is a point).
class CoordinateSystem {
public:
  explicit CoordinateSystem(std::vector<std::string> names);

  std::size_t dimension() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const CoordinateSystem& other) const { return names_ == other.names_; }
  bool operator!=(const CoordinateSystem& other) const { return !(*this == other); }

private:
  std::vector<std::string> names_;
};

using CoordsPtr = std::shared_ptr<const CoordinateSystem>;

CoordsPtr make_coords(std::vector<std::string> names);

/// True iff `name` is a letter followed by letters, digits or underscores.
bool is_valid_identifier(std::string_view name);

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order, larger monomials first: higher total degree
/// wins; ties broken by the first differing exponent (earlier declared
/// coordinates are more significant).
struct GrlexDescending {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept in descending graded-lex order and never carry zero coefficients.
class Polynomial {
public:
  using TermMap = std::map<Exponents, mpq_class, GrlexDescending>;

  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  static Polynomial constant(std::size_t nvars, const mpq_class& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Requires is_constant(); zero polynomial yields 0.
  mpq_class constant_value() const;
  std::size_t term_count() const noexcept { return terms_.size(); }
  unsigned total_degree() const;

  const TermMap& terms() const noexcept { return terms_; }
  /// Requires a nonzero polynomial.
  const mpq_class& leading_coefficient() const;

  void add_term(const Exponents& exps, const mpq_class& coeff);

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  bool operator==(const Polynomial& other) const;

  Polynomial scaled(const mpq_class& c) const;
  Polynomial pow(unsigned e) const;
  Polynomial derivative(std::size_t var) const;

  /// Exact quotient when the divisor divides this polynomial, nullopt
  /// otherwise. Leading-term division in graded-lex order decides
  /// divisibility for a single divisor.
  std::optional<Polynomial> divided_exactly_by(const Polynomial& divisor) const;

  std::string str(const CoordinateSystem& coords) const;

private:
  std::size_t nvars_;
  TermMap terms_;
};

/// Exact rational function over a coordinate system, the computational model
/// of F(N). Canonical form: denominator nonzero and monic in graded-lex
/// order, zero numerator forces denominator 1, and a best-effort trial
/// division cancels the fraction when one side exactly divides the other.
/// Immutable after construction; all operations are pure.
class ScalarExpr {
public:
  static ScalarExpr zero(CoordsPtr coords);
  static ScalarExpr one(CoordsPtr coords);
  static ScalarExpr from_rational(CoordsPtr coords, const mpq_class& c);
  static ScalarExpr from_int(CoordsPtr coords, long v);
  static ScalarExpr coordinate(CoordsPtr coords, std::size_t index);
  static ScalarExpr coordinate(CoordsPtr coords, std::string_view name);
  /// Throws DomainError when `den` is the zero polynomial.
  static ScalarExpr from_fraction(CoordsPtr coords, Polynomial num, Polynomial den);

  const CoordsPtr& coords() const noexcept { return coords_; }
  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const;
  /// Decides value equality exactly via cross-multiplication.
  bool value_equals(const ScalarExpr& other) const;

  ScalarExpr operator-() const;
  friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  /// Throws DomainError when `b` is value-zero.
  friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);

  ScalarExpr pow(unsigned e) const;

  /// Exact quotient-rule partial derivative.
  ScalarExpr partial(std::size_t var) const;
  ScalarExpr partial(std::string_view coord_name) const;

  /// Exact composition: every coordinate of this expression is replaced by
  /// `bindings[i]`, all of which live over `target`. Throws when a
  /// substituted denominator becomes value-zero.
  ScalarExpr substitute(const std::vector<ScalarExpr>& bindings, CoordsPtr target) const;
  /// Name-keyed variant; every coordinate must be bound and every key must
  /// name a coordinate of this expression's system.
  ScalarExpr substitute(const std::map<std::string, ScalarExpr>& bindings, CoordsPtr target) const;

  /// Deterministic canonical rendering; bit-exact for equal canonical forms,
  /// and parse(str()) reproduces the identical canonical form.
  std::string str() const;

private:
  ScalarExpr(CoordsPtr coords, Polynomial num, Polynomial den);
  void normalize();

  CoordsPtr coords_;
  Polynomial num_;
  Polynomial den_;
};

void require_same_coords(const ScalarExpr& a, const ScalarExpr& b);

/// Recursive-descent parser for the expression grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := ['-'] atom ['^' nonneg_int]
///   atom   := integer | identifier | '(' expr ')'
/// Whitespace is insignificant; implicit multiplication is not supported.
ScalarExpr parse_expr(std::string_view text, CoordsPtr coords);

}  // namespace lieax

#endif
