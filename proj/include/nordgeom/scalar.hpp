#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nordgeom/errors.hpp"

namespace nordgeom {

// Arbitrary-precision rational, always kept canonical (denominator > 0,
// reduced). GMP canonicalizes after every arithmetic operation.
using Rational = mpq_class;

// Parses "3", "-7", "1/2", "-4/6" (reduced on return).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

// Ordered list of parameter names shared by every Scalar of a session.
class ParamList {
 public:
  ParamList() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit ParamList(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return *names_; }
  std::size_t size() const { return names_->size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const ParamList& a, const ParamList& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using Assignment = std::map<std::string, Rational>;

// Total-degree cap for monomials. Default 16; exceeding it throws
// DegreeOverflowError.
int max_degree();
void set_max_degree(int cap);

// Exponent vector, one slot per parameter of the ambient ParamList.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents);
  static Monomial one(std::size_t nparams) { return Monomial(std::vector<std::uint32_t>(nparams, 0)); }

  const std::vector<std::uint32_t>& exponents() const { return exponents_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  // Requires divides(other) to hold for `*this` dividing `other`.
  Monomial quotient(const Monomial& divisor) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exponents_ == b.exponents_; }

  // Graded lexicographic: total degree first, then exponents left to right.
  friend bool grlex_less(const Monomial& a, const Monomial& b);

 private:
  std::vector<std::uint32_t> exponents_;
  std::uint32_t degree_ = 0;
};

// Exact multivariate polynomial with rational coefficients. Terms are kept
// sorted by descending graded-lex order with no zero coefficients, so two
// Scalars are equal iff their term lists are identical.
class Scalar {
 public:
  struct Term {
    Monomial monomial;
    Rational coeff;
    friend bool operator==(const Term& a, const Term& b) {
      return a.monomial == b.monomial && a.coeff == b.coeff;
    }
  };

  // Zero over the empty parameter list.
  Scalar() = default;
  explicit Scalar(ParamList params) : params_(std::move(params)) {}
  Scalar(ParamList params, const Rational& constant);

  static Scalar zero(const ParamList& params) { return Scalar(params); }
  static Scalar constant(const ParamList& params, const Rational& value) { return Scalar(params, value); }
  // The polynomial consisting of the single named parameter.
  static Scalar variable(const ParamList& params, std::string_view name);
  static Scalar from_terms(ParamList params, std::vector<Term> terms);

  const ParamList& params() const { return params_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  // Value of a constant Scalar; throws if any parameter occurs.
  Rational constant_value() const;
  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator*=(const Rational& factor);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator*(Scalar a, const Rational& b) { return a *= b; }
  friend Scalar operator*(const Rational& a, Scalar b) { return b *= a; }

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  void check_compatible(const Scalar& other) const;

  ParamList params_;
  std::vector<Term> terms_;
};

Scalar add(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);

// Full substitution; every parameter with a nonzero exponent must be bound.
Rational evaluate(const Scalar& value, const Assignment& assignment);

// Partial substitution: bound parameters are replaced, the rest stay
// symbolic. The parameter list is unchanged.
Scalar substitute(const Scalar& value, const Assignment& assignment);

// Exact quotient a / b when b divides a in Q[params], otherwise nullopt.
// Throws DimensionError-free; b must be nonzero.
std::optional<Scalar> exact_divide(const Scalar& a, const Scalar& b);

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := int ['/' posint] | name ['^' int] | '(' expr ')' ['^' int]
// Whitespace is ignored.
Scalar parse_scalar(std::string_view text, const ParamList& params);

// Canonical printed form, e.g. "-8*lambda^2 + 8*mu^2", "3/2*mu^2 - 1/3".
std::string to_string(const Scalar& value);
std::ostream& operator<<(std::ostream& os, const Scalar& value);

}  // namespace nordgeom
