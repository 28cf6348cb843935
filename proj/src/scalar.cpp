#include "nordgeom/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>

#include "nordgeom/errors.hpp"

namespace nordgeom {

namespace {

std::atomic<int> g_max_degree{16};

void check_degree(std::uint32_t degree) {
  if (static_cast<long>(degree) > g_max_degree.load()) {
    throw DegreeOverflowError("monomial degree " + std::to_string(degree) + " exceeds cap " +
                              std::to_string(g_max_degree.load()));
  }
}

bool grlex_greater(const Scalar::Term& a, const Scalar::Term& b) { return grlex_less(b.monomial, a.monomial); }

}  // namespace

int max_degree() { return g_max_degree.load(); }

void set_max_degree(int cap) {
  if (cap < 0) throw InputError("degree cap must be non-negative");
  g_max_degree.store(cap);
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty rational", 0);
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') ++pos;
  const std::size_t num_start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == num_start) throw ParseError("expected digits in rational '" + s + "'", pos);
  if (pos < s.size()) {
    if (s[pos] != '/') throw ParseError("unexpected character in rational '" + s + "'", pos);
    const std::size_t den_start = ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == den_start || pos != s.size()) throw ParseError("bad denominator in rational '" + s + "'", pos);
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational value;
  if (value.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'", 0);
  if (value.get_den() == 0) throw ParseError("zero denominator in rational '" + s + "'", 0);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

ParamList::ParamList(std::vector<std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw InputError("empty parameter name");
    for (std::size_t j = 0; j < i; ++j) {
      if (names[i] == names[j]) throw InputError("duplicate parameter name '" + names[i] + "'");
    }
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> ParamList::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  return std::nullopt;
}

Monomial::Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {
  for (auto e : exponents_) degree_ += e;
  check_degree(degree_);
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<std::uint32_t> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  std::vector<std::uint32_t> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= divisor.exponents_[i];
  return Monomial(std::move(e));
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
  return a.exponents_ < b.exponents_;
}

namespace {

// mpq_class(num, den) does not reduce; arithmetic on unreduced values is undefined.
Rational canonical(Rational r) {
  r.canonicalize();
  return r;
}

}  // namespace

Scalar::Scalar(ParamList params, const Rational& constant) : params_(std::move(params)) {
  if (constant != 0) terms_.push_back({Monomial::one(params_.size()), canonical(constant)});
}

Scalar Scalar::variable(const ParamList& params, std::string_view name) {
  auto index = params.index_of(name);
  if (!index) throw InputError("unknown parameter '" + std::string(name) + "'");
  std::vector<std::uint32_t> e(params.size(), 0);
  e[*index] = 1;
  Scalar s(params);
  s.terms_.push_back({Monomial(std::move(e)), Rational(1)});
  return s;
}

Scalar Scalar::from_terms(ParamList params, std::vector<Term> terms) {
  std::map<std::vector<std::uint32_t>, Term> merged;
  for (auto& t : terms) {
    t.coeff.canonicalize();
    if (t.monomial.exponents().size() != params.size()) {
      throw ParamMismatchError("monomial length does not match parameter list");
    }
    auto [it, inserted] = merged.try_emplace(t.monomial.exponents(), t);
    if (!inserted) it->second.coeff += t.coeff;
  }
  Scalar s(std::move(params));
  for (auto& [key, t] : merged) {
    if (t.coeff != 0) s.terms_.push_back(std::move(t));
  }
  std::sort(s.terms_.begin(), s.terms_.end(), grlex_greater);
  return s;
}

Rational Scalar::constant_value() const {
  if (!is_constant()) throw Error("Scalar '" + to_string(*this) + "' is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

void Scalar::check_compatible(const Scalar& other) const {
  if (!(params_ == other.params_)) throw ParamMismatchError("Scalars use different parameter lists");
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_compatible(other);
  if (other.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    if (a->monomial == b->monomial) {
      Rational c = a->coeff + b->coeff;
      if (c != 0) out.push_back({a->monomial, std::move(c)});
      ++a;
      ++b;
    } else if (grlex_less(b->monomial, a->monomial)) {
      out.push_back(std::move(*a++));
    } else {
      out.push_back(*b++);
    }
  }
  for (; a != terms_.end(); ++a) out.push_back(std::move(*a));
  for (; b != other.terms_.end(); ++b) out.push_back(*b);
  terms_ = std::move(out);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  *this = *this * other;
  return *this;
}

Scalar& Scalar::operator*=(const Rational& factor) {
  const Rational f = canonical(factor);
  if (f == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= f;
  }
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return Scalar(a.params_);
  std::vector<Scalar::Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) products.push_back({x.monomial * y.monomial, x.coeff * y.coeff});
  }
  return Scalar::from_terms(a.params_, std::move(products));
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check_compatible(b);
  return a.terms_ == b.terms_;
}

Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }

namespace {

// Value of each parameter, or nullopt when it stays symbolic.
std::vector<std::optional<Rational>> bind(const ParamList& params, const Assignment& assignment) {
  std::vector<std::optional<Rational>> values(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto it = assignment.find(params.names()[i]);
    if (it != assignment.end()) values[i] = canonical(it->second);
  }
  return values;
}

Rational power(const Rational& base, std::uint32_t exponent) {
  Rational r(1);
  for (std::uint32_t k = 0; k < exponent; ++k) r *= base;
  return r;
}

}  // namespace

Rational evaluate(const Scalar& value, const Assignment& assignment) {
  auto bound = bind(value.params(), assignment);
  Rational total(0);
  for (const auto& t : value.terms()) {
    Rational term = t.coeff;
    const auto& e = t.monomial.exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!bound[i]) throw UnboundParameterError("no value bound for parameter '" + value.params().names()[i] + "'");
      term *= power(*bound[i], e[i]);
    }
    total += term;
  }
  return total;
}

Scalar substitute(const Scalar& value, const Assignment& assignment) {
  auto bound = bind(value.params(), assignment);
  std::vector<Scalar::Term> terms;
  terms.reserve(value.terms().size());
  for (const auto& t : value.terms()) {
    Rational coeff = t.coeff;
    std::vector<std::uint32_t> e = t.monomial.exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0 && bound[i]) {
        coeff *= power(*bound[i], e[i]);
        e[i] = 0;
      }
    }
    terms.push_back({Monomial(std::move(e)), std::move(coeff)});
  }
  return Scalar::from_terms(value.params(), std::move(terms));
}

std::optional<Scalar> exact_divide(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw Error("division by the zero Scalar");
  if (!(a.params() == b.params())) throw ParamMismatchError("Scalars use different parameter lists");
  const auto& lead = b.terms().front();
  Scalar remainder = a;
  std::vector<Scalar::Term> quotient;
  while (!remainder.is_zero()) {
    const auto& top = remainder.terms().front();
    if (!lead.monomial.divides(top.monomial)) return std::nullopt;
    Scalar::Term q{top.monomial.quotient(lead.monomial), top.coeff / lead.coeff};
    remainder -= Scalar::from_terms(a.params(), {q}) * b;
    quotient.push_back(std::move(q));
  }
  return Scalar::from_terms(a.params(), std::move(quotient));
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParamList& params) : text_(text), params_(params) {}

  Scalar parse() {
    Scalar value = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return value;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint32_t exponent() {
    const std::size_t at = pos_;
    const std::string d = digits();
    if (d.size() > 6) throw DegreeOverflowError("exponent " + d + " at position " + std::to_string(at) + " exceeds cap");
    return static_cast<std::uint32_t>(std::stoul(d));
  }

  Scalar expr() {
    skip_ws();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Scalar value = term();
    if (negate) value = -value;
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  Scalar term() {
    Scalar value = factor();
    while (accept('*')) value *= factor();
    return value;
  }

  Scalar pow(const Scalar& base, std::uint32_t e) {
    Scalar r(params_, Rational(1));
    for (std::uint32_t k = 0; k < e; ++k) r *= base;
    return r;
  }

  Scalar factor() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(digits());
      if (accept('/')) {
        const std::size_t at = pos_;
        Rational den(digits());
        if (den == 0) throw ParseError("zero denominator", at);
        value /= den;
      }
      return Scalar(params_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      auto index = params_.index_of(name);
      if (!index) throw ParseError("unknown parameter '" + name + "'", start);
      std::vector<std::uint32_t> e(params_.size(), 0);
      e[*index] = accept('^') ? exponent() : 1;
      return Scalar::from_terms(params_, {{Monomial(std::move(e)), Rational(1)}});
    }
    if (accept('(')) {
      Scalar inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      if (accept('^')) return pow(inner, exponent());
      return inner;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  const ParamList& params_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text, const ParamList& params) { return Parser(text, params).parse(); }

std::string to_string(const Scalar& value) {
  if (value.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : value.terms()) {
    const bool negative = t.coeff < 0;
    const Rational magnitude = abs(t.coeff);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (t.monomial.is_one() || magnitude != 1) {
      out << to_string(magnitude);
      need_star = true;
    }
    const auto& e = t.monomial.exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) out << '*';
      out << value.params().names()[i];
      if (e[i] > 1) out << '^' << e[i];
      need_star = true;
    }
  }
  return out.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& value) { return os << to_string(value); }

}  // namespace nordgeom
