#include "mcforge/polynomial.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace mcforge::expr {

Polynomial Polynomial::constant(int variables, double c) {
  Polynomial p(variables);
  p.add_term(Exponents(variables, 0), c);
  return p;
}

Polynomial Polynomial::variable(int variables, int index) {
  if (index < 0 || index >= variables) throw DimensionError("Polynomial::variable: index out of range");
  Polynomial p(variables);
  Exponents e(variables, 0);
  e[index] = 1;
  p.add_term(e, 1.0);
  return p;
}

void Polynomial::add_term(const Exponents& e, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const { return degree() <= 0; }

int Polynomial::degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

double Polynomial::operator()(const Vector& x) const {
  require_size(x, vars_, "Polynomial");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int i = 0; i < vars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    acc += m;
  }
  return acc;
}

Polynomial Polynomial::derivative(int index) const {
  if (index < 0 || index >= vars_) throw DimensionError("Polynomial::derivative: index out of range");
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents d = e;
    d[index] -= 1;
    out.add_term(d, c * e[index]);
  }
  return out;
}

Vector Polynomial::gradient(const Vector& x) const {
  Vector g(vars_);
  for (int i = 0; i < vars_; ++i) g[i] = derivative(i)(x);
  return g;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) out.add_term(e, -c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out(vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(vars_);
      for (int i = 0; i < vars_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  return out;
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw DimensionError("Polynomial::pow: negative exponent");
  Polynomial out = constant(vars_, 1.0);
  for (int i = 0; i < exponent; ++i) out = out * *this;
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const double a = std::abs(c);
    bool has_var = false;
    for (int k : e) has_var = has_var || k > 0;
    if (!has_var || a != 1.0) os << a;
    bool need_star = !has_var || a != 1.0;
    for (int i = 0; i < vars_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int vars) : text_(text), vars_(vars) {}

  Polynomial parse_all() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected non-negative integer exponent", start);
    int exponent = 0;
    std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
    if (exponent > 64) throw ParseError("exponent too large", start);
    return base.pow(exponent);
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (c == 'x') {
      const std::size_t start = pos_++;
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (digits == pos_) throw ParseError("expected variable index after 'x'", start);
      int index = 0;
      std::from_chars(text_.data() + digits, text_.data() + pos_, index);
      if (index < 1 || index > vars_)
        throw ParseError("variable x" + std::to_string(index) + " out of range 1.." + std::to_string(vars_), start);
      return Polynomial::variable(vars_, index - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  Polynomial number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    // exponent part: 1e-3, 2.5E+4
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(literal, &used);
    } catch (const std::exception&) {
      throw ParseError("malformed number '" + literal + "'", start);
    }
    if (used != literal.size()) throw ParseError("malformed number '" + literal + "'", start);
    return Polynomial::constant(vars_, value);
  }

  std::string_view text_;
  int vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(std::string_view text, int variables) {
  if (variables < 0) throw DimensionError("parse: negative variable count");
  return Parser(text, variables).parse_all();
}

}  // namespace mcforge::expr
