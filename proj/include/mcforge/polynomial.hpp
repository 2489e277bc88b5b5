#pragma once

// Real polynomials in x1..xn and the small expression grammar used for inline
// fixture coefficients:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := number | 'x' index | '(' expr ')'

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mcforge/linalg.hpp"

namespace mcforge::expr {

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ConfigError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int variables = 0) : vars_(variables) {}
  static Polynomial constant(int variables, double c);
  static Polynomial variable(int variables, int index);  // zero-based index

  int variables() const { return vars_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_constant() const;
  int degree() const;

  double operator()(const Vector& x) const;
  Polynomial derivative(int index) const;
  Vector gradient(const Vector& x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial pow(int exponent) const;

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, double c);

  int vars_;
  std::map<Exponents, double> terms_;
};

// Parses `text` as a polynomial in x1..x{variables}. Throws ParseError naming
// the offending position.
Polynomial parse(std::string_view text, int variables);

}  // namespace mcforge::expr
