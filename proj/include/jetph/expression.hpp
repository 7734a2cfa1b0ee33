#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jetph/rational.hpp"
#include "jetph/symbol.hpp"

namespace jetph {

// One product of symbol powers, factors sorted by symbol. Jet symbols carry
// strictly positive exponents (expressions stay polynomial in the fields);
// parameter symbols may carry negative exponents, so coefficients like
// 1/(rho*h) are representable exactly.
struct Monomial {
  std::vector<std::pair<Symbol, int>> factors;

  bool empty() const { return factors.empty(); }
  int degree_in_jets() const {
    int d = 0;
    for (const auto& [s, e] : factors)
      if (s.is_jet()) d += e;
    return d;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial&, const Monomial&) = default;
};

// Canonical multivariate polynomial: sorted terms with nonzero rational
// coefficients over jet coordinates and parameters. Every operation returns
// the canonical form, so the zero polynomial has exactly one representation
// (no terms) and equality is structural. Immutable value type.
class Expression {
 public:
  Expression() = default;  // zero
  Expression(const Rational& c) {
    if (!c.is_zero()) terms_.push_back({Monomial{}, c});
  }
  Expression(long long c) : Expression(Rational(c)) {}

  static Expression symbol(const Symbol& s) {
    Expression e;
    e.terms_.push_back({Monomial{{{s, 1}}}, Rational(1)});
    return e;
  }
  static Expression parameter(const std::string& name) {
    return symbol(Symbol::parameter(name));
  }
  static Expression jet(const std::string& field, std::vector<std::string> mindex = {}) {
    return symbol(Symbol::jet(field, std::move(mindex)));
  }

  const std::vector<std::pair<Monomial, Rational>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
  }
  Rational constant_value() const;  // requires is_constant()

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  Expression operator-() const;
  Expression& operator+=(const Expression& o) { return *this = *this + o; }
  Expression& operator-=(const Expression& o) { return *this = *this - o; }
  Expression& operator*=(const Expression& o) { return *this = *this * o; }

  // Integer power. Negative exponents require a single-term base whose
  // symbols are all parameters (otherwise the result would leave the
  // polynomial-in-jets fragment) and raise UnsupportedExpression if not.
  Expression pow(int e) const;

  // Exact division by a one-term, parameters-only divisor (or a constant).
  Expression divided_by(const Expression& divisor) const;

  // Formal partial derivative treating each distinct symbol as independent.
  Expression partial(const Symbol& v) const;

  // Total derivative along independent direction `dir`: raises every jet
  // multi-index (chain rule) and differentiates any explicit occurrence of a
  // parameter named `dir`. Raises OrderOverflow past the jet-order cap.
  Expression total_derivative(const std::string& dir) const;

  // Simultaneous substitution of whole symbols by expressions.
  Expression substitute(const std::map<Symbol, Expression>& bindings) const;

  double evaluate(const std::map<Symbol, double>& point) const;
  Rational evaluate_exact(const std::map<Symbol, Rational>& point) const;

  std::vector<Symbol> symbols() const;
  bool depends_on(const Symbol& v) const;
  int max_jet_order() const;

  // Canonical text form; parse_expression(str(), chart) round-trips exactly.
  std::string str() const;

  friend bool operator==(const Expression&, const Expression&) = default;

 private:
  static Expression from_term_map(std::map<Monomial, Rational>&& m);
  std::vector<std::pair<Monomial, Rational>> terms_;
};

inline Expression operator*(const Rational& c, const Expression& e) {
  return Expression(c) * e;
}

// Expressions are canonical by construction; exposed so callers can state the
// normalization contract explicitly. Re-canonicalizes defensively.
Expression normalize(const Expression& e);

// True iff a - b normalizes to zero. Independently cross-checked by
// evaluation at pseudo-random rational points with a fixed seed; a
// disagreement between the two answers raises Internal.
bool equivalent(const Expression& a, const Expression& b);

}  // namespace jetph
