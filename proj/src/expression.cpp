#include "jetph/expression.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace jetph {

namespace {

// Multiply a sorted factor list by sym^exp in place.
void mul_factor(std::vector<std::pair<Symbol, int>>& factors, const Symbol& sym, int exp) {
  if (exp == 0) return;
  auto it = std::lower_bound(
      factors.begin(), factors.end(), sym,
      [](const std::pair<Symbol, int>& f, const Symbol& s) { return f.first < s; });
  if (it != factors.end() && it->first == sym) {
    it->second += exp;
    if (it->second == 0) factors.erase(it);
  } else {
    factors.insert(it, {sym, exp});
  }
}

void check_polynomial(const Monomial& m) {
  for (const auto& [s, e] : m.factors)
    if (s.is_jet() && e < 0)
      fail(ErrorKind::UnsupportedExpression,
           "negative power of jet coordinate " + s.str());
}

}  // namespace

Rational Expression::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].first.empty()) return terms_[0].second;
  fail(ErrorKind::Internal, "constant_value on non-constant expression");
}

Expression Expression::from_term_map(std::map<Monomial, Rational>&& m) {
  Expression e;
  e.terms_.reserve(m.size());
  for (auto& [mono, coeff] : m) {
    if (coeff.is_zero()) continue;
    check_polynomial(mono);
    e.terms_.push_back({mono, coeff});
  }
  return e;
}

Expression operator+(const Expression& a, const Expression& b) {
  Expression out;
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  while (ia != a.terms_.end() || ib != b.terms_.end()) {
    if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
      out.terms_.push_back(*ia++);
    } else if (ia == a.terms_.end() || ib->first < ia->first) {
      out.terms_.push_back(*ib++);
    } else {
      Rational c = ia->second + ib->second;
      if (!c.is_zero()) out.terms_.push_back({ia->first, c});
      ++ia;
      ++ib;
    }
  }
  return out;
}

Expression Expression::operator-() const {
  Expression out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

Expression operator*(const Expression& a, const Expression& b) {
  std::map<Monomial, Rational> acc;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (const auto& [s, e] : mb.factors) mul_factor(m.factors, s, e);
      Rational c = ca * cb;
      auto [it, inserted] = acc.try_emplace(std::move(m), c);
      if (!inserted) it->second += c;
    }
  }
  return Expression::from_term_map(std::move(acc));
}

Expression Expression::pow(int e) const {
  if (e == 0) return Expression(1);
  if (e < 0) {
    if (terms_.size() != 1)
      fail(ErrorKind::UnsupportedExpression,
           "negative power of a multi-term expression");
    const auto& [mono, coeff] = terms_[0];
    for (const auto& [s, ex] : mono.factors)
      if (s.is_jet())
        fail(ErrorKind::UnsupportedExpression,
             "negative power of jet coordinate " + s.str());
    Expression inv;
    Monomial m;
    for (const auto& [s, ex] : mono.factors) m.factors.push_back({s, -ex});
    inv.terms_.push_back({std::move(m), coeff.inverse()});
    return inv.pow(-e);
  }
  Expression acc(1), base = *this;
  int k = e;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

Expression Expression::divided_by(const Expression& divisor) const {
  return *this * divisor.pow(-1);
}

Expression Expression::partial(const Symbol& v) const {
  std::map<Monomial, Rational> acc;
  for (const auto& [mono, coeff] : terms_) {
    for (const auto& [s, e] : mono.factors) {
      if (!(s == v)) continue;
      Monomial m = mono;
      mul_factor(m.factors, s, -1);
      Rational c = coeff * Rational(e);
      auto [it, inserted] = acc.try_emplace(std::move(m), c);
      if (!inserted) it->second += c;
      break;
    }
  }
  return from_term_map(std::move(acc));
}

Expression Expression::total_derivative(const std::string& dir) const {
  std::map<Monomial, Rational> acc;
  const Symbol explicit_param = Symbol::parameter(dir);
  for (const auto& [mono, coeff] : terms_) {
    for (const auto& [s, e] : mono.factors) {
      Monomial m = mono;
      Rational c = coeff * Rational(e);
      mul_factor(m.factors, s, -1);
      if (s.is_jet()) {
        mul_factor(m.factors, s.raised(dir), 1);
      } else if (!(s == explicit_param)) {
        continue;  // parameters other than the direction are constants
      }
      auto [it, inserted] = acc.try_emplace(std::move(m), c);
      if (!inserted) it->second += c;
    }
  }
  return from_term_map(std::move(acc));
}

Expression Expression::substitute(const std::map<Symbol, Expression>& bindings) const {
  Expression out;
  for (const auto& [mono, coeff] : terms_) {
    Expression term(coeff);
    Monomial untouched;
    for (const auto& [s, e] : mono.factors) {
      auto it = bindings.find(s);
      if (it == bindings.end())
        untouched.factors.push_back({s, e});
      else
        term = term * it->second.pow(e);
    }
    if (!untouched.factors.empty()) {
      Expression rest;
      rest.terms_.push_back({std::move(untouched), Rational(1)});
      term = term * rest;
    }
    out = out + term;
  }
  return out;
}

double Expression::evaluate(const std::map<Symbol, double>& point) const {
  double sum = 0;
  for (const auto& [mono, coeff] : terms_) {
    double prod = coeff.to_double();
    for (const auto& [s, e] : mono.factors) {
      auto it = point.find(s);
      if (it == point.end())
        fail(ErrorKind::UnknownVariable, "no value bound for " + s.str());
      prod *= std::pow(it->second, e);
    }
    sum += prod;
  }
  return sum;
}

Rational Expression::evaluate_exact(const std::map<Symbol, Rational>& point) const {
  Rational sum(0);
  for (const auto& [mono, coeff] : terms_) {
    Rational prod = coeff;
    for (const auto& [s, e] : mono.factors) {
      auto it = point.find(s);
      if (it == point.end())
        fail(ErrorKind::UnknownVariable, "no value bound for " + s.str());
      prod *= it->second.pow(e);
    }
    sum += prod;
  }
  return sum;
}

std::vector<Symbol> Expression::symbols() const {
  std::set<Symbol> seen;
  for (const auto& [mono, coeff] : terms_)
    for (const auto& [s, e] : mono.factors) seen.insert(s);
  return {seen.begin(), seen.end()};
}

bool Expression::depends_on(const Symbol& v) const {
  for (const auto& [mono, coeff] : terms_)
    for (const auto& [s, e] : mono.factors)
      if (s == v) return true;
  return false;
}

int Expression::max_jet_order() const {
  int order = -1;
  for (const auto& [mono, coeff] : terms_)
    for (const auto& [s, e] : mono.factors)
      if (s.is_jet()) order = std::max(order, s.order());
  return order;
}

std::string Expression::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    Rational c = coeff;
    if (first) {
      if (c.is_negative()) {
        out += "-";
        c = -c;
      }
      first = false;
    } else {
      out += c.is_negative() ? " - " : " + ";
      if (c.is_negative()) c = -c;
    }
    std::string body;
    for (const auto& [s, e] : mono.factors) {
      if (!body.empty()) body += "*";
      body += s.str();
      if (e != 1) body += "^" + std::to_string(e);
    }
    if (body.empty()) {
      out += c.str();
    } else if (c.is_one()) {
      out += body;
    } else {
      out += c.str() + "*" + body;
    }
  }
  return out;
}

Expression normalize(const Expression& e) {
  Expression out;
  for (const auto& [mono, coeff] : e.terms()) {
    Expression term(coeff);
    for (const auto& [s, ex] : mono.factors)
      term = term * Expression::symbol(s).pow(ex);
    out = out + term;
  }
  return out;
}

namespace {

// Random small positive rationals keep exact evaluation inside 64 bits for
// the expression sizes this library produces.
Rational random_point_value(std::mt19937_64& rng) {
  long long num = 1 + (long long)(rng() % 19);
  long long den = 1 + (long long)(rng() % 7);
  return Rational(num, den);
}

}  // namespace

bool equivalent(const Expression& a, const Expression& b) {
  const bool symbolic_zero = (a - b).is_zero();

  std::set<Symbol> syms;
  for (const auto& s : a.symbols()) syms.insert(s);
  for (const auto& s : b.symbols()) syms.insert(s);

  std::mt19937_64 rng(0x6a5c3d41u);  // fixed oracle seed
  bool oracle_equal = true;
  for (int trial = 0; trial < 8 && oracle_equal; ++trial) {
    std::map<Symbol, Rational> point;
    for (const auto& s : syms) point[s] = random_point_value(rng);
    try {
      if (!(a.evaluate_exact(point) == b.evaluate_exact(point))) oracle_equal = false;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Overflow) throw;
      // Exact arithmetic left 64 bits; fall back to floating point for this point.
      std::map<Symbol, double> dp;
      for (const auto& [s, r] : point) dp[s] = r.to_double();
      const double va = a.evaluate(dp), vb = b.evaluate(dp);
      if (std::abs(va - vb) > 1e-7 * (1.0 + std::abs(va) + std::abs(vb)))
        oracle_equal = false;
    }
  }

  if (symbolic_zero != oracle_equal)
    fail(ErrorKind::Internal,
         "equivalence oracle disagrees with the symbolic answer for: " + (a - b).str());
  return symbolic_zero;
}

}  // namespace jetph
