#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "jetph/error.hpp"

namespace jetph {

// Ordering of independent-variable names inside a derivative multi-index:
// time ("t") first, the rest alphabetical. Purely a display/canonical-form
// convention; it makes mixed partials like w_XY and w_YX one symbol.
inline bool indep_name_less(const std::string& a, const std::string& b) {
  const bool at = (a == "t"), bt = (b == "t");
  if (at != bt) return at;
  return a < b;
}

enum class SymKind { Parameter, Jet };

// Atomic quantity inside an expression: an opaque scalar parameter (rho, h,
// nu, ...) or a jet coordinate, i.e. a dependent field with a derivative
// multi-index over independent-variable names. Identity is by name, so the
// same field means the same symbol across charts.
struct Symbol {
  SymKind kind = SymKind::Parameter;
  std::string field;
  std::vector<std::string> mindex;  // empty for parameters and order-0 jets

  static constexpr int kMaxOrder = 2;

  static Symbol parameter(std::string name) {
    if (name.empty()) fail(ErrorKind::Validation, "empty parameter name");
    Symbol s;
    s.kind = SymKind::Parameter;
    s.field = std::move(name);
    return s;
  }

  static Symbol jet(std::string field, std::vector<std::string> mindex = {}) {
    if (field.empty()) fail(ErrorKind::Validation, "empty field name");
    Symbol s;
    s.kind = SymKind::Jet;
    s.field = std::move(field);
    s.mindex = std::move(mindex);
    std::sort(s.mindex.begin(), s.mindex.end(), indep_name_less);
    if ((int)s.mindex.size() > kMaxOrder)
      fail(ErrorKind::OrderOverflow,
           "jet order " + std::to_string(s.mindex.size()) + " exceeds " +
               std::to_string(kMaxOrder) + " for field " + s.field);
    return s;
  }

  bool is_jet() const { return kind == SymKind::Jet; }
  int order() const { return (int)mindex.size(); }

  // One more derivative in direction `dir`; raises OrderOverflow past the cap.
  Symbol raised(const std::string& dir) const {
    auto m = mindex;
    m.push_back(dir);
    return jet(field, std::move(m));
  }

  std::string str() const {
    if (!is_jet() || mindex.empty()) return field;
    std::string out = field + "_";
    for (const auto& d : mindex) out += d;
    return out;
  }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend std::strong_ordering operator<=>(const Symbol&, const Symbol&) = default;
};

}  // namespace jetph
