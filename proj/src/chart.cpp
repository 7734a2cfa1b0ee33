#include "jetph/chart.hpp"

#include <set>

namespace jetph {

void Chart::validate() const {
  std::set<std::string> seen;
  for (const auto& n : indep) {
    if (n.size() != 1)
      fail(ErrorKind::Validation, "independent variable '" + n + "' must be a single letter");
    if (!seen.insert(n).second)
      fail(ErrorKind::Validation, "duplicate coordinate name " + n);
  }
  for (size_t i = 1; i < indep.size(); ++i)
    if (indep[i] == "t")
      fail(ErrorKind::Validation, "time coordinate t must come first");
  for (const auto& n : dep) {
    if (n.empty()) fail(ErrorKind::Validation, "empty dependent name");
    if (!seen.insert(n).second)
      fail(ErrorKind::Validation, "duplicate coordinate name " + n);
  }
}

void Density::validate(int max_jet_order) const {
  chart.validate();
  for (const auto& s : expr.symbols()) {
    if (s.is_jet()) {
      if (!chart.is_dep(s.field))
        fail(ErrorKind::UnknownVariable, "jet of undeclared field " + s.field);
      for (const auto& d : s.mindex)
        if (!chart.is_indep(d))
          fail(ErrorKind::UnknownVariable, "derivative in undeclared direction " + d);
      if (s.order() > max_jet_order)
        fail(ErrorKind::OrderOverflow, "density contains " + s.str() +
                                           " beyond jet order " + std::to_string(max_jet_order));
    } else {
      // parameters named after independent variables express explicit
      // coordinate dependence and are allowed; a dependent name would be
      // ambiguous with the order-0 jet
      if (chart.is_dep(s.field))
        fail(ErrorKind::Validation,
             "parameter name " + s.field + " collides with a field name");
    }
  }
}

Expression substitute_fields(const Expression& e, const Chart& chart,
                             const std::map<std::string, Expression>& sections) {
  std::map<Symbol, Expression> bindings;
  for (const auto& s : e.symbols()) {
    if (!s.is_jet()) continue;
    auto it = sections.find(s.field);
    if (it == sections.end()) continue;
    Expression value = it->second;
    for (const auto& dir : s.mindex) {
      if (!chart.is_indep(dir))
        fail(ErrorKind::UnknownVariable, "derivative in undeclared direction " + dir);
      value = value.partial(Symbol::parameter(dir));
    }
    bindings.emplace(s, std::move(value));
  }
  return e.substitute(bindings);
}

}  // namespace jetph
