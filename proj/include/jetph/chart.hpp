#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetph/expression.hpp"

namespace jetph {

// A bundle chart: named independent variables (time first when present, by
// convention named "t") and named dependent fields. Independent names are
// single letters so jet coordinates print unambiguously ("w_tXY").
struct Chart {
  std::vector<std::string> indep;
  std::vector<std::string> dep;

  bool has_time() const { return !indep.empty() && indep.front() == "t"; }
  std::vector<std::string> spatial() const {
    std::vector<std::string> out;
    for (const auto& n : indep)
      if (n != "t") out.push_back(n);
    return out;
  }
  bool is_indep(const std::string& n) const {
    for (const auto& m : indep)
      if (m == n) return true;
    return false;
  }
  bool is_dep(const std::string& n) const {
    for (const auto& m : dep)
      if (m == n) return true;
    return false;
  }
  int dep_index(const std::string& n) const {
    for (size_t i = 0; i < dep.size(); ++i)
      if (dep[i] == n) return (int)i;
    return -1;
  }

  void validate() const;
};

// A density over a chart: polynomial in jets of bounded order plus opaque
// parameters. The variational machinery takes first-order densities.
struct Density {
  Chart chart;
  Expression expr;

  void validate(int max_jet_order = 1) const;
};

// Replace each jet coordinate of the mapped fields by the corresponding
// coordinate derivative of a section polynomial, in which the independent
// variables appear as parameter symbols. Realizes evaluation along the jet
// prolongation of polynomial sections.
Expression substitute_fields(const Expression& e, const Chart& chart,
                             const std::map<std::string, Expression>& sections);

}  // namespace jetph
