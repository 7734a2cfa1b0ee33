#include "jetph/variational.hpp"

#include "jetph/error.hpp"

namespace jetph {

Expression variational_derivative(const Density& d, const std::string& dep) {
  if (!d.chart.is_dep(dep))
    fail(ErrorKind::UnknownVariable, "variational derivative with respect to undeclared field '" + dep + "'");
  d.validate(1);
  Expression r = d.expr.partial(Symbol::jet(dep, {}));
  for (const auto& dir : d.chart.indep)
    r = r - d.expr.partial(Symbol::jet(dep, {dir})).total_derivative(dir);
  return normalize(r);
}

const Expression& ELSystem::residual(const std::string& dep) const {
  auto it = residuals.find(dep);
  if (it == residuals.end())
    fail(ErrorKind::UnknownVariable, "no residual for field '" + dep + "'");
  return it->second;
}

ELSystem euler_lagrange(const Density& d) {
  ELSystem sys;
  sys.chart = d.chart;
  for (const auto& dep : d.chart.dep)
    sys.residuals.emplace(dep, variational_derivative(d, dep));
  return sys;
}

Expression BoundaryForm::coefficient(const std::string& direction, const std::string& dep) const {
  auto dit = coefficients.find(direction);
  if (dit == coefficients.end()) return Expression{};
  auto it = dit->second.find(dep);
  if (it == dit->second.end()) return Expression{};
  return it->second;
}

BoundaryForm boundary_form(const Density& d) {
  d.validate(1);
  BoundaryForm bf;
  bf.chart = d.chart;
  for (const auto& dir : d.chart.spatial()) {
    for (const auto& dep : d.chart.dep) {
      Expression c = normalize(d.expr.partial(Symbol::jet(dep, {dir})));
      if (!c.is_zero()) bf.coefficients[dir].emplace(dep, std::move(c));
    }
  }
  return bf;
}

std::string Facet::name() const {
  return direction + (side == FacetSide::Upper ? "1" : "0");
}

std::vector<Facet> spatial_facets(const Chart& chart) {
  std::vector<Facet> out;
  for (const auto& dir : chart.spatial()) {
    out.push_back({dir, FacetSide::Lower});
    out.push_back({dir, FacetSide::Upper});
  }
  return out;
}

Facet parse_facet(const Chart& chart, const std::string& name) {
  for (const auto& f : spatial_facets(chart))
    if (f.name() == name) return f;
  fail(ErrorKind::Config, "unknown facet '" + name + "'");
}

Expression ExternalBoundaryInput::input(const std::string& facet, const std::string& dep) const {
  auto fit = inputs.find(facet);
  if (fit == inputs.end()) return Expression{};
  auto it = fit->second.find(dep);
  if (it == fit->second.end()) return Expression{};
  return it->second;
}

std::map<std::string, std::map<std::string, Expression>> boundary_balance(
    const BoundaryForm& bf, const ExternalBoundaryInput& ext) {
  std::map<std::string, std::map<std::string, Expression>> out;
  for (const auto& f : spatial_facets(bf.chart)) {
    auto& per_dep = out[f.name()];
    for (const auto& dep : bf.chart.dep)
      per_dep.emplace(dep, normalize(bf.coefficient(f.direction, dep) - ext.input(f.name(), dep)));
  }
  return out;
}

bool admissible(const BoundaryForm& bf, const ExternalBoundaryInput& ext,
                const FacetConditions& cond) {
  auto balance = boundary_balance(bf, ext);
  for (const auto& [facet, per_dep] : balance) {
    auto pit = cond.pinned.find(facet);
    for (const auto& [dep, bal] : per_dep) {
      if (pit != cond.pinned.end() && pit->second.count(dep)) continue;
      if (!equivalent(bal, Expression{})) return false;
    }
  }
  return true;
}

}  // namespace jetph
