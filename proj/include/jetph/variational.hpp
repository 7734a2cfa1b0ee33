#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "jetph/chart.hpp"

namespace jetph {

// Variational derivative of a first-order density with respect to one field:
// the field partial minus the total divergence of the first-jet partials.
// Result has jet order <= 2.
Expression variational_derivative(const Density& d, const std::string& dep);

struct ELSystem {
  Chart chart;
  std::map<std::string, Expression> residuals;  // one entry per field

  const Expression& residual(const std::string& dep) const;
};

ELSystem euler_lagrange(const Density& d);

// Coefficients of the boundary term produced by integrating the variation by
// parts, keyed by spatial direction then field: coefficient(A, y) is the
// partial of the density with respect to the jet y_A. Orientation on a box is
// outward-normal: the upper facet of direction A carries the coefficient with
// sign +1, the lower facet with -1. Facets of the time direction never appear
// since variations vanish at temporal endpoints. Zero coefficients are
// omitted from the map.
struct BoundaryForm {
  Chart chart;
  std::map<std::string, std::map<std::string, Expression>> coefficients;

  // zero when absent
  Expression coefficient(const std::string& direction, const std::string& dep) const;
};

BoundaryForm boundary_form(const Density& d);

enum class FacetSide { Lower, Upper };

struct Facet {
  std::string direction;
  FacetSide side = FacetSide::Lower;

  // "X0" for the lower facet of direction X, "X1" for the upper
  std::string name() const;
  int sign() const { return side == FacetSide::Upper ? 1 : -1; }

  bool operator==(const Facet&) const = default;
};

// the four (in 2D) spatial facets of a box chart, lower before upper
std::vector<Facet> spatial_facets(const Chart& chart);

Facet parse_facet(const Chart& chart, const std::string& name);

// Prescribed external boundary inputs, keyed by facet name then field.
// Values are taken in the same convention as BoundaryForm coefficients
// (direction-indexed, not outward-signed); absent entries mean zero.
struct ExternalBoundaryInput {
  std::map<std::string, std::map<std::string, Expression>> inputs;

  Expression input(const std::string& facet, const std::string& dep) const;
};

// Per facet and field: boundary coefficient minus external input. A
// condition set is admissible when on every facet each field is either
// pinned (its variation vanishes) or has zero balance.
std::map<std::string, std::map<std::string, Expression>> boundary_balance(
    const BoundaryForm& bf, const ExternalBoundaryInput& ext);

struct FacetConditions {
  // facet name -> fields whose variation is pinned there
  std::map<std::string, std::set<std::string>> pinned;
};

bool admissible(const BoundaryForm& bf, const ExternalBoundaryInput& ext,
                const FacetConditions& cond);

}  // namespace jetph
