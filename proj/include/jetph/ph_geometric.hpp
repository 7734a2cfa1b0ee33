#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jetph/rational.hpp"
#include "jetph/variational.hpp"

namespace jetph {

// Temporal momenta of a Lagrangian density: per configuration field the
// definition p = (partial of L with respect to the velocity jet) and the
// inverse expressing the velocity through momenta and configurations.
struct MomentumMap {
  Chart lagrangian_chart;
  std::vector<std::string> configs;
  std::map<std::string, Expression> definition;  // config -> momentum as a jet expression
  std::map<std::string, Expression> velocity;    // config -> velocity in (configs, momenta)

  static std::string momentum_name(const std::string& config) { return "p_" + config; }
};

// First-order Hamiltonian field equations with a constant skew matrix:
// state rate = J applied to the variational gradient of H. The state lists
// configurations then momenta; H lives on the spatial chart and carries
// spatial jets of configurations only.
struct GeometricPH {
  Chart chart;  // spatial chart, fields = configurations then momenta
  std::vector<std::string> configs;
  std::vector<std::string> momenta;
  std::vector<std::vector<Rational>> J;
  Density H;
  std::map<std::string, Expression> rhs;  // state field -> its time rate
};

// Legendre transform of a first-order density that is quadratic and
// nondegenerate in the velocities (diagonal velocity Hessian with nonzero
// jet-free monomial entries). Produces H = sum(p * velocity) - L with the
// velocities eliminated.
std::pair<MomentumMap, GeometricPH> legendre_transform(const Density& L);

// Assembles the canonical block structure J = [[0, I], [-I, 0]] and the
// equation right-hand sides. Over momenta the variational derivative
// degenerates to a plain partial since H carries no momentum jets.
GeometricPH build_geometric_ph(const MomentumMap& mm, const Density& H);

// Boundary power integrand per spatial direction: the sum over state fields
// of (rate substituted from the equations) times the jet partial of H.
// Facet orientation is outward-normal as in BoundaryForm.
struct PowerBalanceForm {
  Chart chart;
  std::map<std::string, Expression> facet_integrand;  // by spatial direction
};

PowerBalanceForm power_balance_form(const GeometricPH& ph);

// Eliminates momenta from the momentum equations by substituting their
// definitions and moving the time derivative of the definition across:
// the result matches the Euler-Lagrange residuals field by field.
ELSystem eliminate_momenta(const GeometricPH& ph, const MomentumMap& mm);

}  // namespace jetph
