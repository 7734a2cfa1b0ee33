#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetph/ph_dirac.hpp"

namespace jetph {

// Material and geometry data for the thick-plate model. The stiffness G and
// the plate module D are independent inputs. Defaults are steel-like on a
// unit square with a 1 cm thickness.
struct PlateParams {
  double rho = 7850.0;                      // density [kg/m^3]
  double h = 0.01;                          // thickness [m]
  double G = 210.0e9 / 2.6;                 // plate stiffness [Pa]
  double D = 210.0e9 * 1.0e-6 / 10.92;      // plate module [Pa m^3]
  double nu = 0.3;                          // Poisson ratio
  double k = 0.8224670334241132;            // shear correction, pi^2/12
  double lx = 1.0;                          // plate extent in X [m]
  double ly = 1.0;                          // plate extent in Y [m]

  void validate() const;

  // numeric values for the symbolic parameters of the plate Lagrangian
  std::map<std::string, double> symbol_values() const;
};

// Classical isotropic convention G = E/(2(1+nu)), D = E h^3/(12(1-nu^2)).
// A convenience outside the plate model proper.
PlateParams plate_params_from_youngs(double E, double rho, double h, double nu,
                                     double lx = 1.0, double ly = 1.0);

// chart (t, X, Y) -> (w, psi, phi): deflection and the two section rotations
Chart plate_chart();

// first-order Lagrangian density of the plate: kinetic minus potential,
// with shear correction k, plate stiffness G, plate module D symbolic
Density plate_lagrangian();
// same density after validating a parameter set
Density plate_lagrangian(const PlateParams& p);

// the five stress resultants: bending moments Mx, My, twisting moment Mxy,
// shear forces Qx, Qy; each equals minus the matching first-jet partial of
// the Lagrangian density
std::map<std::string, Expression> plate_stress_resultants();

// the five strain variables: transverse shear Gxz, Gyz and bending Gx, Gy,
// Gxy, each declared through its expression in configuration jets
std::vector<StrainDecl> plate_strains();

// energy state ordering for the plate: deflection momentum, shear strains,
// rotation momenta, bending strains
std::vector<std::string> plate_chi_order();

// chart for parsing strain-level expressions
Chart plate_strain_chart();

// potential energy as an explicit quadratic form in the strains
Expression plate_strain_potential();

// the assembled energy-variable representation of the plate
StokesDirac plate_stokes_dirac();

}  // namespace jetph
