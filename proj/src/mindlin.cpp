#include "jetph/mindlin.hpp"

#include <cmath>

#include "jetph/error.hpp"
#include "jetph/parser.hpp"

namespace jetph {

void PlateParams::validate() const {
  if (!(rho > 0.0)) fail(ErrorKind::Config, "plate density must be positive");
  if (!(h > 0.0)) fail(ErrorKind::Config, "plate thickness must be positive");
  if (!(G > 0.0)) fail(ErrorKind::Config, "plate stiffness must be positive");
  if (!(D > 0.0)) fail(ErrorKind::Config, "plate module must be positive");
  if (!(k > 0.0)) fail(ErrorKind::Config, "shear correction must be positive");
  if (!(nu >= 0.0 && nu < 0.5)) fail(ErrorKind::Config, "Poisson ratio must lie in [0, 1/2)");
  if (!(lx > 0.0 && ly > 0.0)) fail(ErrorKind::Config, "plate extents must be positive");
}

std::map<std::string, double> PlateParams::symbol_values() const {
  return {{"rho", rho}, {"h", h}, {"k", k}, {"G", G}, {"D", D}, {"nu", nu}};
}

PlateParams plate_params_from_youngs(double E, double rho, double h, double nu,
                                     double lx, double ly) {
  PlateParams p;
  p.rho = rho;
  p.h = h;
  p.nu = nu;
  p.G = E / (2.0 * (1.0 + nu));
  p.D = E * h * h * h / (12.0 * (1.0 - nu * nu));
  p.lx = lx;
  p.ly = ly;
  p.validate();
  return p;
}

Chart plate_chart() {
  Chart c;
  c.indep = {"t", "X", "Y"};
  c.dep = {"w", "psi", "phi"};
  c.validate();
  return c;
}

Density plate_lagrangian() {
  Density d;
  d.chart = plate_chart();
  // kinetic energy of deflection and rotation minus shear and bending energy
  d.expr = parse_expression(
      "rho/2*(h^3/12*(psi_t^2 + phi_t^2) + h*w_t^2)"
      " - (1/2*k*G*h*((w_X - psi)^2 + (w_Y - phi)^2)"
      "    + 1/2*D*(1-nu)/2*(psi_Y + phi_X)^2"
      "    + 1/2*(D*(psi_X^2 + nu*phi_Y*psi_X) + D*(phi_Y^2 + nu*phi_Y*psi_X)))",
      d.chart);
  d.validate(1);
  return d;
}

Density plate_lagrangian(const PlateParams& p) {
  p.validate();
  return plate_lagrangian();
}

std::map<std::string, Expression> plate_stress_resultants() {
  Chart c = plate_chart();
  return {
      {"Mx", parse_expression("D*(psi_X + nu*phi_Y)", c)},
      {"My", parse_expression("D*(phi_Y + nu*psi_X)", c)},
      {"Mxy", parse_expression("D*(1-nu)/2*(psi_Y + phi_X)", c)},
      {"Qx", parse_expression("k*G*h*(w_X - psi)", c)},
      {"Qy", parse_expression("k*G*h*(w_Y - phi)", c)},
  };
}

std::vector<StrainDecl> plate_strains() {
  Chart c = plate_chart();
  return {
      {"Gxz", parse_expression("w_X - psi", c)},
      {"Gyz", parse_expression("w_Y - phi", c)},
      {"Gx", parse_expression("-psi_X", c)},
      {"Gy", parse_expression("-phi_Y", c)},
      {"Gxy", parse_expression("-(psi_Y + phi_X)", c)},
  };
}

std::vector<std::string> plate_chi_order() {
  return {"p_w", "Gxz", "Gyz", "p_psi", "p_phi", "Gx", "Gy", "Gxy"};
}

Chart plate_strain_chart() {
  Chart c;
  c.indep = {"X", "Y"};
  c.dep = {"Gxz", "Gyz", "Gx", "Gy", "Gxy"};
  c.validate();
  return c;
}

Expression plate_strain_potential() {
  return parse_expression(
      "1/2*k*G*h*(Gxz^2 + Gyz^2) + 1/2*D*(Gx^2 + 2*nu*Gx*Gy + Gy^2)"
      " + 1/4*D*(1-nu)*Gxy^2",
      plate_strain_chart());
}

StokesDirac plate_stokes_dirac() {
  return build_stokes_dirac(plate_lagrangian(), plate_chi_order(), plate_strains(),
                            plate_strain_potential());
}

}  // namespace jetph
