#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "jetph/sim/bc.hpp"
#include "jetph/sim/grid.hpp"
#include "jetph/sim/kernels.hpp"

namespace jetph::sim {

// Displacement form: configurations and their conjugate momenta at nodes.
struct GeoState {
  NodeFields q;  // w, psi, phi
  NodeFields p;  // pw, ppsi, pphi stored in the same slots
  double t = 0.0;
};

// Energy form: momenta plus strain variables, with reconstructed
// configurations integrated alongside for comparison.
struct DiracState {
  NodeFields p;
  StrainFields strain;
  NodeFields recon;
  double t = 0.0;
};

struct InitialCondition {
  enum class Kind { Zero, Gaussian } kind = Kind::Gaussian;
  double amplitude = 1e-3;
  double sigma = 0.1;  // relative to min(lx, ly)

  static InitialCondition zero() { return {Kind::Zero, 0.0, 0.1}; }
  static InitialCondition gaussian(double amplitude = 1e-3, double sigma = 0.1) {
    return {Kind::Gaussian, amplitude, sigma};
  }
};

// Semi-discrete plate on a staggered grid. Both time-stepping forms share
// the same spatial operators, so their right-hand sides agree exactly and
// any difference between runs is the integrator's.
class PlateDiscretization {
 public:
  PlateDiscretization(const PlateParams& params, const Grid& grid, const PlateBC& bc,
                      Backend backend = Backend::OpenMP);

  const Grid& grid() const { return grid_; }
  const Material& material() const { return mat_; }
  const PlateBC& bc() const { return bc_; }
  const Kernels& kernels() const { return k_; }
  const std::vector<uint8_t>& pinned() const { return pinned_; }
  const PlateParams& params() const { return params_; }

  // Spatial operator applications.
  void strain_of(const NodeFields& q, StrainFields& out) const;
  void effort_of(const StrainFields& s, StrainFields& out) const;
  void velocity_of(const NodeFields& p, NodeFields& out) const;
  void force(const NodeFields& q, double t, NodeFields& out) const;
  void momentum_rate(const StrainFields& strain, double t, NodeFields& out) const;

  double energy(const NodeFields& p, const StrainFields& s) const;
  double energy_geometric(const GeoState& st) const;
  double energy_dirac(const DiracState& st) const;
  double boundary_power(const NodeFields& p, double t) const;

  // Largest frequency of the semi-discrete system, from a deterministic
  // power iteration; 2/omega_max is the explicit stability limit.
  double omega_max() const;
  double stable_dt() const { return 2.0 / omega_max(); }
  double default_dt() const;

  GeoState initial_geometric(const InitialCondition& ic) const;
  DiracState initial_dirac(const InitialCondition& ic) const;

  // Largest pointwise mismatch between stored strains and the strains of
  // the reconstructed configurations.
  double compatibility_defect(const DiracState& st) const;
  double field_scale(const DiracState& st) const;

 private:
  PlateParams params_;
  Grid grid_;
  PlateBC bc_;
  Material mat_;
  Kernels k_;
  std::vector<uint8_t> pinned_;
  mutable StrainFields scratch_s_, scratch_e_;
  mutable NodeFields scratch_v_, scratch_f_;
  mutable double omega_max_ = -1.0;
};

// Checks the boundary setup against the symbolic admissibility test: clamped
// facets pin all fields, free and forced facets declare the resultant traces
// as their boundary port input.
void check_admissible(const PlateBC& bc);

// Stoermer-Verlet kick-drift-kick on the displacement form. Refuses a step
// beyond 95% of the stability limit unless force is set.
void leapfrog_step(const PlateDiscretization& d, GeoState& st, double dt, bool force = false);

// Sparse operators of the energy form, columns/rows over stacked momenta
// (w block, psi block, phi block) and stacked strains (gxz, gyz, gx, gy,
// gxy blocks). strain_map has pinned momentum columns zeroed.
Eigen::SparseMatrix<double> assemble_strain_map(const PlateDiscretization& d);
Eigen::SparseMatrix<double> assemble_strain_weight(const PlateDiscretization& d);
Eigen::VectorXd momentum_weight(const PlateDiscretization& d);

// Energy-weighted structure matrix of the semi-discrete energy form, emitted
// so that skewness holds exactly in floating point.
Eigen::SparseMatrix<double> assemble_weighted_structure(const PlateDiscretization& d);

// Implicit midpoint for the energy form with a fixed step. The midpoint
// momenta solve a symmetric positive definite reduced system, factored once.
class DiracMidpoint {
 public:
  DiracMidpoint(const PlateDiscretization& d, double dt);
  double dt() const { return dt_; }
  void step(DiracState& st) const;

 private:
  const PlateDiscretization& d_;
  double dt_;
  Eigen::VectorXd wpc_;
  Eigen::SparseMatrix<double> A_, K_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  mutable NodeFields scratch_f_, scratch_v_;
};

}  // namespace jetph::sim
