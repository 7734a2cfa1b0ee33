#pragma once

#include <cstdint>
#include <vector>

#include "jetph/mindlin.hpp"
#include "jetph/sim/bc.hpp"
#include "jetph/sim/grid.hpp"

namespace jetph::sim {

// Coefficients the kernels actually touch, precomputed from plate parameters.
struct Material {
  double rho_h = 0.0;   // translational mass density
  double rho_i = 0.0;   // rotational inertia density rho*h^3/12
  double kgh = 0.0;     // shear stiffness k*G*h
  double d = 0.0;       // bending stiffness
  double nu = 0.0;

  Material() = default;
  explicit Material(const PlateParams& p)
      : rho_h(p.rho * p.h), rho_i(p.rho * p.h * p.h * p.h / 12.0), kgh(p.k * p.G * p.h), d(p.D),
        nu(p.nu) {}

  double inv_mass_w() const { return 1.0 / rho_h; }
  double inv_mass_rot() const { return 1.0 / rho_i; }
};

// One scalar field per staggered location family.
struct StrainFields {
  std::vector<double> gxz, gyz;       // x-edges, y-edges
  std::vector<double> gx, gy, gxy;    // centers

  void resize(const Grid& g) {
    gxz.assign(g.xedges(), 0.0);
    gyz.assign(g.yedges(), 0.0);
    gx.assign(g.centers(), 0.0);
    gy.assign(g.centers(), 0.0);
    gxy.assign(g.centers(), 0.0);
  }
};

struct NodeFields {
  std::vector<double> w, psi, phi;

  void resize(const Grid& g) {
    w.assign(g.nodes(), 0.0);
    psi.assign(g.nodes(), 0.0);
    phi.assign(g.nodes(), 0.0);
  }
};

// Backend-selectable kernel table. Both implementations share the per-point
// stencil helpers, differ only in the loop shells, and agree bitwise; the
// parallel energy reduction keeps fixed per-row partials to stay
// deterministic across thread counts.
struct Kernels {
  void (*strains)(const Grid&, const double* w, const double* psi, const double* phi,
                  StrainFields& out);
  void (*strain_efforts)(const Grid&, const Material&, const StrainFields& g, StrainFields& e);
  void (*velocities)(const Grid&, const Material&, const uint8_t* pinned, const double* pw,
                     const double* ppsi, const double* pphi, NodeFields& v);
  void (*momentum_rates)(const Grid&, const Material&, const uint8_t* pinned,
                         const ForcingValues& f, const StrainFields& e, NodeFields& rate);
  double (*energy)(const Grid&, const Material&, const double* pw, const double* ppsi,
                   const double* pphi, const StrainFields& g);
  double (*boundary_power)(const Grid&, const ForcingValues& f, const NodeFields& v);
  void (*axpy)(size_t n, double a, const double* x, double* y);
};

enum class Backend { Serial, OpenMP };

const Kernels& kernels(Backend b);

namespace ref {
void strains(const Grid&, const double* w, const double* psi, const double* phi, StrainFields&);
void strain_efforts(const Grid&, const Material&, const StrainFields&, StrainFields&);
void velocities(const Grid&, const Material&, const uint8_t* pinned, const double* pw,
                const double* ppsi, const double* pphi, NodeFields&);
void momentum_rates(const Grid&, const Material&, const uint8_t* pinned, const ForcingValues&,
                    const StrainFields&, NodeFields&);
double energy(const Grid&, const Material&, const double* pw, const double* ppsi,
              const double* pphi, const StrainFields&);
double boundary_power(const Grid&, const ForcingValues&, const NodeFields&);
void axpy(size_t n, double a, const double* x, double* y);
}  // namespace ref

namespace omp {
void strains(const Grid&, const double* w, const double* psi, const double* phi, StrainFields&);
void strain_efforts(const Grid&, const Material&, const StrainFields&, StrainFields&);
void velocities(const Grid&, const Material&, const uint8_t* pinned, const double* pw,
                const double* ppsi, const double* pphi, NodeFields&);
void momentum_rates(const Grid&, const Material&, const uint8_t* pinned, const ForcingValues&,
                    const StrainFields&, NodeFields&);
double energy(const Grid&, const Material&, const double* pw, const double* ppsi,
              const double* pphi, const StrainFields&);
double boundary_power(const Grid&, const ForcingValues&, const NodeFields&);
void axpy(size_t n, double a, const double* x, double* y);
}  // namespace omp

// Nodes pinned by clamped facets (all three fields); a corner is pinned when
// either adjacent facet clamps.
std::vector<uint8_t> pinned_mask(const Grid& g, const PlateBC& bc);

}  // namespace jetph::sim
