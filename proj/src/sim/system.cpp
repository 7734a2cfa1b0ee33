#include "jetph/sim/system.hpp"

#include <algorithm>
#include <cmath>

#include "jetph/variational.hpp"

namespace jetph::sim {

PlateDiscretization::PlateDiscretization(const PlateParams& params, const Grid& grid,
                                         const PlateBC& bc, Backend backend)
    : params_(params), grid_(grid), bc_(bc), mat_(params),
      k_(jetph::sim::kernels(backend)),
      pinned_(pinned_mask(grid, bc)) {
  params_.validate();
  if (grid_.lx != params.lx || grid_.ly != params.ly)
    fail(ErrorKind::Config, "grid extents disagree with the plate extents");
  scratch_s_.resize(grid_);
  scratch_e_.resize(grid_);
  scratch_v_.resize(grid_);
  scratch_f_.resize(grid_);
}

void PlateDiscretization::strain_of(const NodeFields& q, StrainFields& out) const {
  out.resize(grid_);
  k_.strains(grid_, q.w.data(), q.psi.data(), q.phi.data(), out);
}

void PlateDiscretization::effort_of(const StrainFields& s, StrainFields& out) const {
  out.resize(grid_);
  k_.strain_efforts(grid_, mat_, s, out);
}

void PlateDiscretization::velocity_of(const NodeFields& p, NodeFields& out) const {
  out.resize(grid_);
  k_.velocities(grid_, mat_, pinned_.data(), p.w.data(), p.psi.data(), p.phi.data(), out);
}

void PlateDiscretization::momentum_rate(const StrainFields& strain, double t,
                                        NodeFields& out) const {
  out.resize(grid_);
  k_.strain_efforts(grid_, mat_, strain, scratch_e_);
  k_.momentum_rates(grid_, mat_, pinned_.data(), forcing_at(bc_, t), scratch_e_, out);
}

void PlateDiscretization::force(const NodeFields& q, double t, NodeFields& out) const {
  k_.strains(grid_, q.w.data(), q.psi.data(), q.phi.data(), scratch_s_);
  momentum_rate(scratch_s_, t, out);
}

double PlateDiscretization::energy(const NodeFields& p, const StrainFields& s) const {
  return k_.energy(grid_, mat_, p.w.data(), p.psi.data(), p.phi.data(), s);
}

double PlateDiscretization::energy_geometric(const GeoState& st) const {
  k_.strains(grid_, st.q.w.data(), st.q.psi.data(), st.q.phi.data(), scratch_s_);
  return energy(st.p, scratch_s_);
}

double PlateDiscretization::energy_dirac(const DiracState& st) const {
  return energy(st.p, st.strain);
}

double PlateDiscretization::boundary_power(const NodeFields& p, double t) const {
  velocity_of(p, scratch_v_);
  return k_.boundary_power(grid_, forcing_at(bc_, t), scratch_v_);
}

namespace {

double weighted_dot(const Grid& g, const Material& m, const NodeFields& a, const NodeFields& b) {
  const double cw = m.inv_mass_w(), cr = m.inv_mass_rot();
  double acc = 0.0;
  for (int i = 0; i <= g.nx; ++i)
    for (int j = 0; j <= g.ny; ++j) {
      const size_t n = g.node(i, j);
      const double wn = g.dx * g.dy * g.wx(i) * g.wy(j);
      acc += wn * (cw * a.w[n] * b.w[n] + cr * (a.psi[n] * b.psi[n] + a.phi[n] * b.phi[n]));
    }
  return acc;
}

}  // namespace

double PlateDiscretization::omega_max() const {
  if (omega_max_ >= 0.0) return omega_max_;
  // Power iteration on the momentum-space operator p -> -d/dt(dp/dt), which
  // is self-adjoint and positive in the energy inner product. Fixed
  // iteration count and starting vector keep the result reproducible.
  NodeFields p, z;
  p.resize(grid_);
  z.resize(grid_);
  for (size_t n = 0; n < grid_.nodes(); ++n) {
    if (pinned_[n]) continue;
    p.w[n] = p.psi[n] = p.phi[n] = 1.0;
  }
  const ForcingValues quiet;
  auto apply = [&](const NodeFields& in, NodeFields& out) {
    velocity_of(in, scratch_v_);
    k_.strains(grid_, scratch_v_.w.data(), scratch_v_.psi.data(), scratch_v_.phi.data(),
               scratch_s_);
    k_.strain_efforts(grid_, mat_, scratch_s_, scratch_e_);
    k_.momentum_rates(grid_, mat_, pinned_.data(), quiet, scratch_e_, out);
    for (auto* f : {&out.w, &out.psi, &out.phi})
      for (double& x : *f) x = -x;
  };
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    apply(p, z);
    const double zz = weighted_dot(grid_, mat_, z, z);
    if (zz == 0.0) {
      omega_max_ = 0.0;
      return omega_max_;
    }
    lambda = weighted_dot(grid_, mat_, p, z) / weighted_dot(grid_, mat_, p, p);
    const double inv = 1.0 / std::sqrt(zz);
    for (size_t n = 0; n < grid_.nodes(); ++n) {
      p.w[n] = z.w[n] * inv;
      p.psi[n] = z.psi[n] * inv;
      p.phi[n] = z.phi[n] * inv;
    }
  }
  omega_max_ = std::sqrt(std::max(lambda, 0.0));
  return omega_max_;
}

double PlateDiscretization::default_dt() const {
  const double cs = std::sqrt(mat_.kgh / mat_.rho_h);
  const double cb = std::sqrt(mat_.d / mat_.rho_i);
  const double grid_dt = 0.5 * std::min(grid_.dx, grid_.dy) / std::max(cs, cb);
  // The wave-speed bound misses the zero-order shear coupling, whose
  // frequency does not shrink with the grid, so cap by the measured
  // spectrum as well.
  return std::min(grid_dt, 0.5 * stable_dt());
}

GeoState PlateDiscretization::initial_geometric(const InitialCondition& ic) const {
  GeoState st;
  st.q.resize(grid_);
  st.p.resize(grid_);
  if (ic.kind == InitialCondition::Kind::Gaussian) {
    const double cx = 0.5 * grid_.lx, cy = 0.5 * grid_.ly;
    const double s = ic.sigma * std::min(grid_.lx, grid_.ly);
    for (int i = 0; i <= grid_.nx; ++i)
      for (int j = 0; j <= grid_.ny; ++j) {
        const size_t n = grid_.node(i, j);
        if (pinned_[n]) continue;
        const double rx = grid_.x(i) - cx, ry = grid_.y(j) - cy;
        st.q.w[n] = ic.amplitude * std::exp(-(rx * rx + ry * ry) / (2.0 * s * s));
      }
  }
  return st;
}

DiracState PlateDiscretization::initial_dirac(const InitialCondition& ic) const {
  const GeoState geo = initial_geometric(ic);
  DiracState st;
  st.p = geo.p;
  st.recon = geo.q;
  strain_of(geo.q, st.strain);
  st.t = geo.t;
  return st;
}

double PlateDiscretization::compatibility_defect(const DiracState& st) const {
  strain_of(st.recon, scratch_s_);
  double m = 0.0;
  auto fam = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  };
  fam(scratch_s_.gxz, st.strain.gxz);
  fam(scratch_s_.gyz, st.strain.gyz);
  fam(scratch_s_.gx, st.strain.gx);
  fam(scratch_s_.gy, st.strain.gy);
  fam(scratch_s_.gxy, st.strain.gxy);
  return m;
}

double PlateDiscretization::field_scale(const DiracState& st) const {
  strain_of(st.recon, scratch_s_);
  const StrainFields& r = scratch_s_;
  double m = 0.0;
  for (const std::vector<double>* f :
       {&st.strain.gxz, &st.strain.gyz, &st.strain.gx, &st.strain.gy, &st.strain.gxy, &r.gxz,
        &r.gyz, &r.gx, &r.gy, &r.gxy})
    for (double x : *f) m = std::max(m, std::abs(x));
  return m;
}

void check_admissible(const PlateBC& bc) {
  const BoundaryForm bf = boundary_form(plate_lagrangian());
  FacetConditions cond;
  ExternalBoundaryInput ext;
  for (const Facet& facet : spatial_facets(bf.chart)) {
    const int f = PlateBC::facet_index(facet.name());
    if (bc[f].type == BCType::Clamped) {
      cond.pinned[facet.name()] = {"w", "psi", "phi"};
    } else {
      // Free and forced facets expose the resultant traces as the boundary
      // port; the prescribed signals enter through that port.
      for (const auto& [dep, coeff] : bf.coefficients.at(facet.direction))
        ext.inputs[facet.name()][dep] = coeff;
    }
  }
  if (!admissible(bf, ext, cond))
    fail(ErrorKind::Config, "boundary conditions leave an unmatched boundary term");
}

void leapfrog_step(const PlateDiscretization& d, GeoState& st, double dt, bool force) {
  if (!(dt > 0.0)) fail(ErrorKind::Config, "time step must be positive");
  if (!force && dt > 0.95 * d.stable_dt())
    fail(ErrorKind::Numerical, "time step exceeds the explicit stability limit");
  const Grid& g = d.grid();
  const size_t n = g.nodes();
  NodeFields tmp;
  tmp.resize(g);
  const Kernels& k = d.kernels();

  d.force(st.q, st.t, tmp);
  k.axpy(n, 0.5 * dt, tmp.w.data(), st.p.w.data());
  k.axpy(n, 0.5 * dt, tmp.psi.data(), st.p.psi.data());
  k.axpy(n, 0.5 * dt, tmp.phi.data(), st.p.phi.data());

  d.velocity_of(st.p, tmp);
  k.axpy(n, dt, tmp.w.data(), st.q.w.data());
  k.axpy(n, dt, tmp.psi.data(), st.q.psi.data());
  k.axpy(n, dt, tmp.phi.data(), st.q.phi.data());

  d.force(st.q, st.t + dt, tmp);
  k.axpy(n, 0.5 * dt, tmp.w.data(), st.p.w.data());
  k.axpy(n, 0.5 * dt, tmp.psi.data(), st.p.psi.data());
  k.axpy(n, 0.5 * dt, tmp.phi.data(), st.p.phi.data());

  st.t += dt;
}

}  // namespace jetph::sim
