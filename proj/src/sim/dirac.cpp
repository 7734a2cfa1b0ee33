#include <vector>

#include "jetph/sim/system.hpp"

// Sparse assembly of the energy-form operators. The strain map, the strain
// weights, and the momentum weights are emitted from one enumeration of the
// stencils so the weighted structure matrix can pair every entry with its
// exact negative and stay skew bitwise.

namespace jetph::sim {

namespace {

enum Field { FW = 0, FPSI = 1, FPHI = 2 };

struct Layout {
  const Grid& g;
  size_t nn, np;
  size_t o_xz, o_yz, o_x, o_y, o_xy, nstrain;

  explicit Layout(const Grid& grid)
      : g(grid), nn(grid.nodes()), np(3 * grid.nodes()), o_xz(0), o_yz(grid.xedges()),
        o_x(o_yz + grid.yedges()), o_y(o_x + grid.centers()), o_xy(o_y + grid.centers()),
        nstrain(o_xy + grid.centers()) {}

  size_t col(Field f, int i, int j) const { return size_t(f) * nn + g.node(i, j); }
};

// Walks every strain-map entry: row in strain space, node column, stencil
// coefficient (before any mass scaling).
template <class F>
void for_each_strain_entry(const Layout& L, F&& cb) {
  const Grid& g = L.g;
  const double ix = 1.0 / g.dx, iy = 1.0 / g.dy;
  const double hx = 0.5 / g.dx, hy = 0.5 / g.dy;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j <= g.ny; ++j) {
      const size_t r = L.o_xz + g.xedge(i, j);
      cb(r, FW, i + 1, j, ix);
      cb(r, FW, i, j, -ix);
      cb(r, FPSI, i + 1, j, -0.5);
      cb(r, FPSI, i, j, -0.5);
    }
  for (int i = 0; i <= g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const size_t r = L.o_yz + g.yedge(i, j);
      cb(r, FW, i, j + 1, iy);
      cb(r, FW, i, j, -iy);
      cb(r, FPHI, i, j + 1, -0.5);
      cb(r, FPHI, i, j, -0.5);
    }
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const size_t c = g.center(i, j);
      const size_t rx = L.o_x + c, ry = L.o_y + c, rxy = L.o_xy + c;
      cb(rx, FPSI, i + 1, j, -hx);
      cb(rx, FPSI, i, j, hx);
      cb(rx, FPSI, i + 1, j + 1, -hx);
      cb(rx, FPSI, i, j + 1, hx);
      cb(ry, FPHI, i, j + 1, -hy);
      cb(ry, FPHI, i, j, hy);
      cb(ry, FPHI, i + 1, j + 1, -hy);
      cb(ry, FPHI, i + 1, j, hy);
      cb(rxy, FPSI, i, j + 1, -hy);
      cb(rxy, FPSI, i, j, hy);
      cb(rxy, FPSI, i + 1, j + 1, -hy);
      cb(rxy, FPSI, i + 1, j, hy);
      cb(rxy, FPHI, i + 1, j, -hx);
      cb(rxy, FPHI, i, j, hx);
      cb(rxy, FPHI, i + 1, j + 1, -hx);
      cb(rxy, FPHI, i, j + 1, hx);
    }
}

// Strain-space weight entries for one row: quadrature weight times material
// stiffness, with the Poisson 2x2 block coupling the two normal bending
// strains of a cell.
template <class F>
void for_each_weight_of_row(const Layout& L, const Material& m, size_t row, F&& cb) {
  const Grid& g = L.g;
  const double area = g.dx * g.dy;
  if (row < L.o_yz) {
    const int j = int((row - L.o_xz) % size_t(g.ny + 1));
    cb(row, area * g.wy(j) * m.kgh);
  } else if (row < L.o_x) {
    const int i = int((row - L.o_yz) / size_t(g.ny));
    cb(row, area * g.wx(i) * m.kgh);
  } else if (row < L.o_y) {
    const size_t c = row - L.o_x;
    cb(L.o_x + c, area * m.d);
    cb(L.o_y + c, area * m.d * m.nu);
  } else if (row < L.o_xy) {
    const size_t c = row - L.o_y;
    cb(L.o_y + c, area * m.d);
    cb(L.o_x + c, area * m.d * m.nu);
  } else {
    cb(row, area * 0.5 * m.d * (1.0 - m.nu));
  }
}

double inv_mass(const Material& m, Field f) {
  return f == FW ? m.inv_mass_w() : m.inv_mass_rot();
}

}  // namespace

Eigen::SparseMatrix<double> assemble_strain_map(const PlateDiscretization& d) {
  const Layout L(d.grid());
  const auto& pinned = d.pinned();
  const Material& m = d.material();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(16 * L.g.centers() + 4 * (L.g.xedges() + L.g.yedges()));
  for_each_strain_entry(L, [&](size_t row, Field f, int i, int j, double gcoef) {
    if (pinned[L.g.node(i, j)]) return;
    trips.emplace_back(int(row), int(L.col(f, i, j)), gcoef * inv_mass(m, f));
  });
  Eigen::SparseMatrix<double> K(int(L.nstrain), int(L.np));
  K.setFromTriplets(trips.begin(), trips.end());
  return K;
}

Eigen::SparseMatrix<double> assemble_strain_weight(const PlateDiscretization& d) {
  const Layout L(d.grid());
  const Material& m = d.material();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(L.nstrain + 2 * L.g.centers());
  for (size_t row = 0; row < L.nstrain; ++row)
    for_each_weight_of_row(L, m, row,
                           [&](size_t r2, double ws) { trips.emplace_back(int(r2), int(row), ws); });
  Eigen::SparseMatrix<double> W(int(L.nstrain), int(L.nstrain));
  W.setFromTriplets(trips.begin(), trips.end());
  return W;
}

Eigen::VectorXd momentum_weight(const PlateDiscretization& d) {
  const Layout L(d.grid());
  const Grid& g = d.grid();
  const Material& m = d.material();
  Eigen::VectorXd wpc(L.np);
  for (int f = 0; f < 3; ++f)
    for (int i = 0; i <= g.nx; ++i)
      for (int j = 0; j <= g.ny; ++j)
        wpc[L.col(Field(f), i, j)] =
            g.dx * g.dy * g.wx(i) * g.wy(j) * inv_mass(m, Field(f));
  return wpc;
}

Eigen::SparseMatrix<double> assemble_weighted_structure(const PlateDiscretization& d) {
  const Layout L(d.grid());
  const auto& pinned = d.pinned();
  const Material& m = d.material();
  std::vector<Eigen::Triplet<double>> trips;
  for_each_strain_entry(L, [&](size_t row, Field f, int i, int j, double gcoef) {
    if (pinned[L.g.node(i, j)]) return;
    const size_t col = L.col(f, i, j);
    for_each_weight_of_row(L, m, row, [&](size_t r2, double ws) {
      const double v = ws * gcoef * inv_mass(m, f);
      trips.emplace_back(int(L.np + r2), int(col), v);
      trips.emplace_back(int(col), int(L.np + r2), -v);
    });
  });
  Eigen::SparseMatrix<double> M(int(L.np + L.nstrain), int(L.np + L.nstrain));
  M.setFromTriplets(trips.begin(), trips.end());
  return M;
}

DiracMidpoint::DiracMidpoint(const PlateDiscretization& d, double dt) : d_(d), dt_(dt) {
  if (!(dt > 0.0)) fail(ErrorKind::Config, "time step must be positive");
  const Eigen::SparseMatrix<double> K = assemble_strain_map(d);
  const Eigen::SparseMatrix<double> W = assemble_strain_weight(d);
  wpc_ = momentum_weight(d);

  Eigen::SparseMatrix<double> S = Eigen::SparseMatrix<double>(K.transpose()) * (W * K);
  S *= 0.25 * dt * dt;
  Eigen::SparseMatrix<double> Dg(S.rows(), S.cols());
  std::vector<Eigen::Triplet<double>> diag;
  diag.reserve(wpc_.size());
  for (int k = 0; k < wpc_.size(); ++k) diag.emplace_back(k, k, wpc_[k]);
  Dg.setFromTriplets(diag.begin(), diag.end());
  A_ = Dg + S;
  A_.makeCompressed();
  K_ = K;
  ldlt_.compute(A_);
  if (ldlt_.info() != Eigen::Success)
    fail(ErrorKind::Numerical, "midpoint system factorization failed");

  scratch_f_.resize(d.grid());
  scratch_v_.resize(d.grid());
}

void DiracMidpoint::step(DiracState& st) const {
  const Grid& g = d_.grid();
  const size_t nn = g.nodes();
  const double half = 0.5 * dt_;

  // Momentum rate from the current strains, forcing frozen at the midpoint.
  d_.momentum_rate(st.strain, st.t + half, scratch_f_);

  Eigen::VectorXd b(3 * nn);
  auto pack = [&](const std::vector<double>& p, const std::vector<double>& f, size_t off) {
    for (size_t n = 0; n < nn; ++n) b[off + n] = wpc_[off + n] * (p[n] + half * f[n]);
  };
  pack(st.p.w, scratch_f_.w, 0);
  pack(st.p.psi, scratch_f_.psi, nn);
  pack(st.p.phi, scratch_f_.phi, 2 * nn);

  Eigen::VectorXd pm = ldlt_.solve(b);
  // One refinement pass keeps the solve residual near round-off, which the
  // exact conservation of the midpoint rule then inherits.
  pm += ldlt_.solve(b - A_ * pm);

  const Eigen::VectorXd rate = K_ * pm;
  auto bump = [&](std::vector<double>& dst, size_t off) {
    for (size_t k = 0; k < dst.size(); ++k) dst[k] += dt_ * rate[off + k];
  };
  const size_t n_xe = g.xedges(), n_ye = g.yedges(), n_c = g.centers();
  bump(st.strain.gxz, 0);
  bump(st.strain.gyz, n_xe);
  bump(st.strain.gx, n_xe + n_ye);
  bump(st.strain.gy, n_xe + n_ye + n_c);
  bump(st.strain.gxy, n_xe + n_ye + 2 * n_c);

  NodeFields pmid;
  pmid.resize(g);
  for (size_t n = 0; n < nn; ++n) {
    pmid.w[n] = pm[n];
    pmid.psi[n] = pm[nn + n];
    pmid.phi[n] = pm[2 * nn + n];
  }
  d_.velocity_of(pmid, scratch_v_);
  for (size_t n = 0; n < nn; ++n) {
    st.recon.w[n] += dt_ * scratch_v_.w[n];
    st.recon.psi[n] += dt_ * scratch_v_.psi[n];
    st.recon.phi[n] += dt_ * scratch_v_.phi[n];
    st.p.w[n] = 2.0 * pm[n] - st.p.w[n];
    st.p.psi[n] = 2.0 * pm[nn + n] - st.p.psi[n];
    st.p.phi[n] = 2.0 * pm[2 * nn + n] - st.p.phi[n];
  }
  st.t += dt_;
}

}  // namespace jetph::sim
