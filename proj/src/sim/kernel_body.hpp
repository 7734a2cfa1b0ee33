#pragma once

// Per-strip kernel bodies shared by the serial and OpenMP backends. Each
// function handles one x-index so the parallel backend can distribute strips
// without changing any accumulation order.

#include <cstdint>

#include "jetph/sim/kernels.hpp"

namespace jetph::sim::detail {

// Out-of-range strain/effort reads are zero. That closure makes the momentum
// rates the exact negative gradient of the discrete energy under the
// trapezoid weights, which is what the conservation identities rely on: a
// missing edge or center is a zero-traction neighbor.
inline double at_xe(const Grid& g, const double* e, int i, int j) {
  return (i >= 0 && i < g.nx) ? e[g.xedge(i, j)] : 0.0;
}
inline double at_ye(const Grid& g, const double* e, int i, int j) {
  return (j >= 0 && j < g.ny) ? e[g.yedge(i, j)] : 0.0;
}
inline double at_c(const Grid& g, const double* e, int i, int j) {
  return (i >= 0 && i < g.nx && j >= 0 && j < g.ny) ? e[g.center(i, j)] : 0.0;
}

// Strains from configurations, strip i. Shear strains live where their
// transverse difference is centered; bending strains average the two node
// rows/columns of a cell so every strain is second-order at its location.
inline void strains_strip(const Grid& g, int i, const double* w, const double* psi,
                          const double* phi, StrainFields& out) {
  if (i < g.nx) {
    for (int j = 0; j <= g.ny; ++j) {
      const size_t n0 = g.node(i, j), n1 = g.node(i + 1, j);
      out.gxz[g.xedge(i, j)] = (w[n1] - w[n0]) / g.dx - 0.5 * (psi[n1] + psi[n0]);
    }
    for (int j = 0; j < g.ny; ++j) {
      const size_t n00 = g.node(i, j), n10 = g.node(i + 1, j);
      const size_t n01 = g.node(i, j + 1), n11 = g.node(i + 1, j + 1);
      const size_t c = g.center(i, j);
      out.gx[c] = -((psi[n10] - psi[n00]) + (psi[n11] - psi[n01])) / (2.0 * g.dx);
      out.gy[c] = -((phi[n01] - phi[n00]) + (phi[n11] - phi[n10])) / (2.0 * g.dy);
      out.gxy[c] = -((psi[n01] - psi[n00]) + (psi[n11] - psi[n10])) / (2.0 * g.dy) -
                   ((phi[n10] - phi[n00]) + (phi[n11] - phi[n01])) / (2.0 * g.dx);
    }
  }
  for (int j = 0; j < g.ny; ++j) {
    const size_t n0 = g.node(i, j), n1 = g.node(i, j + 1);
    out.gyz[g.yedge(i, j)] = (w[n1] - w[n0]) / g.dy - 0.5 * (phi[n1] + phi[n0]);
  }
}

inline void strain_efforts_strip(const Grid& g, const Material& m, int i, const StrainFields& s,
                                 StrainFields& e) {
  if (i < g.nx) {
    for (int j = 0; j <= g.ny; ++j) {
      const size_t k = g.xedge(i, j);
      e.gxz[k] = m.kgh * s.gxz[k];
    }
    for (int j = 0; j < g.ny; ++j) {
      const size_t c = g.center(i, j);
      e.gx[c] = m.d * (s.gx[c] + m.nu * s.gy[c]);
      e.gy[c] = m.d * (s.gy[c] + m.nu * s.gx[c]);
      e.gxy[c] = 0.5 * m.d * (1.0 - m.nu) * s.gxy[c];
    }
  }
  for (int j = 0; j < g.ny; ++j) {
    const size_t k = g.yedge(i, j);
    e.gyz[k] = m.kgh * s.gyz[k];
  }
}

inline void velocities_strip(const Grid& g, const Material& m, int i, const uint8_t* pinned,
                             const double* pw, const double* ppsi, const double* pphi,
                             NodeFields& v) {
  const double cw = m.inv_mass_w(), cr = m.inv_mass_rot();
  for (int j = 0; j <= g.ny; ++j) {
    const size_t n = g.node(i, j);
    if (pinned[n]) {
      v.w[n] = v.psi[n] = v.phi[n] = 0.0;
    } else {
      v.w[n] = cw * pw[n];
      v.psi[n] = cr * ppsi[n];
      v.phi[n] = cr * pphi[n];
    }
  }
}

// Momentum rates, strip i: the exact negative gradient of the discrete
// energy with respect to the node configurations, divided by the node
// quadrature weight, plus consistent facet loading. Prescribed facet data
// are outward traction resultants; dividing by the collapsed-direction
// weight (wx or wy = 1/2 at a facet, hence the factor 2) makes the recorded
// facet power match dH/dt exactly in the semi-discrete system.
inline void momentum_rates_strip(const Grid& g, const Material& m, int i, const uint8_t* pinned,
                                 const ForcingValues& f, const StrainFields& e, NodeFields& rate) {
  const double* e2 = e.gxz.data();
  const double* e3 = e.gyz.data();
  const double* e6 = e.gx.data();
  const double* e7 = e.gy.data();
  const double* e8 = e.gxy.data();
  const double iwx = 1.0 / g.wx(i);
  for (int j = 0; j <= g.ny; ++j) {
    const double iwy = 1.0 / g.wy(j);
    const double iwxy = iwx * iwy;
    const double e2r = at_xe(g, e2, i, j), e2l = at_xe(g, e2, i - 1, j);
    const double e3u = at_ye(g, e3, i, j), e3d = at_ye(g, e3, i, j - 1);
    const double e6pp = at_c(g, e6, i, j), e6pm = at_c(g, e6, i, j - 1);
    const double e6mp = at_c(g, e6, i - 1, j), e6mm = at_c(g, e6, i - 1, j - 1);
    const double e7pp = at_c(g, e7, i, j), e7pm = at_c(g, e7, i, j - 1);
    const double e7mp = at_c(g, e7, i - 1, j), e7mm = at_c(g, e7, i - 1, j - 1);
    const double e8pp = at_c(g, e8, i, j), e8pm = at_c(g, e8, i, j - 1);
    const double e8mp = at_c(g, e8, i - 1, j), e8mm = at_c(g, e8, i - 1, j - 1);

    double fw = iwx * (e2r - e2l) / g.dx + iwy * (e3u - e3d) / g.dy;
    double fpsi = iwx * 0.5 * (e2r + e2l) -
                  iwxy * ((e6pp + e6pm - e6mp - e6mm) / (2.0 * g.dx) +
                          (e8pp + e8mp - e8pm - e8mm) / (2.0 * g.dy));
    double fphi = iwy * 0.5 * (e3u + e3d) -
                  iwxy * ((e7pp + e7mp - e7pm - e7mm) / (2.0 * g.dy) +
                          (e8pp + e8pm - e8mp - e8mm) / (2.0 * g.dx));

    if (i == 0 && f.forced[0]) {
      fw += 2.0 * f.qn[0] / g.dx;
      fpsi += 2.0 * f.mn[0] / g.dx;
      fphi += 2.0 * f.mnt[0] / g.dx;
    }
    if (i == g.nx && f.forced[1]) {
      fw += 2.0 * f.qn[1] / g.dx;
      fpsi += 2.0 * f.mn[1] / g.dx;
      fphi += 2.0 * f.mnt[1] / g.dx;
    }
    if (j == 0 && f.forced[2]) {
      fw += 2.0 * f.qn[2] / g.dy;
      fpsi += 2.0 * f.mnt[2] / g.dy;
      fphi += 2.0 * f.mn[2] / g.dy;
    }
    if (j == g.ny && f.forced[3]) {
      fw += 2.0 * f.qn[3] / g.dy;
      fpsi += 2.0 * f.mnt[3] / g.dy;
      fphi += 2.0 * f.mn[3] / g.dy;
    }

    const size_t n = g.node(i, j);
    if (pinned[n]) {
      rate.w[n] = rate.psi[n] = rate.phi[n] = 0.0;
    } else {
      rate.w[n] = fw;
      rate.psi[n] = fpsi;
      rate.phi[n] = fphi;
    }
  }
}

// One strip's energy contribution. Accumulation order inside a strip is
// fixed, and the caller combines strips in index order, so the total is
// bitwise reproducible for any thread count.
inline double energy_strip(const Grid& g, const Material& m, int i, const double* pw,
                           const double* ppsi, const double* pphi, const StrainFields& s) {
  const double area = g.dx * g.dy;
  const double c2w = 0.5 * m.inv_mass_w(), c2r = 0.5 * m.inv_mass_rot();
  double acc = 0.0;
  const double wxi = g.wx(i);
  for (int j = 0; j <= g.ny; ++j) {
    const size_t n = g.node(i, j);
    acc += area * wxi * g.wy(j) *
           (c2w * pw[n] * pw[n] + c2r * (ppsi[n] * ppsi[n] + pphi[n] * pphi[n]));
  }
  if (i < g.nx) {
    for (int j = 0; j <= g.ny; ++j) {
      const double v = s.gxz[g.xedge(i, j)];
      acc += area * g.wy(j) * 0.5 * m.kgh * v * v;
    }
  }
  for (int j = 0; j < g.ny; ++j) {
    const double v = s.gyz[g.yedge(i, j)];
    acc += area * wxi * 0.5 * m.kgh * v * v;
  }
  if (i < g.nx) {
    for (int j = 0; j < g.ny; ++j) {
      const size_t c = g.center(i, j);
      const double gx = s.gx[c], gy = s.gy[c], gxy = s.gxy[c];
      acc += area * (0.5 * m.d * (gx * gx + 2.0 * m.nu * gx * gy + gy * gy) +
                     0.25 * m.d * (1.0 - m.nu) * gxy * gxy);
    }
  }
  return acc;
}

inline double boundary_power_serial(const Grid& g, const ForcingValues& f, const NodeFields& v) {
  double p = 0.0;
  for (int side = 0; side < 2; ++side) {
    const int fct = side;  // X0, X1
    if (!f.forced[fct]) continue;
    const int i = side == 0 ? 0 : g.nx;
    for (int j = 0; j <= g.ny; ++j) {
      const size_t n = g.node(i, j);
      p += g.dy * g.wy(j) * (v.w[n] * f.qn[fct] + v.psi[n] * f.mn[fct] + v.phi[n] * f.mnt[fct]);
    }
  }
  for (int side = 0; side < 2; ++side) {
    const int fct = 2 + side;  // Y0, Y1
    if (!f.forced[fct]) continue;
    const int j = side == 0 ? 0 : g.ny;
    for (int i = 0; i <= g.nx; ++i) {
      const size_t n = g.node(i, j);
      p += g.dx * g.wx(i) * (v.w[n] * f.qn[fct] + v.psi[n] * f.mnt[fct] + v.phi[n] * f.mn[fct]);
    }
  }
  return p;
}

}  // namespace jetph::sim::detail
