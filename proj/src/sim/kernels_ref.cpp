#include "kernel_body.hpp"

namespace jetph::sim::ref {

void strains(const Grid& g, const double* w, const double* psi, const double* phi,
             StrainFields& out) {
  for (int i = 0; i <= g.nx; ++i) detail::strains_strip(g, i, w, psi, phi, out);
}

void strain_efforts(const Grid& g, const Material& m, const StrainFields& s, StrainFields& e) {
  for (int i = 0; i <= g.nx; ++i) detail::strain_efforts_strip(g, m, i, s, e);
}

void velocities(const Grid& g, const Material& m, const uint8_t* pinned, const double* pw,
                const double* ppsi, const double* pphi, NodeFields& v) {
  for (int i = 0; i <= g.nx; ++i) detail::velocities_strip(g, m, i, pinned, pw, ppsi, pphi, v);
}

void momentum_rates(const Grid& g, const Material& m, const uint8_t* pinned,
                    const ForcingValues& f, const StrainFields& e, NodeFields& rate) {
  for (int i = 0; i <= g.nx; ++i) detail::momentum_rates_strip(g, m, i, pinned, f, e, rate);
}

double energy(const Grid& g, const Material& m, const double* pw, const double* ppsi,
              const double* pphi, const StrainFields& s) {
  double total = 0.0;
  for (int i = 0; i <= g.nx; ++i) total += detail::energy_strip(g, m, i, pw, ppsi, pphi, s);
  return total;
}

double boundary_power(const Grid& g, const ForcingValues& f, const NodeFields& v) {
  return detail::boundary_power_serial(g, f, v);
}

void axpy(size_t n, double a, const double* x, double* y) {
  for (size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

}  // namespace jetph::sim::ref
