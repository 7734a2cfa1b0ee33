#include <vector>

#include "kernel_body.hpp"

// OpenMP backend. Work is split by x-strip; strips write disjoint ranges, so
// the field kernels need no synchronization. The energy reduction stores one
// partial per strip and combines them serially in strip order, which keeps
// the sum bitwise equal to the serial backend for any thread count.

namespace jetph::sim::omp {

void strains(const Grid& g, const double* w, const double* psi, const double* phi,
             StrainFields& out) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= g.nx; ++i) detail::strains_strip(g, i, w, psi, phi, out);
}

void strain_efforts(const Grid& g, const Material& m, const StrainFields& s, StrainFields& e) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= g.nx; ++i) detail::strain_efforts_strip(g, m, i, s, e);
}

void velocities(const Grid& g, const Material& m, const uint8_t* pinned, const double* pw,
                const double* ppsi, const double* pphi, NodeFields& v) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= g.nx; ++i) detail::velocities_strip(g, m, i, pinned, pw, ppsi, pphi, v);
}

void momentum_rates(const Grid& g, const Material& m, const uint8_t* pinned,
                    const ForcingValues& f, const StrainFields& e, NodeFields& rate) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= g.nx; ++i) detail::momentum_rates_strip(g, m, i, pinned, f, e, rate);
}

double energy(const Grid& g, const Material& m, const double* pw, const double* ppsi,
              const double* pphi, const StrainFields& s) {
  std::vector<double> strip(size_t(g.nx) + 1, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= g.nx; ++i) strip[i] = detail::energy_strip(g, m, i, pw, ppsi, pphi, s);
  double total = 0.0;
  for (int i = 0; i <= g.nx; ++i) total += strip[i];
  return total;
}

double boundary_power(const Grid& g, const ForcingValues& f, const NodeFields& v) {
  return detail::boundary_power_serial(g, f, v);
}

void axpy(size_t n, double a, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < (long long)n; ++k) y[k] += a * x[k];
}

}  // namespace jetph::sim::omp
