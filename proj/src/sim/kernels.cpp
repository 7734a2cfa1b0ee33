#include "jetph/sim/kernels.hpp"

namespace jetph::sim {

const Kernels& kernels(Backend b) {
  static const Kernels serial = {ref::strains,        ref::strain_efforts, ref::velocities,
                                 ref::momentum_rates, ref::energy,         ref::boundary_power,
                                 ref::axpy};
  static const Kernels parallel = {omp::strains,        omp::strain_efforts, omp::velocities,
                                   omp::momentum_rates, omp::energy,         omp::boundary_power,
                                   omp::axpy};
  return b == Backend::Serial ? serial : parallel;
}

std::vector<uint8_t> pinned_mask(const Grid& g, const PlateBC& bc) {
  std::vector<uint8_t> pinned(g.nodes(), 0);
  auto clamp_x = [&](int i) {
    for (int j = 0; j <= g.ny; ++j) pinned[g.node(i, j)] = 1;
  };
  auto clamp_y = [&](int j) {
    for (int i = 0; i <= g.nx; ++i) pinned[g.node(i, j)] = 1;
  };
  if (bc[0].type == BCType::Clamped) clamp_x(0);
  if (bc[1].type == BCType::Clamped) clamp_x(g.nx);
  if (bc[2].type == BCType::Clamped) clamp_y(0);
  if (bc[3].type == BCType::Clamped) clamp_y(g.ny);
  return pinned;
}

}  // namespace jetph::sim
