// Benchmarks the OpenMP kernels against the serial reference implementation
// and asserts the two backends produce bitwise-identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "jetph/sim/kernels.hpp"

using namespace jetph::sim;

namespace {

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Deterministic fill so both backends see identical inputs.
void fill(std::vector<double>& v, unsigned seed) {
  unsigned s = seed * 2654435761u + 12345u;
  for (double& x : v) {
    s = s * 1664525u + 1013904223u;
    x = (double(s >> 8) / double(1u << 24) - 0.5) * 1e-3;
  }
}

struct Case {
  Grid grid;
  Material mat;
  std::vector<uint8_t> pinned;
  ForcingValues forcing;
  NodeFields p, v, rate;
  StrainFields g, e;

  explicit Case(int n) : grid(n, n, 1.0, 1.0), mat(jetph::PlateParams{}) {
    PlateBC bc;
    bc[0] = FacetBC::clamped();
    pinned = pinned_mask(grid, bc);
    forcing = ForcingValues{};
    forcing.forced[1] = true;
    forcing.qn[1] = 1e2;
    forcing.mn[1] = 1.0;
    p.resize(grid);
    v.resize(grid);
    rate.resize(grid);
    g.resize(grid);
    e.resize(grid);
    fill(p.w, 1);
    fill(p.psi, 2);
    fill(p.phi, 3);
  }
};

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Timing {
  double serial = 0.0, parallel = 0.0;
  bool match = true;
};

template <class F>
double best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now();
    body();
    best = std::min(best, now() - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel benchmark: serial reference vs OpenMP backend"};
  int n = 512;
  int reps = 20;
  app.add_option("--grid", n, "Cells per direction (square grid)")->check(CLI::Range(8, 8192));
  app.add_option("--reps", reps, "Repetitions per kernel; best time wins")
      ->check(CLI::Range(1, 1000));
  CLI11_PARSE(app, argc, argv);

  Case c(n);
  const Kernels& ser = kernels(Backend::Serial);
  const Kernels& par = kernels(Backend::OpenMP);

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("grid %dx%d cells, %d reps, %d thread(s)\n", n, n, reps, threads);
  std::printf("%-16s %12s %12s %9s  %s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup",
              "bitwise");

  bool all_match = true;
  auto report = [&](const char* name, const Timing& t) {
    std::printf("%-16s %12.3f %12.3f %8.2fx  %s\n", name, t.serial * 1e3, t.parallel * 1e3,
                t.serial / t.parallel, t.match ? "ok" : "MISMATCH");
    all_match = all_match && t.match;
  };

  {
    Timing t;
    StrainFields out_s, out_p;
    out_s.resize(c.grid);
    out_p.resize(c.grid);
    t.serial = best_of(reps, [&] {
      ser.strains(c.grid, c.p.w.data(), c.p.psi.data(), c.p.phi.data(), out_s);
    });
    t.parallel = best_of(reps, [&] {
      par.strains(c.grid, c.p.w.data(), c.p.psi.data(), c.p.phi.data(), out_p);
    });
    t.match = same(out_s.gxz, out_p.gxz) && same(out_s.gyz, out_p.gyz) &&
              same(out_s.gx, out_p.gx) && same(out_s.gy, out_p.gy) && same(out_s.gxy, out_p.gxy);
    report("strains", t);
    c.g = out_s;
  }
  {
    Timing t;
    StrainFields out_s, out_p;
    out_s.resize(c.grid);
    out_p.resize(c.grid);
    t.serial = best_of(reps, [&] { ser.strain_efforts(c.grid, c.mat, c.g, out_s); });
    t.parallel = best_of(reps, [&] { par.strain_efforts(c.grid, c.mat, c.g, out_p); });
    t.match = same(out_s.gxz, out_p.gxz) && same(out_s.gyz, out_p.gyz) &&
              same(out_s.gx, out_p.gx) && same(out_s.gy, out_p.gy) && same(out_s.gxy, out_p.gxy);
    report("strain_efforts", t);
    c.e = out_s;
  }
  {
    Timing t;
    NodeFields out_s, out_p;
    out_s.resize(c.grid);
    out_p.resize(c.grid);
    t.serial = best_of(reps, [&] {
      ser.velocities(c.grid, c.mat, c.pinned.data(), c.p.w.data(), c.p.psi.data(), c.p.phi.data(),
                     out_s);
    });
    t.parallel = best_of(reps, [&] {
      par.velocities(c.grid, c.mat, c.pinned.data(), c.p.w.data(), c.p.psi.data(), c.p.phi.data(),
                     out_p);
    });
    t.match = same(out_s.w, out_p.w) && same(out_s.psi, out_p.psi) && same(out_s.phi, out_p.phi);
    report("velocities", t);
    c.v = out_s;
  }
  {
    Timing t;
    NodeFields out_s, out_p;
    out_s.resize(c.grid);
    out_p.resize(c.grid);
    t.serial = best_of(reps, [&] {
      ser.momentum_rates(c.grid, c.mat, c.pinned.data(), c.forcing, c.e, out_s);
    });
    t.parallel = best_of(reps, [&] {
      par.momentum_rates(c.grid, c.mat, c.pinned.data(), c.forcing, c.e, out_p);
    });
    t.match = same(out_s.w, out_p.w) && same(out_s.psi, out_p.psi) && same(out_s.phi, out_p.phi);
    report("momentum_rates", t);
  }
  {
    Timing t;
    double es = 0.0, ep = 0.0;
    t.serial = best_of(reps, [&] {
      es = ser.energy(c.grid, c.mat, c.p.w.data(), c.p.psi.data(), c.p.phi.data(), c.g);
    });
    t.parallel = best_of(reps, [&] {
      ep = par.energy(c.grid, c.mat, c.p.w.data(), c.p.psi.data(), c.p.phi.data(), c.g);
    });
    t.match = std::memcmp(&es, &ep, sizeof(double)) == 0;
    report("energy", t);
  }
  {
    Timing t;
    std::vector<double> ys(c.p.w.size()), yp(c.p.w.size());
    fill(ys, 7);
    yp = ys;
    t.serial = best_of(reps, [&] { ser.axpy(ys.size(), 0.5, c.p.w.data(), ys.data()); });
    t.parallel = best_of(reps, [&] { par.axpy(yp.size(), 0.5, c.p.w.data(), yp.data()); });
    t.match = same(ys, yp);
    report("axpy", t);
  }

  if (!all_match) {
    std::fprintf(stderr, "backend mismatch detected\n");
    return 1;
  }
  return 0;
}
