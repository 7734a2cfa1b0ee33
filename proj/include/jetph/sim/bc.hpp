#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "jetph/error.hpp"

namespace jetph::sim {

enum class BCType { Clamped, Free, Forced };

// Scalar forcing signal. Sine is amplitude*sin(2*pi*frequency*(t-t0)),
// step is amplitude for t >= t0, zero otherwise.
struct Signal {
  enum class Kind { Zero, Sine, Step } kind = Kind::Zero;
  double amplitude = 0.0;
  double frequency = 0.0;
  double t0 = 0.0;

  static Signal zero() { return {}; }
  static Signal sine(double amplitude, double frequency, double t0 = 0.0) {
    return {Kind::Sine, amplitude, frequency, t0};
  }
  static Signal step(double amplitude, double t0 = 0.0) { return {Kind::Step, amplitude, 0.0, t0}; }

  double operator()(double t) const {
    switch (kind) {
      case Kind::Zero: return 0.0;
      case Kind::Sine: return amplitude * std::sin(2.0 * std::numbers::pi * frequency * (t - t0));
      case Kind::Step: return t >= t0 ? amplitude : 0.0;
    }
    return 0.0;
  }
};

// Prescribed data on one facet. For forced facets the three signals are the
// outward traction resultants conjugate to (w, normal rotation, tangential
// rotation): shear qn, bending moment mn, twisting moment mnt. Power flowing
// in through the facet is the facet quadrature of w_t*qn + rot_t*moments.
struct FacetBC {
  BCType type = BCType::Clamped;
  Signal qn, mn, mnt;

  static FacetBC clamped() { return {BCType::Clamped, {}, {}, {}}; }
  static FacetBC free() { return {BCType::Free, {}, {}, {}}; }
  static FacetBC forced(Signal qn, Signal mn = {}, Signal mnt = {}) {
    return {BCType::Forced, qn, mn, mnt};
  }
};

// Facet order: X0, X1, Y0, Y1 (lower/upper per direction).
struct PlateBC {
  std::array<FacetBC, 4> facet = {FacetBC::clamped(), FacetBC::clamped(), FacetBC::clamped(),
                                  FacetBC::clamped()};

  FacetBC& operator[](int f) { return facet.at(f); }
  const FacetBC& operator[](int f) const { return facet.at(f); }

  static int facet_index(const std::string& name) {
    if (name == "X0") return 0;
    if (name == "X1") return 1;
    if (name == "Y0") return 2;
    if (name == "Y1") return 3;
    fail(ErrorKind::Config, "unknown facet name " + name + " (expected X0, X1, Y0, Y1)");
  }
  static const char* facet_name(int f) {
    static const char* names[4] = {"X0", "X1", "Y0", "Y1"};
    if (f < 0 || f > 3) fail(ErrorKind::Internal, "facet index out of range");
    return names[f];
  }

  bool any_forced() const {
    for (const auto& b : facet)
      if (b.type == BCType::Forced) return true;
    return false;
  }
};

// Signal values of all facets frozen at one instant, consumed by kernels so
// they stay pure in time.
struct ForcingValues {
  std::array<bool, 4> forced = {false, false, false, false};
  std::array<double, 4> qn = {0, 0, 0, 0};
  std::array<double, 4> mn = {0, 0, 0, 0};
  std::array<double, 4> mnt = {0, 0, 0, 0};
};

inline ForcingValues forcing_at(const PlateBC& bc, double t) {
  ForcingValues fv;
  for (int f = 0; f < 4; ++f) {
    if (bc[f].type != BCType::Forced) continue;
    fv.forced[f] = true;
    fv.qn[f] = bc[f].qn(t);
    fv.mn[f] = bc[f].mn(t);
    fv.mnt[f] = bc[f].mnt(t);
  }
  return fv;
}

}  // namespace jetph::sim
