#pragma once

#include <cstddef>

#include "jetph/error.hpp"

namespace jetph::sim {

// Uniform rectangular grid on [0,lx] x [0,ly]. Configurations and momenta
// live at nodes; transverse shear strains at edge midpoints along their
// direction; bending strains at cell centers. Quadrature is trapezoid, so
// boundary nodes weigh 1/2 per collapsed direction and corners 1/4.
struct Grid {
  int nx = 0, ny = 0;
  double lx = 1.0, ly = 1.0;
  double dx = 0.0, dy = 0.0;

  Grid() = default;
  Grid(int nx_, int ny_, double lx_, double ly_) : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
    if (nx < 4 || ny < 4) fail(ErrorKind::Config, "grid needs at least 4 cells per direction");
    if (!(lx > 0.0 && ly > 0.0)) fail(ErrorKind::Config, "grid extents must be positive");
    dx = lx / nx;
    dy = ly / ny;
  }

  size_t nodes() const { return size_t(nx + 1) * (ny + 1); }
  size_t xedges() const { return size_t(nx) * (ny + 1); }
  size_t yedges() const { return size_t(nx + 1) * ny; }
  size_t centers() const { return size_t(nx) * ny; }

  size_t node(int i, int j) const { return size_t(i) * (ny + 1) + j; }
  size_t xedge(int i, int j) const { return size_t(i) * (ny + 1) + j; }
  size_t yedge(int i, int j) const { return size_t(i) * ny + j; }
  size_t center(int i, int j) const { return size_t(i) * ny + j; }

  double wx(int i) const { return (i == 0 || i == nx) ? 0.5 : 1.0; }
  double wy(int j) const { return (j == 0 || j == ny) ? 0.5 : 1.0; }

  double x(int i) const { return i * dx; }
  double y(int j) const { return j * dy; }
};

}  // namespace jetph::sim
