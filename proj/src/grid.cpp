#include "geoplan/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace geoplan {

ScalarGrid ScalarGrid::make(int dimension, const Vec& origin, double cell_size,
                            const GridCoord& shape) {
  if (dimension != 2 && dimension != 3) {
    throw std::invalid_argument("ScalarGrid: dimension must be 2 or 3");
  }
  if (cell_size <= 0.0) {
    throw std::invalid_argument("ScalarGrid: cell_size must be positive");
  }
  ScalarGrid g;
  g.dimension = dimension;
  g.origin = origin;
  g.cell_size = cell_size;
  g.shape = shape;
  if (dimension == 2) g.shape[2] = 1;
  for (int a = 0; a < dimension; ++a) {
    if (g.shape[a] < 3) {
      throw std::invalid_argument("ScalarGrid: need at least 3 cells per axis");
    }
  }
  g.values.assign(g.cell_count(), 0.0);
  g.free_mask.assign(g.cell_count(), 1);
  return g;
}

Vec ScalarGrid::cell_center(const GridCoord& c) const {
  Vec p(dimension);
  for (int a = 0; a < dimension; ++a) {
    p[a] = origin[a] + (c[a] + 0.5) * cell_size;
  }
  return p;
}

GridCoord ScalarGrid::point_to_cell(const Vec& p) const {
  GridCoord c = GridCoord::Zero();
  for (int a = 0; a < dimension; ++a) {
    int i = static_cast<int>(std::floor((p[a] - origin[a]) / cell_size));
    c[a] = std::clamp(i, 0, shape[a] - 1);
  }
  return c;
}

ScalarGrid rasterize_workspace(const Workspace& ws, int resolution) {
  const Vec extents = ws.bounds.extents();
  const double longest = extents.maxCoeff();
  const double h = longest / resolution;
  GridCoord shape = GridCoord::Ones();
  for (int a = 0; a < ws.dimension; ++a) {
    shape[a] = std::max(3, static_cast<int>(std::lround(extents[a] / h)));
  }
  ScalarGrid g = ScalarGrid::make(ws.dimension, ws.bounds.min, h, shape);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const Vec p = g.cell_center(g.unlinear(static_cast<int>(i)));
    g.free_mask[i] = sdf_workspace(p, ws).value > 0.0 ? 1 : 0;
    if (!g.free_mask[i]) g.values[i] = kGridSentinel;
  }
  return g;
}

std::vector<std::uint8_t> connected_component(const ScalarGrid& grid,
                                              const GridCoord& seed) {
  std::vector<std::uint8_t> comp(grid.cell_count(), 0);
  if (!grid.in_grid(seed) || !grid.is_free(seed)) return comp;
  std::deque<GridCoord> queue{seed};
  comp[grid.linear(seed)] = 1;
  while (!queue.empty()) {
    const GridCoord c = queue.front();
    queue.pop_front();
    for (int a = 0; a < grid.dimension; ++a) {
      for (int s = -1; s <= 1; s += 2) {
        GridCoord nb = c;
        nb[a] += s;
        if (!grid.in_grid(nb)) continue;
        const int idx = grid.linear(nb);
        if (grid.free_mask[idx] && !comp[idx]) {
          comp[idx] = 1;
          queue.push_back(nb);
        }
      }
    }
  }
  return comp;
}

void fill_masked_cells(ScalarGrid& grid, const std::vector<std::uint8_t>& valid) {
  std::vector<std::uint8_t> done = valid;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    std::vector<std::pair<int, double>> layer;
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
      if (done[i]) continue;
      const GridCoord c = grid.unlinear(static_cast<int>(i));
      double best = kGridSentinel;
      for (int a = 0; a < grid.dimension; ++a) {
        for (int s = -1; s <= 1; s += 2) {
          GridCoord nb = c;
          nb[a] += s;
          if (!grid.in_grid(nb)) continue;
          const int j = grid.linear(nb);
          if (done[j]) best = std::min(best, grid.values[j]);
        }
      }
      if (std::isfinite(best)) {
        layer.emplace_back(static_cast<int>(i), best + grid.cell_size);
      }
    }
    for (const auto& [idx, value] : layer) {
      grid.values[idx] = value;
      done[idx] = 1;
      progressed = true;
    }
  }
  // Isolated cells with no valid neighbors anywhere (fully masked grids):
  // give them a large finite value so downstream interpolation stays finite.
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    if (!done[i]) grid.values[i] = grid.cell_count() * grid.cell_size;
  }
}

}  // namespace geoplan
