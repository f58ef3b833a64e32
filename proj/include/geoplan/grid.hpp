#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <vector>

#include "geoplan/geometry.hpp"

namespace geoplan {

using GridCoord = Eigen::Vector3i;

/// Sentinel stored in masked (obstacle) cells.
inline constexpr double kGridSentinel = std::numeric_limits<double>::infinity();

/// Regular 2D/3D grid of scalar values with an occupancy mask. For planar
/// grids the third axis has extent 1. Cell values live at cell centers.
struct ScalarGrid {
  int dimension = 2;
  Vec origin;            // world position of the min corner of the grid
  double cell_size = 0;  // uniform along all axes
  GridCoord shape = GridCoord::Ones();
  std::vector<double> values;
  std::vector<std::uint8_t> free_mask;  // 1 = freespace
  /// Optional: 1 = connected to the source used to compute `values`.
  /// Empty means "all free cells reachable".
  std::vector<std::uint8_t> reachable;

  static ScalarGrid make(int dimension, const Vec& origin, double cell_size,
                         const GridCoord& shape);

  std::size_t cell_count() const {
    return static_cast<std::size_t>(shape[0]) * shape[1] * shape[2];
  }
  int linear(const GridCoord& c) const {
    return (c[2] * shape[1] + c[1]) * shape[0] + c[0];
  }
  GridCoord unlinear(int idx) const {
    GridCoord c;
    c[0] = idx % shape[0];
    c[1] = (idx / shape[0]) % shape[1];
    c[2] = idx / (shape[0] * shape[1]);
    return c;
  }
  bool in_grid(const GridCoord& c) const {
    for (int a = 0; a < 3; ++a) {
      if (c[a] < 0 || c[a] >= shape[a]) return false;
    }
    return true;
  }
  bool is_free(const GridCoord& c) const { return free_mask[linear(c)] != 0; }
  bool is_reachable(int idx) const {
    return reachable.empty() ? free_mask[idx] != 0 : reachable[idx] != 0;
  }

  /// World position of the center of cell `c` (dimension-sized vector).
  Vec cell_center(const GridCoord& c) const;

  /// Cell containing world point `p`, clamped to the grid.
  GridCoord point_to_cell(const Vec& p) const;

  double& at(const GridCoord& c) { return values[linear(c)]; }
  double at(const GridCoord& c) const { return values[linear(c)]; }
};

/// Rasterizes the workspace onto a grid: a cell is free iff the workspace
/// SDF at its center is positive. `resolution` is the cell count along the
/// longest bounds axis.
ScalarGrid rasterize_workspace(const Workspace& ws, int resolution);

/// Flood fill over face-adjacent free cells; returns 1 for cells connected
/// to `seed`.
std::vector<std::uint8_t> connected_component(const ScalarGrid& grid,
                                              const GridCoord& seed);

/// Fills masked/invalid cells by layered dilation from valid ones: each
/// filled cell gets min(valid face-neighbor) + cell_size. Produces a field
/// that keeps growing into obstacles, which keeps interpolants well behaved
/// near the boundary.
void fill_masked_cells(ScalarGrid& grid, const std::vector<std::uint8_t>& valid);

}  // namespace geoplan
