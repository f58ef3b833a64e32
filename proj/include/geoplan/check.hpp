#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geoplan/grid.hpp"

namespace geoplan {

/// Grid shortest-path distances from `source` over the free cells, using the
/// radius-2 neighborhood (16 moves in 2D, 98 in 3D) with supercover
/// visibility checks so moves cannot cut obstacle corners. Unreachable cells
/// get the sentinel. Serves as the independent oracle for the heat-method
/// distances.
ScalarGrid dijkstra_distance(const ScalarGrid& grid, const Vec& source);

/// Unit square populated by three circular obstacles; the scene used for the
/// diffusion snapshots and the geodesic oracle checks.
Workspace three_circle_demo_workspace();

/// Source point used with the three-circle scene.
Vec three_circle_demo_source();

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  std::string detail;
};

/// Named diagnostic suites runnable from the command line; each returns one
/// result per individual check.
struct CheckOptions {
  unsigned seed = 0;
  /// Test hook: corrupts the analytic SDF gradient so the failure path of
  /// the gradient checks can be exercised.
  bool corrupt_sdf_gradient = false;
};

std::vector<CheckResult> run_gradient_checks(const CheckOptions& options);
std::vector<CheckResult> run_geodesic_checks(const CheckOptions& options);
std::vector<CheckResult> run_solver_checks(const CheckOptions& options);

/// Runs the suites whose name contains `filter` (all when empty).
std::vector<CheckResult> run_checks(const std::string& filter,
                                    const CheckOptions& options);

}  // namespace geoplan
