#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geoplan/grid.hpp"
#include "geoplan/spline.hpp"

namespace geoplan {

struct HeatParams {
  enum class Mode { kClosedForm, kIterativeSweeps };

  /// Diffusion time as a multiple of cell_size^2.
  double time_step = 1.0;
  Mode mode = Mode::kClosedForm;
  /// Max Gauss-Seidel sweeps in iterative mode (stops early once the
  /// residual is at rounding level).
  int sweep_count = 20000;
  /// Relative residual for the sparse linear solves.
  double solver_tolerance = 1e-12;
};

/// One implicit heat step (I - t L) u = delta_source over the free cells of
/// `ws_grid`, with links into masked cells removed (zero-Neumann walls).
/// In iterative mode, runs Gauss-Seidel sweeps of the steady-state (Laplace)
/// equation with the source cell held at u = 1; converged sweeps make u
/// harmonic away from the source.
/// Free cells not connected to the source are flagged unreachable.
ScalarGrid diffuse_heat(const ScalarGrid& ws_grid, const Vec& source,
                        const HeatParams& params = {});

/// Explicit-Euler diffusion snapshots with the source set only at t = 0;
/// returns one grid per entry of `steps` (cumulative step counts).
std::vector<ScalarGrid> transient_heat_frames(const ScalarGrid& ws_grid,
                                              const Vec& source,
                                              const std::vector<int>& steps);

/// Heat-method distance: normalizes the negated heat gradient and solves the
/// Poisson system L d = div(X) over free cells, pinned so that d = 0 at the
/// source cell (taken as the argmax of u) and clamped below at zero.
ScalarGrid geodesic_distance(const ScalarGrid& heat,
                             double solver_tolerance = 1e-12);

/// Geodesic distance-to-goal field with a smooth spline interpolant of the
/// distance grid. The flow is the normalized negative spline gradient;
/// within blend_radius of the goal both distance and flow are linearly
/// blended with the Euclidean attractor, which removes the noisy sink.
class GeodesicField {
 public:
  struct Sample {
    double distance = 0.0;
    Vec flow;          // unit vector pointing toward the goal
    Mat flow_jacobian; // d(flow)/d(p)
    bool clamped = false;
  };

  GeodesicField() = default;
  GeodesicField(ScalarGrid distance_grid, Vec source, double blend_radius);

  const ScalarGrid& distance_grid() const { return distance_; }
  const Vec& source() const { return source_; }
  double blend_radius() const { return blend_radius_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  double distance(const Vec& p) const;
  Vec flow(const Vec& p) const;
  /// Full query: interpolated distance, unit flow and its Jacobian.
  Sample query(const Vec& p, bool with_jacobian = true) const;

 private:
  ScalarGrid distance_;
  CubicSplineField spline_;
  Vec source_;
  double blend_radius_ = 0.0;
  std::vector<std::string> warnings_;
};

struct FieldBuildParams {
  int resolution = 64;          // cells along the longest bounds axis
  double blend_radius_cells = 3.0;
  HeatParams heat;
};

/// Rasterizes the workspace, runs the heat pipeline with the goal as source
/// and wraps the result in a GeodesicField. Throws if the goal is not in
/// freespace. Passages at the resolution limit are recorded as warnings.
GeodesicField build_geodesic_field(const Workspace& ws, const Vec& goal,
                                   const FieldBuildParams& params = {});

/// Binary grid cache (little-endian doubles with a small header).
void save_grid(const ScalarGrid& grid, const std::string& path);
std::optional<ScalarGrid> load_grid(const std::string& path);

/// FNV-1a content hash of a workspace + goal + resolution, used as the
/// cache key.
std::uint64_t field_cache_key(const Workspace& ws, const Vec& goal,
                              int resolution);

}  // namespace geoplan
