#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

namespace geoplan {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Default clamp on the eigenvalues of box-distance hessians (1/m).
inline constexpr double kDefaultHessianClamp = 20.0;

/// Default softmin temperature for clearance aggregation (1/m).
inline constexpr double kDefaultSoftminBeta = 100.0;

/// Oriented box. `rotation` maps box frame to world frame.
struct BoxObstacle {
  Vec center;
  Vec half_extents;
  Mat rotation;

  BoxObstacle() = default;
  BoxObstacle(const Vec& c, const Vec& h, const Mat& r);

  int dimension() const { return static_cast<int>(center.size()); }

  /// Axis-aligned or yawed planar box.
  static BoxObstacle planar(double cx, double cy, double hx, double hy,
                            double angle = 0.0);
  /// Spatial box oriented by intrinsic Z-Y-X Euler angles.
  static BoxObstacle spatial(const Eigen::Vector3d& center,
                             const Eigen::Vector3d& half_extents,
                             double roll = 0.0, double pitch = 0.0,
                             double yaw = 0.0);
};

/// Sphere/circle obstacle, used by tests and the diffusion figures.
struct SphereObstacle {
  Vec center;
  double radius = 0.0;

  SphereObstacle() = default;
  SphereObstacle(const Vec& c, double r);
  int dimension() const { return static_cast<int>(center.size()); }
};

using Obstacle = std::variant<BoxObstacle, SphereObstacle>;

struct Aabb {
  Vec min;
  Vec max;

  bool contains(const Vec& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  Vec extents() const { return max - min; }
  Vec center() const { return 0.5 * (min + max); }
};

/// Signed distance sample: value (m, negative inside), unit gradient and a
/// clamped hessian.
struct SdfSample {
  double value = 0.0;
  Vec gradient;
  Mat hessian;
};

/// Workspace = axis-aligned bounds populated by obstacles. The freespace is
/// the interior of `bounds` minus the obstacle union; the bounds walls act as
/// an additional obstacle surface.
struct Workspace {
  Aabb bounds;
  std::vector<Obstacle> obstacles;
  int dimension = 2;
  double hessian_clamp = kDefaultHessianClamp;

  Workspace() = default;
  Workspace(const Aabb& b, std::vector<Obstacle> obs, int dim);

  std::size_t num_obstacles() const { return obstacles.size(); }
};

/// Exact signed distance to an oriented box, with unit gradient and an
/// eigenvalue-clamped hessian (the exact hessian has eigenvalue 1/d near
/// edges and corners, which blows up at the surface).
SdfSample sdf_box(const Vec& p, const BoxObstacle& box,
                  double hessian_clamp = kDefaultHessianClamp);

SdfSample sdf_sphere(const Vec& p, const SphereObstacle& sphere,
                     double hessian_clamp = kDefaultHessianClamp);

SdfSample sdf_obstacle(const Vec& p, const Obstacle& obstacle,
                       double hessian_clamp = kDefaultHessianClamp);

/// Signed distance to the interior of an axis-aligned box: positive inside,
/// negative outside (the bounds act as walls).
SdfSample sdf_bounds_interior(const Vec& p, const Aabb& bounds,
                              double hessian_clamp = kDefaultHessianClamp);

/// Hard min over the per-obstacle SDFs and the bounds-interior SDF.
/// Gradient and hessian come from the minimizing component; ties go to
/// the first-listed obstacle (the bounds are considered last).
SdfSample sdf_workspace(const Vec& p, const Workspace& ws);

struct SoftminResult {
  double value = 0.0;
  /// Convex-combination weights, the chain-rule coefficients of the softmin.
  std::vector<double> weights;
};

/// softmin(v; beta) = -(1/beta) log sum_i exp(-beta v_i), computed with a
/// max-shift. Underestimates min(v) by at most log(n)/beta.
SoftminResult softmin(const std::vector<double>& values, double beta);

}  // namespace geoplan
