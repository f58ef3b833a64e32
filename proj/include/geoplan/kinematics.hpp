#pragma once

#include <Eigen/Dense>
#include <vector>

#include "geoplan/geometry.hpp"

namespace geoplan {

/// A configuration is (x, y, theta) for planar robots and
/// (x, y, z, roll, pitch, yaw) for spatial ones. Angles are the intrinsic
/// Z-Y-X Euler chart and are left unnormalized.
using Configuration = Vec;

struct Keypoint {
  Vec local_offset;
  double radius = 0.0;
};

/// Free-flying rigid body represented by spherical keypoints.
struct FreeFlyerRobot {
  int dimension = 2;
  std::vector<Keypoint> keypoints;
  int end_effector_index = 0;

  int dof() const { return dimension == 2 ? 3 : 6; }
  int num_keypoints() const { return static_cast<int>(keypoints.size()); }
  void validate() const;
  /// Largest distance from the body origin to a keypoint surface.
  double body_radius() const;
};

/// Rotation matrix of the configuration (SO(2) or SO(3), Z-Y-X Euler).
Mat rotation_matrix(int dimension, const Configuration& q);

/// World positions of all keypoints.
std::vector<Vec> forward_kinematics(const FreeFlyerRobot& robot,
                                    const Configuration& q);

Vec keypoint_position(const FreeFlyerRobot& robot, const Configuration& q,
                      int index);

/// Analytic dim x dof Jacobian of keypoint `index`; translation block is the
/// identity, rotation block is d(R * offset)/d(angles).
Mat keypoint_jacobian(const FreeFlyerRobot& robot, const Configuration& q,
                      int index);

/// Directional second derivative: returns the dim x dof matrix
///   M = sum_c d(J_i)/d(q_c) * v_c,
/// i.e. the derivative of (J_i(q) * v) with respect to q for fixed v.
/// Needed by trajectory terms whose residuals contain keypoint velocities.
Mat keypoint_jacobian_dot(const FreeFlyerRobot& robot, const Configuration& q,
                          int index, const Vec& v);

}  // namespace geoplan
