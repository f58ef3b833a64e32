#include "geoplan/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace geoplan {

namespace {

Eigen::Matrix3d rot_x(double a, int deriv) {
  const double c = std::cos(a), s = std::sin(a);
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  switch (deriv) {
    case 0:
      m << 1, 0, 0, 0, c, -s, 0, s, c;
      break;
    case 1:
      m << 0, 0, 0, 0, -s, -c, 0, c, -s;
      break;
    default:
      m << 0, 0, 0, 0, -c, s, 0, -s, -c;
      break;
  }
  return m;
}

Eigen::Matrix3d rot_y(double b, int deriv) {
  const double c = std::cos(b), s = std::sin(b);
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  switch (deriv) {
    case 0:
      m << c, 0, s, 0, 1, 0, -s, 0, c;
      break;
    case 1:
      m << -s, 0, c, 0, 0, 0, -c, 0, -s;
      break;
    default:
      m << -c, 0, -s, 0, 0, 0, s, 0, -c;
      break;
  }
  return m;
}

Eigen::Matrix3d rot_z(double c, int deriv) {
  const double cc = std::cos(c), sc = std::sin(c);
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  switch (deriv) {
    case 0:
      m << cc, -sc, 0, sc, cc, 0, 0, 0, 1;
      break;
    case 1:
      m << -sc, -cc, 0, cc, -sc, 0, 0, 0, 0;
      break;
    default:
      m << -cc, sc, 0, -sc, -cc, 0, 0, 0, 0;
      break;
  }
  return m;
}

/// d^i d^j R for the Z-Y-X chart, with (i, j) derivative orders per angle
/// (roll, pitch, yaw).
Eigen::Matrix3d rot_zyx(const Eigen::Vector3d& rpy, int d_roll, int d_pitch,
                        int d_yaw) {
  return rot_z(rpy[2], d_yaw) * rot_y(rpy[1], d_pitch) * rot_x(rpy[0], d_roll);
}

void check_config(const FreeFlyerRobot& robot, const Configuration& q) {
  if (q.size() != robot.dof()) {
    throw std::invalid_argument("configuration length does not match robot");
  }
}

}  // namespace

void FreeFlyerRobot::validate() const {
  if (dimension != 2 && dimension != 3) {
    throw std::invalid_argument("robot dimension must be 2 or 3");
  }
  if (keypoints.empty()) {
    throw std::invalid_argument("robot needs at least one keypoint");
  }
  for (const auto& kp : keypoints) {
    if (kp.local_offset.size() != dimension) {
      throw std::invalid_argument("keypoint offset dimension mismatch");
    }
    if (kp.radius <= 0.0) {
      throw std::invalid_argument("keypoint radius must be positive");
    }
  }
  if (end_effector_index < 0 || end_effector_index >= num_keypoints()) {
    throw std::invalid_argument("end_effector_index out of range");
  }
}

double FreeFlyerRobot::body_radius() const {
  double r = 0.0;
  for (const auto& kp : keypoints) {
    r = std::max(r, kp.local_offset.norm() + kp.radius);
  }
  return r;
}

Mat rotation_matrix(int dimension, const Configuration& q) {
  if (dimension == 2) {
    const double c = std::cos(q[2]), s = std::sin(q[2]);
    Mat r(2, 2);
    r << c, -s, s, c;
    return r;
  }
  return rot_zyx(q.segment<3>(3), 0, 0, 0);
}

std::vector<Vec> forward_kinematics(const FreeFlyerRobot& robot,
                                    const Configuration& q) {
  check_config(robot, q);
  const Mat r = rotation_matrix(robot.dimension, q);
  const Vec t = q.head(robot.dimension);
  std::vector<Vec> points;
  points.reserve(robot.keypoints.size());
  for (const auto& kp : robot.keypoints) {
    points.push_back(t + r * kp.local_offset);
  }
  return points;
}

Vec keypoint_position(const FreeFlyerRobot& robot, const Configuration& q,
                      int index) {
  check_config(robot, q);
  const Mat r = rotation_matrix(robot.dimension, q);
  return q.head(robot.dimension) + r * robot.keypoints.at(index).local_offset;
}

Mat keypoint_jacobian(const FreeFlyerRobot& robot, const Configuration& q,
                      int index) {
  check_config(robot, q);
  const int dim = robot.dimension;
  const Vec& offset = robot.keypoints.at(index).local_offset;
  Mat jac = Mat::Zero(dim, robot.dof());
  jac.topLeftCorner(dim, dim).setIdentity();
  if (dim == 2) {
    const double c = std::cos(q[2]), s = std::sin(q[2]);
    Mat dr(2, 2);
    dr << -s, -c, c, -s;
    jac.col(2) = dr * offset;
  } else {
    const Eigen::Vector3d rpy = q.segment<3>(3);
    jac.col(3) = rot_zyx(rpy, 1, 0, 0) * offset;
    jac.col(4) = rot_zyx(rpy, 0, 1, 0) * offset;
    jac.col(5) = rot_zyx(rpy, 0, 0, 1) * offset;
  }
  return jac;
}

Mat keypoint_jacobian_dot(const FreeFlyerRobot& robot, const Configuration& q,
                          int index, const Vec& v) {
  check_config(robot, q);
  const int dim = robot.dimension;
  const Vec& offset = robot.keypoints.at(index).local_offset;
  Mat m = Mat::Zero(dim, robot.dof());
  if (dim == 2) {
    const double c = std::cos(q[2]), s = std::sin(q[2]);
    Mat d2r(2, 2);
    d2r << -c, s, -s, -c;
    m.col(2) = d2r * offset * v[2];
  } else {
    const Eigen::Vector3d rpy = q.segment<3>(3);
    // Angle-angle block: M(:, j) = sum_k d2R/(dth_j dth_k) * offset * v[3+k].
    Eigen::Matrix3d d2[3][3];
    d2[0][0] = rot_zyx(rpy, 2, 0, 0);
    d2[0][1] = d2[1][0] = rot_zyx(rpy, 1, 1, 0);
    d2[0][2] = d2[2][0] = rot_zyx(rpy, 1, 0, 1);
    d2[1][1] = rot_zyx(rpy, 0, 2, 0);
    d2[1][2] = d2[2][1] = rot_zyx(rpy, 0, 1, 1);
    d2[2][2] = rot_zyx(rpy, 0, 0, 2);
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d col = Eigen::Vector3d::Zero();
      for (int k = 0; k < 3; ++k) {
        col += d2[j][k] * offset * v[3 + k];
      }
      m.col(3 + j) = col;
    }
  }
  return m;
}

}  // namespace geoplan
