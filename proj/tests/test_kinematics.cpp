#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geoplan/kinematics.hpp"
#include "test_util.hpp"

using namespace geoplan;
using namespace geoplan::testutil;

namespace {

FreeFlyerRobot planar_robot() {
  FreeFlyerRobot robot;
  robot.dimension = 2;
  robot.keypoints = {{Eigen::Vector2d(0, 0), 0.05},
                     {Eigen::Vector2d(1, 0), 0.05},
                     {Eigen::Vector2d(0.3, 0.2), 0.05}};
  robot.end_effector_index = 1;
  return robot;
}

FreeFlyerRobot spatial_robot() {
  FreeFlyerRobot robot;
  robot.dimension = 3;
  robot.keypoints = {{Eigen::Vector3d(0, 0, 0), 0.05},
                     {Eigen::Vector3d(0.1, 0, 0), 0.05},
                     {Eigen::Vector3d(0.2, 0.1, -0.1), 0.05},
                     {Eigen::Vector3d(-0.1, 0.25, 0.05), 0.05}};
  robot.end_effector_index = 1;
  return robot;
}

Configuration random_config(std::mt19937& rng, int dof) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  Configuration q(dof);
  for (int i = 0; i < dof; ++i) q[i] = dist(rng);
  return q;
}

}  // namespace

TEST_CASE("zero configuration reproduces the local offsets") {
  for (const auto& robot : {planar_robot(), spatial_robot()}) {
    const Configuration q = Configuration::Zero(robot.dof());
    const auto points = forward_kinematics(robot, q);
    for (int i = 0; i < robot.num_keypoints(); ++i) {
      CHECK(points[i].isApprox(robot.keypoints[i].local_offset, 1e-15));
    }
  }
}

TEST_CASE("planar quarter turn") {
  const FreeFlyerRobot robot = planar_robot();
  Configuration q(3);
  q << 0, 0, std::numbers::pi / 2;
  const Vec p = keypoint_position(robot, q, 1);
  CHECK(std::abs(p[0] - 0.0) < 1e-12);
  CHECK(std::abs(p[1] - 1.0) < 1e-12);
}

TEST_CASE("spatial pure translation") {
  const FreeFlyerRobot robot = spatial_robot();
  Configuration q(6);
  q << 1, 2, 3, 0, 0, 0;
  const Vec p = keypoint_position(robot, q, 1);
  CHECK(p.isApprox(Eigen::Vector3d(1.1, 2, 3), 1e-15));
}

TEST_CASE("keypoint at the body origin has zero rotation block") {
  const FreeFlyerRobot robot = spatial_robot();
  std::mt19937 rng(3);
  const Configuration q = random_config(rng, 6);
  const Mat jac = keypoint_jacobian(robot, q, 0);
  CHECK(jac.leftCols(3).isApprox(Mat::Identity(3, 3), 1e-15));
  CHECK(jac.rightCols(3).norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("jacobian matches finite differences at 200 random samples") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const bool planar = trial % 2 == 0;
    const FreeFlyerRobot robot = planar ? planar_robot() : spatial_robot();
    const Configuration q = random_config(rng, robot.dof());
    const int index = trial % robot.num_keypoints();
    const Mat jac = keypoint_jacobian(robot, q, index);
    const Mat fd = fd_jacobian(
        [&](const Vec& x) { return keypoint_position(robot, x, index); }, q);
    CHECK((jac - fd).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("jacobian stays finite and accurate at the gimbal-lock chart point") {
  const FreeFlyerRobot robot = spatial_robot();
  Configuration q(6);
  q << 0.3, -0.2, 0.5, 0.4, std::numbers::pi / 2, -0.7;
  for (int i = 0; i < robot.num_keypoints(); ++i) {
    const Mat jac = keypoint_jacobian(robot, q, i);
    CHECK(jac.allFinite());
    const Mat fd = fd_jacobian(
        [&](const Vec& x) { return keypoint_position(robot, x, i); }, q);
    CHECK((jac - fd).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("rigid body preserves pairwise keypoint distances") {
  std::mt19937 rng(9);
  for (const auto& robot : {planar_robot(), spatial_robot()}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Configuration q = random_config(rng, robot.dof());
      const auto points = forward_kinematics(robot, q);
      for (int i = 0; i < robot.num_keypoints(); ++i) {
        for (int j = i + 1; j < robot.num_keypoints(); ++j) {
          const double expected = (robot.keypoints[i].local_offset -
                                   robot.keypoints[j].local_offset)
                                      .norm();
          CHECK(std::abs((points[i] - points[j]).norm() - expected) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("rotation matrices are special orthogonal") {
  std::mt19937 rng(15);
  for (int dim : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Configuration q = random_config(rng, dim == 2 ? 3 : 6);
      const Mat r = rotation_matrix(dim, q);
      CHECK((r.transpose() * r - Mat::Identity(dim, dim)).norm() < 1e-12);
      CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("jacobian translation columns are the identity for every keypoint") {
  std::mt19937 rng(21);
  for (const auto& robot : {planar_robot(), spatial_robot()}) {
    const Configuration q = random_config(rng, robot.dof());
    const int dim = robot.dimension;
    for (int i = 0; i < robot.num_keypoints(); ++i) {
      const Mat jac = keypoint_jacobian(robot, q, i);
      CHECK(jac.leftCols(dim).isApprox(Mat::Identity(dim, dim), 1e-15));
    }
  }
}

TEST_CASE("jacobian directional derivative matches finite differences") {
  std::mt19937 rng(27);
  for (int trial = 0; trial < 100; ++trial) {
    const FreeFlyerRobot robot = trial % 2 ? spatial_robot() : planar_robot();
    const Configuration q = random_config(rng, robot.dof());
    const Vec v = random_config(rng, robot.dof());
    const int index = trial % robot.num_keypoints();
    const Mat m = keypoint_jacobian_dot(robot, q, index, v);
    const Mat fd = fd_jacobian(
        [&](const Vec& x) -> Vec { return keypoint_jacobian(robot, x, index) * v; },
        q);
    CHECK((m - fd).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("dimension mismatch raises") {
  const FreeFlyerRobot robot = planar_robot();
  CHECK_THROWS_AS(forward_kinematics(robot, Configuration::Zero(6)),
                  std::invalid_argument);
}
