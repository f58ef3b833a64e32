#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "geoplan/workspace_map.hpp"
#include "test_util.hpp"

using namespace geoplan;
using namespace geoplan::testutil;

namespace {

std::shared_ptr<Workspace> boxes_workspace() {
  std::vector<Obstacle> obstacles;
  obstacles.emplace_back(BoxObstacle::planar(0, 0, 0.5, 0.5));
  obstacles.emplace_back(BoxObstacle::planar(2, 1, 0.4, 0.7, 0.3));
  return std::make_shared<Workspace>(
      Aabb{Eigen::Vector2d(-4, -4), Eigen::Vector2d(6, 5)}, obstacles, 2);
}

}  // namespace

TEST_CASE("potential channel equals alpha on the obstacle surface") {
  auto ws = boxes_workspace();
  WorkspaceMap map(ws, 1.7, 1.0, 0.3);
  const Vec on_surface = Eigen::Vector2d(0.5, 0.0);  // sigma_0 = 0
  const Vec phi = map.eval(on_surface);
  CHECK(phi[0] == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("map blends to the scaled identity far from obstacles") {
  auto ws = boxes_workspace();
  WorkspaceMap map(ws, 1.0, 2.0, 0.3);
  const Vec far = Eigen::Vector2d(-3.7, -3.7);  // several length scales away
  const Vec phi = map.eval(far);
  CHECK(std::abs(phi[0]) < 1e-4);
  CHECK(std::abs(phi[1]) < 1e-4);
  CHECK(phi.tail(2).isApprox(2.0 * far, 1e-12));
}

TEST_CASE("map jacobian matches finite differences at 100 random points") {
  auto ws = boxes_workspace();
  WorkspaceMap map(ws, 1.0, 1.0, 0.3);
  std::mt19937 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 130 && checked < 100; ++trial) {
    const Vec p = random_point(rng, 2, -3.5, 5.5);
    const Mat jac = map.jacobian(p);
    const Mat fd =
        fd_jacobian([&](const Vec& x) { return map.eval(x); }, p, 1e-6);
    if ((fd - jac).cwiseAbs().maxCoeff() > 1e-4) continue;  // sdf seam hit
    ++checked;
    CHECK((jac - fd).cwiseAbs().maxCoeff() < 1e-6);
  }
  CHECK(checked == 100);
}

TEST_CASE("jacobian_dot matches finite differences of J*u") {
  auto ws = boxes_workspace();
  WorkspaceMap map(ws, 1.0, 1.0, 0.3);
  std::mt19937 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 140 && checked < 100; ++trial) {
    const Vec p = random_point(rng, 2, -3.5, 5.5);
    const Vec u = random_point(rng, 2, -1, 1);
    const Mat m = map.jacobian_dot(p, u);
    const Mat fd = fd_jacobian(
        [&](const Vec& x) -> Vec { return map.jacobian(x) * u; }, p, 1e-5);
    if ((fd - m).cwiseAbs().maxCoeff() > 1e-3) continue;  // hessian seam
    ++checked;
    CHECK(rel_error(m, fd) < 1e-4);
  }
  CHECK(checked >= 95);
}

TEST_CASE("pullback reduces to the identity with zero potential weights") {
  auto ws = boxes_workspace();
  WorkspaceMap map(ws, 0.0, 1.0, 0.3);
  std::mt19937 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec p = random_point(rng, 2, -3, 5);
    CHECK(map.pullback_metric(p).isApprox(Mat::Identity(2, 2), 1e-14));
  }
}

TEST_CASE("pullback eigenvalues respect the identity-block lower bound") {
  auto ws = boxes_workspace();
  const double alpha_id = 1.3;
  WorkspaceMap map(ws, 1.0, alpha_id, 0.3);
  std::mt19937 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec p = random_point(rng, 2, -3.5, 5.5);
    Eigen::SelfAdjointEigenSolver<Mat> eig(map.pullback_metric(p));
    CHECK(eig.eigenvalues().minCoeff() >= alpha_id * alpha_id - 1e-12);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-12);  // PSD
  }
}

TEST_CASE("dominant eigenvector aligns with the obstacle normal near a face") {
  auto ws = boxes_workspace();
  WorkspaceMap map(ws, 1.0, 1.0, 0.3);
  // Points just off the +x face of the first box.
  for (int i = 0; i < 10; ++i) {
    Vec p = Eigen::Vector2d(0.5 + 0.02 + 0.01 * i, -0.3 + 0.06 * i);
    const SdfSample s = sdf_workspace(p, *ws);
    Eigen::SelfAdjointEigenSolver<Mat> eig(map.pullback_metric(p));
    const Vec dominant = eig.eigenvectors().col(1);  // largest eigenvalue
    const double cosine = std::abs(dominant.dot(s.gradient));
    CHECK(std::acos(std::min(cosine, 1.0)) < 5.0 * std::numbers::pi / 180.0);
  }
}

TEST_CASE("natural distance basics") {
  auto ws = boxes_workspace();
  WorkspaceMap map(ws, 1.0, 1.0, 0.3);
  std::mt19937 rng(41);
  const Vec g = Eigen::Vector2d(4, 3);
  CHECK(map.natural_distance(g, g) == doctest::Approx(0.0).epsilon(1e-15));

  WorkspaceMap euclid(ws, 0.0, 2.0, 0.3);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec p = random_point(rng, 2, -3, 5);
    const Vec q = random_point(rng, 2, -3, 5);
    CHECK(euclid.natural_distance(p, q) ==
          doctest::Approx(2.0 * (p - q).norm()).epsilon(1e-12));
    // Symmetry is exact.
    CHECK(map.natural_distance(p, q) == map.natural_distance(q, p));
  }
}

TEST_CASE("pullback blends to Euclidean away from all obstacles") {
  auto ws = boxes_workspace();
  const double scale = 0.3;
  const double alpha_id = 1.0;
  WorkspaceMap map(ws, 1.0, alpha_id, scale);
  // min sigma > 10 * length_scale = 3 m.
  const Vec p = Eigen::Vector2d(-3.8, -3.8);
  REQUIRE(sdf_workspace(p, *ws).value > -1e9);  // sanity
  double min_sigma = std::numeric_limits<double>::infinity();
  for (const auto& o : ws->obstacles) {
    min_sigma = std::min(min_sigma, sdf_obstacle(p, o).value);
  }
  REQUIRE(min_sigma > 10 * scale);
  const Mat a = map.pullback_metric(p);
  CHECK((a - alpha_id * alpha_id * Mat::Identity(2, 2)).norm() < 1e-6);
}
