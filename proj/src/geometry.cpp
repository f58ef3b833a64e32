#include "geoplan/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace geoplan {

namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

Eigen::Matrix3d euler_zyx(double roll, double pitch, double yaw) {
  return (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

}  // namespace

BoxObstacle::BoxObstacle(const Vec& c, const Vec& h, const Mat& r)
    : center(c), half_extents(h), rotation(r) {
  if ((half_extents.array() <= 0.0).any()) {
    throw std::invalid_argument("BoxObstacle: half_extents must be positive");
  }
  if (rotation.rows() != center.size() || rotation.cols() != center.size()) {
    throw std::invalid_argument("BoxObstacle: rotation dimension mismatch");
  }
}

BoxObstacle BoxObstacle::planar(double cx, double cy, double hx, double hy,
                                double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return BoxObstacle(Eigen::Vector2d(cx, cy), Eigen::Vector2d(hx, hy), r);
}

BoxObstacle BoxObstacle::spatial(const Eigen::Vector3d& center,
                                 const Eigen::Vector3d& half_extents,
                                 double roll, double pitch, double yaw) {
  return BoxObstacle(center, half_extents, euler_zyx(roll, pitch, yaw));
}

SphereObstacle::SphereObstacle(const Vec& c, double r) : center(c), radius(r) {
  if (radius <= 0.0) {
    throw std::invalid_argument("SphereObstacle: radius must be positive");
  }
}

Workspace::Workspace(const Aabb& b, std::vector<Obstacle> obs, int dim)
    : bounds(b), obstacles(std::move(obs)), dimension(dim) {
  if (dim != 2 && dim != 3) {
    throw std::invalid_argument("Workspace: dimension must be 2 or 3");
  }
  if (bounds.min.size() != dim || bounds.max.size() != dim ||
      (bounds.extents().array() <= 0.0).any()) {
    throw std::invalid_argument("Workspace: bounds empty or wrong dimension");
  }
}

SdfSample sdf_box(const Vec& p, const BoxObstacle& box, double hessian_clamp) {
  const int n = box.dimension();
  const Vec local = box.rotation.transpose() * (p - box.center);
  const Vec q = local.cwiseAbs() - box.half_extents;

  SdfSample out;
  Vec grad_local = Vec::Zero(n);
  Mat hess_local = Mat::Zero(n, n);

  if ((q.array() > 0.0).any()) {
    // Outside: distance to the nearest face/edge/corner.
    Vec v = Vec::Zero(n);
    int active = 0;
    for (int i = 0; i < n; ++i) {
      if (q[i] > 0.0) {
        v[i] = q[i] * sign_of(local[i]);
        ++active;
      }
    }
    const double dist = v.norm();
    out.value = dist;
    grad_local = v / dist;
    if (active > 1) {
      // Exact hessian is (I_A - g g^T)/dist on the active subspace; its
      // nonzero eigenvalue 1/dist is clamped.
      const double k = std::min(1.0 / dist, hessian_clamp);
      for (int i = 0; i < n; ++i) {
        if (q[i] > 0.0) hess_local(i, i) = k;
      }
      hess_local -= k * grad_local * grad_local.transpose();
    }
  } else {
    // Inside (or on the surface): distance to the nearest face.
    int k = 0;
    for (int i = 1; i < n; ++i) {
      if (q[i] > q[k]) k = i;
    }
    out.value = q[k];
    grad_local[k] = sign_of(local[k]);
  }

  out.gradient = box.rotation * grad_local;
  out.hessian = box.rotation * hess_local * box.rotation.transpose();
  return out;
}

SdfSample sdf_sphere(const Vec& p, const SphereObstacle& sphere,
                     double hessian_clamp) {
  const int n = sphere.dimension();
  const Vec d = p - sphere.center;
  const double dist = d.norm();
  SdfSample out;
  out.value = dist - sphere.radius;
  if (dist > 1e-12) {
    out.gradient = d / dist;
    const double k = std::min(1.0 / dist, hessian_clamp);
    out.hessian =
        k * (Mat::Identity(n, n) - out.gradient * out.gradient.transpose());
  } else {
    out.gradient = Vec::Unit(n, 0);
    out.hessian = Mat::Zero(n, n);
  }
  return out;
}

SdfSample sdf_obstacle(const Vec& p, const Obstacle& obstacle,
                       double hessian_clamp) {
  return std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, BoxObstacle>) {
          return sdf_box(p, o, hessian_clamp);
        } else {
          return sdf_sphere(p, o, hessian_clamp);
        }
      },
      obstacle);
}

SdfSample sdf_bounds_interior(const Vec& p, const Aabb& bounds,
                              double hessian_clamp) {
  const int n = static_cast<int>(p.size());
  BoxObstacle box(bounds.center(), 0.5 * bounds.extents(), Mat::Identity(n, n));
  SdfSample s = sdf_box(p, box, hessian_clamp);
  s.value = -s.value;
  s.gradient = -s.gradient;
  s.hessian = -s.hessian;
  return s;
}

SdfSample sdf_workspace(const Vec& p, const Workspace& ws) {
  SdfSample best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& obstacle : ws.obstacles) {
    SdfSample s = sdf_obstacle(p, obstacle, ws.hessian_clamp);
    if (s.value < best.value) best = std::move(s);
  }
  SdfSample walls = sdf_bounds_interior(p, ws.bounds, ws.hessian_clamp);
  if (walls.value < best.value) best = std::move(walls);
  return best;
}

SoftminResult softmin(const std::vector<double>& values, double beta) {
  if (values.empty()) {
    throw std::invalid_argument("softmin: empty value list");
  }
  if (beta <= 0.0) {
    throw std::invalid_argument("softmin: beta must be positive");
  }
  double m = values[0];
  for (double v : values) m = std::min(m, v);

  SoftminResult out;
  out.weights.resize(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.weights[i] = std::exp(-beta * (values[i] - m));
    sum += out.weights[i];
  }
  for (double& w : out.weights) w /= sum;
  out.value = m - std::log(sum) / beta;
  return out;
}

}  // namespace geoplan
