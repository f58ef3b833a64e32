#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>

namespace geoplan::testutil {

/// Central finite-difference gradient of a scalar function.
inline Eigen::VectorXd fd_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h = 1e-6) {
  Eigen::VectorXd g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2 * h);
  }
  return g;
}

/// Central finite-difference Jacobian of a vector function.
inline Eigen::MatrixXd fd_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h = 1e-6) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    jac.col(i) = (f(xp) - f(xm)) / (2 * h);
  }
  return jac;
}

inline double rel_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(1.0, std::max(a.norm(), b.norm()));
  return (a - b).norm() / scale;
}

/// Deterministic uniform sample in [lo, hi]^dim.
inline Eigen::VectorXd random_point(std::mt19937& rng, int dim, double lo,
                                    double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd p(dim);
  for (int i = 0; i < dim; ++i) p[i] = dist(rng);
  return p;
}

}  // namespace geoplan::testutil
