#include "geoplan/workspace_map.hpp"

#include <cmath>
#include <stdexcept>

namespace geoplan {

WorkspaceMap::WorkspaceMap(std::shared_ptr<const Workspace> workspace,
                           double alpha_potential, double alpha_identity,
                           double length_scale)
    : workspace_(std::move(workspace)), length_scale_(length_scale) {
  const int d = num_potentials();
  alphas_ = Vec::Constant(d + 1, alpha_potential);
  alphas_[d] = alpha_identity;
  if (length_scale_ <= 0.0) {
    throw std::invalid_argument("WorkspaceMap: length scale must be positive");
  }
  if ((alphas_.array() < 0.0).any()) {
    throw std::invalid_argument("WorkspaceMap: alphas must be nonnegative");
  }
}

WorkspaceMap::WorkspaceMap(std::shared_ptr<const Workspace> workspace,
                           Vec alphas, double length_scale)
    : workspace_(std::move(workspace)),
      alphas_(std::move(alphas)),
      length_scale_(length_scale) {
  if (alphas_.size() != num_potentials() + 1) {
    throw std::invalid_argument("WorkspaceMap: need one alpha per obstacle plus one");
  }
  if (length_scale_ <= 0.0) {
    throw std::invalid_argument("WorkspaceMap: length scale must be positive");
  }
}

Vec WorkspaceMap::eval(const Vec& p) const {
  const int d = num_potentials();
  const int dim = domain_dimension();
  Vec out(d + dim);
  for (int i = 0; i < d; ++i) {
    const SdfSample s =
        sdf_obstacle(p, workspace_->obstacles[i], workspace_->hessian_clamp);
    out[i] = alphas_[i] * std::exp(-s.value / length_scale_);
  }
  out.tail(dim) = alphas_[d] * p;
  return out;
}

Mat WorkspaceMap::jacobian(const Vec& p) const {
  const int d = num_potentials();
  const int dim = domain_dimension();
  Mat jac = Mat::Zero(d + dim, dim);
  for (int i = 0; i < d; ++i) {
    const SdfSample s =
        sdf_obstacle(p, workspace_->obstacles[i], workspace_->hessian_clamp);
    const double a = alphas_[i] * std::exp(-s.value / length_scale_);
    jac.row(i) = (-a / length_scale_) * s.gradient.transpose();
  }
  jac.bottomRows(dim) = alphas_[d] * Mat::Identity(dim, dim);
  return jac;
}

Mat WorkspaceMap::jacobian_dot(const Vec& p, const Vec& u) const {
  const int d = num_potentials();
  const int dim = domain_dimension();
  Mat out = Mat::Zero(d + dim, dim);
  for (int i = 0; i < d; ++i) {
    const SdfSample s =
        sdf_obstacle(p, workspace_->obstacles[i], workspace_->hessian_clamp);
    const double a = alphas_[i] * std::exp(-s.value / length_scale_);
    // H_i = a/l^2 * grad grad^T - a/l * H_sigma
    const Vec hu = (a / (length_scale_ * length_scale_)) * s.gradient *
                       (s.gradient.dot(u)) -
                   (a / length_scale_) * (s.hessian * u);
    out.row(i) = hu.transpose();
  }
  return out;
}

Mat WorkspaceMap::pullback_metric(const Vec& p) const {
  const Mat jac = jacobian(p);
  return jac.transpose() * jac;
}

double WorkspaceMap::natural_distance(const Vec& p, const Vec& goal) const {
  return (eval(p) - eval(goal)).norm();
}

}  // namespace geoplan
