#pragma once

#include <memory>

#include "geoplan/geometry.hpp"

namespace geoplan {

/// Default length scale of the exp(-sigma/l) obstacle potentials (m).
inline constexpr double kDefaultMapLengthScale = 0.3;

/// Workspace geometry map: one exp(-sigma_i / l) potential channel per
/// obstacle stacked on top of a scaled identity map. Its Jacobian induces
/// the pullback metric A = J^T J, which stretches space along obstacle
/// normals and blends to Euclidean far from the boundary.
class WorkspaceMap {
 public:
  WorkspaceMap(std::shared_ptr<const Workspace> workspace, double alpha_potential,
               double alpha_identity, double length_scale = kDefaultMapLengthScale);

  /// Per-channel weights may also be set individually (the identity weight is
  /// the last entry).
  WorkspaceMap(std::shared_ptr<const Workspace> workspace, Vec alphas,
               double length_scale = kDefaultMapLengthScale);

  int domain_dimension() const { return workspace_->dimension; }
  int num_potentials() const { return static_cast<int>(workspace_->num_obstacles()); }
  int output_dimension() const { return num_potentials() + domain_dimension(); }
  double length_scale() const { return length_scale_; }
  double alpha_identity() const { return alphas_[num_potentials()]; }
  const Workspace& workspace() const { return *workspace_; }

  /// phi(p): potential channels followed by the scaled identity block.
  Vec eval(const Vec& p) const;

  /// (d + dim) x dim Jacobian of the map.
  Mat jacobian(const Vec& p) const;

  /// Directional derivative of the Jacobian: rows are (H_k(p) * u)^T where
  /// H_k is the hessian of channel k. Identity channels contribute zero.
  Mat jacobian_dot(const Vec& p, const Vec& u) const;

  /// Pullback metric A(p) = J^T J; positive definite whenever the identity
  /// weight is nonzero.
  Mat pullback_metric(const Vec& p) const;

  /// Distance measured in the co-domain: ||phi(p) - phi(goal)||.
  double natural_distance(const Vec& p, const Vec& goal) const;

 private:
  std::shared_ptr<const Workspace> workspace_;
  Vec alphas_;
  double length_scale_;
};

}  // namespace geoplan
