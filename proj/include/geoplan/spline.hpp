#pragma once

#include <Eigen/Dense>
#include <vector>

#include "geoplan/grid.hpp"

namespace geoplan {

/// Tensor-product natural cubic B-spline interpolant of a regular grid
/// (bicubic in 2D, tricubic in 3D). C2 everywhere, reproduces the grid
/// values at the nodes. Value, gradient and hessian are all analytic.
class CubicSplineField {
 public:
  CubicSplineField() = default;

  /// Fits the spline to grid.values, which must be finite everywhere
  /// (mask handling is the caller's responsibility).
  explicit CubicSplineField(const ScalarGrid& grid);

  int dimension() const { return dimension_; }

  /// Node position of the first/last data point per axis (world units).
  Vec domain_min() const;
  Vec domain_max() const;

  /// Evaluates at world point p (clamped to the domain; *clamped reports it).
  double value(const Vec& p, bool* clamped = nullptr) const;

  /// Value plus analytic gradient and hessian.
  double evaluate(const Vec& p, Vec* gradient, Mat* hessian,
                  bool* clamped = nullptr) const;

 private:
  int dimension_ = 0;
  Vec node_origin_;  // world position of node (0,0,0)
  double h_ = 1.0;
  GridCoord n_ = GridCoord::Ones();  // data extents per axis
  GridCoord m_ = GridCoord::Ones();  // coefficient extents per axis (n+2)
  std::vector<double> coeff_;

  int coeff_index(int i, int j, int k) const {
    return (k * m_[1] + j) * m_[0] + i;
  }
};

}  // namespace geoplan
