#include "geoplan/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geoplan {

namespace {

// Uniform cubic B-spline basis on u in [0,1] for coefficients c[k-1..k+2].
void basis(double u, double* b, double* db, double* d2b) {
  const double u2 = u * u, u3 = u2 * u;
  b[0] = (1 - 3 * u + 3 * u2 - u3) / 6.0;
  b[1] = (4 - 6 * u2 + 3 * u3) / 6.0;
  b[2] = (1 + 3 * u + 3 * u2 - 3 * u3) / 6.0;
  b[3] = u3 / 6.0;
  if (db) {
    db[0] = (-1 + 2 * u - u2) / 2.0;
    db[1] = (-4 * u + 3 * u2) / 2.0;
    db[2] = (1 + 2 * u - 3 * u2) / 2.0;
    db[3] = u2 / 2.0;
  }
  if (d2b) {
    d2b[0] = 1 - u;
    d2b[1] = -2 + 3 * u;
    d2b[2] = 1 - 3 * u;
    d2b[3] = u;
  }
}

// Solves the natural-boundary interpolation problem along one line of data:
// given y[0..n-1], produces n+2 B-spline coefficients c[0..n+1] such that
// (c[i] + 4 c[i+1] + c[i+2]) / 6 = y[i] and the second derivative vanishes
// at both ends. With natural ends, c[1] = y[0] and c[n] = y[n-1], leaving a
// tridiagonal system for the interior.
void fit_line(const double* y, int stride_y, int n, double* c, int stride_c,
              std::vector<double>& scratch) {
  auto Y = [&](int i) -> double { return y[i * stride_y]; };
  auto C = [&](int i) -> double& { return c[i * stride_c]; };

  C(1) = Y(0);
  C(n) = Y(n - 1);
  if (n > 2) {
    // 4 c_i + c_{i-1} + c_{i+1} = 6 y_i for i = 1..n-2 (c-index shifted by 1).
    const int m = n - 2;
    scratch.resize(2 * m);
    double* diag = scratch.data();      // modified diagonal
    double* rhs = scratch.data() + m;   // modified rhs
    diag[0] = 4.0;
    rhs[0] = 6.0 * Y(1) - C(1);
    for (int i = 1; i < m; ++i) {
      const double w = 1.0 / diag[i - 1];
      diag[i] = 4.0 - w;
      rhs[i] = 6.0 * Y(1 + i) - rhs[i - 1] * w;
    }
    rhs[m - 1] -= C(n);
    C(n - 1) = rhs[m - 1] / diag[m - 1];
    for (int i = m - 2; i >= 0; --i) {
      C(i + 2) = (rhs[i] - C(i + 3)) / diag[i];
    }
  }
  C(0) = 2.0 * C(1) - C(2);
  C(n + 1) = 2.0 * C(n) - C(n - 1);
}

}  // namespace

CubicSplineField::CubicSplineField(const ScalarGrid& grid) {
  dimension_ = grid.dimension;
  h_ = grid.cell_size;
  node_origin_ = grid.origin + Vec::Constant(dimension_, 0.5 * h_);
  n_ = grid.shape;
  m_ = n_ + GridCoord::Constant(2);
  if (dimension_ == 2) {
    n_[2] = 1;
    m_[2] = 1;
  }

  for (const double v : grid.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("CubicSplineField: non-finite grid value");
    }
  }

  // Fit axis by axis. Buffers sized for the final coefficient extents; data
  // occupies the leading n_[a] entries along axes not yet fitted.
  std::vector<double> work(static_cast<std::size_t>(m_[0]) * m_[1] * m_[2], 0.0);
  std::vector<double> scratch;

  // Axis 0: rows of the raw grid -> coefficient rows.
  for (int k = 0; k < n_[2]; ++k) {
    for (int j = 0; j < n_[1]; ++j) {
      const double* src =
          grid.values.data() + (static_cast<std::size_t>(k) * n_[1] + j) * n_[0];
      double* dst = work.data() + coeff_index(0, j, k);
      fit_line(src, 1, n_[0], dst, 1, scratch);
    }
  }
  // Axis 1: columns (length n_[1] -> m_[1]), done in place back to front so
  // the expanded output does not clobber unread input.
  std::vector<double> line(std::max({m_[0], m_[1], m_[2]}));
  for (int k = 0; k < n_[2]; ++k) {
    for (int i = 0; i < m_[0]; ++i) {
      for (int j = 0; j < n_[1]; ++j) line[j] = work[coeff_index(i, j, k)];
      fit_line(line.data(), 1, n_[1], work.data() + coeff_index(i, 0, k), m_[0],
               scratch);
    }
  }
  // Axis 2 for tricubic fields.
  if (dimension_ == 3) {
    for (int j = 0; j < m_[1]; ++j) {
      for (int i = 0; i < m_[0]; ++i) {
        for (int k = 0; k < n_[2]; ++k) line[k] = work[coeff_index(i, j, k)];
        fit_line(line.data(), 1, n_[2], work.data() + coeff_index(i, j, 0),
                 m_[0] * m_[1], scratch);
      }
    }
  }
  coeff_ = std::move(work);
}

Vec CubicSplineField::domain_min() const { return node_origin_; }

Vec CubicSplineField::domain_max() const {
  Vec p = node_origin_;
  for (int a = 0; a < dimension_; ++a) p[a] += (n_[a] - 1) * h_;
  return p;
}

double CubicSplineField::value(const Vec& p, bool* clamped) const {
  return evaluate(p, nullptr, nullptr, clamped);
}

double CubicSplineField::evaluate(const Vec& p, Vec* gradient, Mat* hessian,
                                  bool* clamped) const {
  const int dim = dimension_;
  bool was_clamped = false;

  int cell[3] = {0, 0, 0};
  double b[3][4], db[3][4], d2b[3][4];
  for (int a = 0; a < 3; ++a) {
    b[a][0] = 1.0;
    b[a][1] = b[a][2] = b[a][3] = 0.0;
    db[a][0] = db[a][1] = db[a][2] = db[a][3] = 0.0;
    d2b[a][0] = d2b[a][1] = d2b[a][2] = d2b[a][3] = 0.0;
  }
  for (int a = 0; a < dim; ++a) {
    double t = (p[a] - node_origin_[a]) / h_;
    if (t < 0.0) {
      t = 0.0;
      was_clamped = true;
    }
    if (t > n_[a] - 1) {
      t = n_[a] - 1;
      was_clamped = true;
    }
    int k = std::min(static_cast<int>(std::floor(t)), n_[a] - 2);
    const double u = t - k;
    cell[a] = k;
    basis(u, b[a], gradient ? db[a] : nullptr, hessian ? d2b[a] : nullptr);
  }
  if (clamped) *clamped = was_clamped;

  const int zmax = (dim == 3) ? 4 : 1;
  double value = 0.0;
  Vec grad = Vec::Zero(dim);
  Mat hess = Mat::Zero(dim, dim);
  for (int cz = 0; cz < zmax; ++cz) {
    for (int cy = 0; cy < 4; ++cy) {
      for (int cx = 0; cx < 4; ++cx) {
        const double c =
            coeff_[coeff_index(cell[0] + cx, cell[1] + cy, cell[2] + cz)];
        const double wx = b[0][cx], wy = b[1][cy], wz = b[2][cz];
        value += c * wx * wy * wz;
        if (gradient) {
          grad[0] += c * db[0][cx] * wy * wz;
          grad[1] += c * wx * db[1][cy] * wz;
          if (dim == 3) grad[2] += c * wx * wy * db[2][cz];
        }
        if (hessian) {
          hess(0, 0) += c * d2b[0][cx] * wy * wz;
          hess(1, 1) += c * wx * d2b[1][cy] * wz;
          hess(0, 1) += c * db[0][cx] * db[1][cy] * wz;
          if (dim == 3) {
            hess(2, 2) += c * wx * wy * d2b[2][cz];
            hess(0, 2) += c * db[0][cx] * wy * db[2][cz];
            hess(1, 2) += c * wx * db[1][cy] * db[2][cz];
          }
        }
      }
    }
  }
  if (gradient) *gradient = grad / h_;
  if (hessian) {
    hess(1, 0) = hess(0, 1);
    if (dim == 3) {
      hess(2, 0) = hess(0, 2);
      hess(2, 1) = hess(1, 2);
    }
    *hessian = hess / (h_ * h_);
  }
  return value;
}

}  // namespace geoplan
