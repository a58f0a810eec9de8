#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gradbc {

/// Midpoint-rule L2 norm on a uniform grid with spacing h.
inline double l2_norm(const Eigen::VectorXd& v, double h) { return std::sqrt(h * v.squaredNorm()); }

inline double l2_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double h) {
  if (a.size() != b.size())
    throw std::invalid_argument("l2_error: mismatched grids");
  return l2_norm(a - b, h);
}

struct SlopeFit {
  bool fitted = false;
  double slope = 0.0;  // convergence rate p for err ~ C eps^p
  double intercept = 0.0;
};

/// Least-squares convergence rate from log2(err) against -log2(eps): the
/// reported slope is p with err ~ C eps^p. Needs at least three points;
/// with fewer the data is still usable but no fit is made.
inline SlopeFit fit_slope(const std::vector<double>& eps, const std::vector<double>& err) {
  if (eps.size() != err.size()) throw std::invalid_argument("fit_slope: length mismatch");
  SlopeFit f;
  if (eps.size() < 3) return f;
  const int n = static_cast<int>(eps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = -std::log2(eps[i]);
    const double y = std::log2(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return f;
  f.fitted = true;
  f.slope = -(n * sxy - sx * sy) / denom;
  f.intercept = (sy + f.slope * sx) / n;
  return f;
}

}  // namespace gradbc
