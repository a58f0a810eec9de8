#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gradbc/half_range.hpp"

using namespace gradbc;

namespace {

// Composite 50x8 Gauss-Legendre quadrature of int_0^inf x g he_i he_j dx
// (400 points on [0,40]), independent of the recurrence route.
double quadrature_x_hermite(int i, int j) {
  static const double gl_x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                 0.9602898564975363};
  static const double gl_w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                 0.1012285362903763};
  auto hermite = [](int k, double x) {
    double h0 = 1.0, h1 = x;
    if (k == 0) return h0;
    for (int d = 1; d < k; ++d) {
      const double h2 = (x * h1 - std::sqrt(static_cast<double>(d)) * h0) / std::sqrt(d + 1.0);
      h0 = h1;
      h1 = h2;
    }
    return h1;
  };
  const int panels = 50;
  const double L = 40.0 / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = (p + 0.5) * L;
    for (int q = 0; q < 8; ++q) {
      const double t = q < 4 ? -gl_x[3 - q] : gl_x[q - 4];
      const double w = q < 4 ? gl_w[3 - q] : gl_w[q - 4];
      const double x = c + 0.5 * L * t;
      const double g = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::acos(-1.0));
      acc += 0.5 * L * w * x * g * hermite(i, x) * hermite(j, x);
    }
  }
  return acc;
}

}  // namespace

TEST(half_range, closed_form_base_cases) {
  const double pi = std::acos(-1.0);
  EXPECT_NEAR(half_space_hermite_integral(0, 0), std::sqrt(2.0 / pi), 1e-15);
  EXPECT_DOUBLE_EQ(half_space_hermite_integral(0, 1), 0.0);  // odd integrand
  EXPECT_DOUBLE_EQ(half_space_hermite_integral(2, 5), 0.0);
}

TEST(half_range, matches_quadrature) {
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j)
      EXPECT_NEAR(half_gauss_x_hermite(i, j), quadrature_x_hermite(i, j), 1e-12)
          << "i=" << i << " j=" << j;
}

TEST(half_range, one_one_case) {
  EXPECT_NEAR(half_space_hermite_integral(1, 1), 2.0 * quadrature_x_hermite(1, 1), 1e-12);
}

TEST(half_range, even_odd_pair_reproduces_recursion_coefficients) {
  // For i+j odd the integrand of <x g he_i he_j> is even, so twice the
  // half-line moment must equal the two-term recursion value.
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) {
      if (((i + j) & 1) == 0) continue;
      EXPECT_NEAR(2.0 * half_gauss_x_hermite(i, j), signed_hermite_moment(i, j), 1e-13)
          << "i=" << i << " j=" << j;
    }
}
