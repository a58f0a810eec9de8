#pragma once

#include <cmath>
#include <stdexcept>

namespace gradbc {

/// 1D half-range moments of orthonormal (probabilists') Hermite functions
/// against the standard Gaussian weight g(x) = exp(-x^2/2)/sqrt(2*pi).
///
/// Everything reduces to
///   U(a,b) = int_0^inf g(x) he_a(x) he_b(x) dx,
///   T(i,j) = int_0^inf x g(x) he_i(x) he_j(x) dx,
/// where he_k = He_k / sqrt(k!). Both satisfy exact two-term recurrences
/// obtained from He_k' = k He_{k-1} and (g He_k)' = -g He_{k+1}, so no
/// quadrature is involved.

namespace detail {

inline double gauss_at_zero() { return 0.3989422804014326779399461;  /* 1/sqrt(2*pi) */ }

/// he_k(0) = He_k(0)/sqrt(k!); zero for odd k.
inline double hermite_norm_at_zero(int k) {
  if (k < 0) return 0.0;
  if (k & 1) return 0.0;
  // he_{2m}(0) = (-1)^m (2m-1)!! / sqrt((2m)!) via a stable product.
  double v = 1.0;
  for (int j = 2; j <= k; j += 2) {
    // step he_{j}(0) = -sqrt((j-1)/j) * he_{j-2}(0)
    v *= -std::sqrt((j - 1.0) / j);
  }
  return v;
}

}  // namespace detail

/// U(a,b) above. Symmetric in (a,b).
inline double half_gauss_hermite(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("half_gauss_hermite: negative degree");
  if (((a + b) & 1) == 0) return a == b ? 0.5 : 0.0;
  // a+b odd: U(a,b) = g(0) he_a(0) he_{b-1}(0)/sqrt(b) + sqrt(a/b) U(a-1,b-1),
  // with terminal values U(p,0) = g(0) he_{p-1}(0)/sqrt(p) (and symmetrically).
  const double g0 = detail::gauss_at_zero();
  double acc = 0.0;
  double fac = 1.0;
  int p = a, q = b;
  while (true) {
    if (q == 0) {
      acc += fac * g0 * detail::hermite_norm_at_zero(p - 1) / std::sqrt(static_cast<double>(p));
      break;
    }
    if (p == 0) {
      acc += fac * g0 * detail::hermite_norm_at_zero(q - 1) / std::sqrt(static_cast<double>(q));
      break;
    }
    acc += fac * g0 * detail::hermite_norm_at_zero(p) * detail::hermite_norm_at_zero(q - 1) /
           std::sqrt(static_cast<double>(q));
    fac *= std::sqrt(static_cast<double>(p) / q);
    --p;
    --q;
  }
  return acc;
}

/// T(i,j) above, via x he_i = sqrt(i+1) he_{i+1} + sqrt(i) he_{i-1}.
inline double half_gauss_x_hermite(int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("half_gauss_x_hermite: negative degree");
  double v = std::sqrt(i + 1.0) * half_gauss_hermite(i + 1, j);
  if (i > 0) v += std::sqrt(static_cast<double>(i)) * half_gauss_hermite(i - 1, j);
  return v;
}

/// Full-line moment <|x| g he_i he_j>; vanishes when i+j is odd.
inline double half_space_hermite_integral(int i, int j) {
  if ((i + j) & 1) return 0.0;
  return 2.0 * half_gauss_x_hermite(i, j);
}

/// Full-line signed moment <x g he_i he_j> = sqrt(i) d_{j,i-1} + sqrt(i+1) d_{j,i+1}.
/// For i+j odd the integrand is even, so this equals 2*T(i,j) as well; the
/// two routes are kept separate so they can be checked against each other.
inline double signed_hermite_moment(int i, int j) {
  if (j == i - 1) return std::sqrt(static_cast<double>(i));
  if (j == i + 1) return std::sqrt(i + 1.0);
  return 0.0;
}

}  // namespace gradbc
