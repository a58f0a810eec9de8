#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "gradbc/half_range.hpp"
#include "gradbc/moment_system.hpp"
#include "gradbc/multi_index.hpp"

namespace gradbc {

/// Rescaled accommodation coefficient 2*chi / ((2-chi)*sqrt(2*pi)).
inline double chi_hat_of(double chi) {
  return 2.0 * chi / ((2.0 - chi) * std::sqrt(2.0 * std::acos(-1.0)));
}

/// S[a,b] = (sqrt(2*pi)/2) <|xi_2| M phi_a phi_b> over the even-a2 block.
/// The 3D integral factorises, leaving the 1D half-range moment in xi_2.
inline Eigen::MatrixXd assemble_s(const MomentBasis& basis) {
  const int m = basis.even_count();
  const double c = std::sqrt(2.0 * std::acos(-1.0)) / 2.0;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const MultiIndex a = basis.index(i);
    for (int j = i; j < m; ++j) {
      const MultiIndex b = basis.index(j);
      if (a[0] != b[0] || a[2] != b[2]) continue;
      const double v = c * half_space_hermite_integral(a[1], b[1]);
      S(i, j) = v;
      S(j, i) = v;
    }
  }
  return S;
}

/// M_o[a,b] = <xi_2 M phi_a phi_b>, a even, b odd: the even-odd coupling
/// block. Assembled from the same 1D half-range moments (the integrand is
/// even in xi_2, so the full-line value is twice the half-line one); it
/// equals the upper-right block of A_2.
inline Eigen::MatrixXd assemble_mo(const MomentBasis& basis) {
  const int m = basis.even_count();
  const int n = basis.odd_count();
  Eigen::MatrixXd Mo = Eigen::MatrixXd::Zero(m, n);
  for (int i = 0; i < m; ++i) {
    const MultiIndex a = basis.index(i);
    for (int j = 0; j < n; ++j) {
      const MultiIndex b = basis.index(m + j);
      if (a[0] != b[0] || a[2] != b[2]) continue;
      Mo(i, j) = 2.0 * half_gauss_x_hermite(a[1], b[1]);
    }
  }
  return Mo;
}

/// Row selector E[a,b] = d_{a, b+e2} mapping even test indices with
/// |b| <= M-1 onto the odd-block row order.
inline Eigen::MatrixXd assemble_e(const MomentBasis& basis) {
  const int m = basis.even_count();
  const int n = basis.odd_count();
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, m);
  for (int r = 0; r < n; ++r) {
    MultiIndex a = basis.index(m + r);
    a[1] -= 1;  // a2 odd >= 1
    E(r, basis.even_position(a)) = 1.0;
  }
  return E;
}

enum class BcKind { grad, modified };

/// Wall boundary operator for the moment system at {x2 = 0}.
struct BoundaryOperator {
  double chi = 1.0;
  double chi_hat = 0.0;
  BcKind kind = BcKind::modified;
  Eigen::MatrixXd S;   // m x m, symmetric positive definite
  Eigen::MatrixXd Mo;  // m x n, full column rank
  Eigen::MatrixXd E;   // n x m selector
  Eigen::MatrixXd B;   // n x N assembled rows
};

/// Inhomogeneity vector b: nonzero only at 0, e_i and 2e_i.
inline Eigen::VectorXd wall_inhomogeneity(const MomentBasis& basis, double rho_w,
                                          const Eigen::Vector3d& u_w, double theta_w) {
  if (std::abs(u_w(1)) > 0.0)
    throw std::invalid_argument("wall_inhomogeneity: wall-normal velocity must vanish");
  Eigen::VectorXd b = Eigen::VectorXd::Zero(basis.size());
  b(basis.position({0, 0, 0})) = rho_w;
  for (int i = 0; i < 3; ++i) b(basis.position(unit_index(i))) = u_w(i);
  for (int i = 0; i < 3; ++i) {
    MultiIndex a{0, 0, 0};
    a[i] = 2;
    b(basis.position(a)) = theta_w / std::sqrt(2.0);
  }
  return b;
}

/// Assemble the boundary rows B for the requested kind:
///   grad:     B = E [chi_hat S, M_o]
///   modified: B = [chi_hat M_o^T, M_o^T S^{-1} M_o]
inline BoundaryOperator build_bc(const MomentSystem& sys, double chi, BcKind kind) {
  if (chi < 0.0 || chi > 1.0) throw std::invalid_argument("build_bc: chi must be in [0,1]");
  if (kind == BcKind::modified && chi == 0.0)
    throw std::invalid_argument(
        "build_bc: chi = 0 (specular limit) is only meaningful for the Grad form; "
        "the modified rows lose their positivity certificate");
  BoundaryOperator op;
  op.chi = chi;
  op.chi_hat = chi_hat_of(chi);
  op.kind = kind;
  op.S = assemble_s(sys.basis);
  op.Mo = assemble_mo(sys.basis);
  op.E = assemble_e(sys.basis);
  const int m = sys.basis.even_count();
  const int n = sys.basis.odd_count();
  const int N = sys.basis.size();
  op.B.resize(n, N);
  if (kind == BcKind::grad) {
    Eigen::MatrixXd rows(m, N);
    rows.leftCols(m) = op.chi_hat * op.S;
    rows.rightCols(n) = op.Mo;
    op.B = op.E * rows;
  } else {
    op.B.leftCols(m) = op.chi_hat * op.Mo.transpose();
    op.B.rightCols(n) = op.Mo.transpose() * op.S.llt().solve(op.Mo);
  }
  return op;
}

}  // namespace gradbc
