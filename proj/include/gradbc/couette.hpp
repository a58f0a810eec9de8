#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "gradbc/boundary.hpp"
#include "gradbc/half_range.hpp"

namespace gradbc {

/// Decoupled shear-chain system for the Couette flow: moments w_{e1 + k e2},
/// k = 0..M, arranged as (even k block, odd k block).
struct CouetteSystem {
  int M = 0;       // odd
  double chi = 1.0;
  double chi_hat = 0.0;
  Eigen::MatrixXd Mc;       // (M+1)/2 square lower bidiagonal
  Eigen::MatrixXd Ac;       // (M+1) x (M+1) = [[0, Mc],[Mc^T, 0]]
  Eigen::VectorXd Qc_diag;  // diag(0, 1, ..., 1)
  Eigen::MatrixXd Sc;       // (M+1)/2 symmetric positive definite
  Eigen::MatrixXd Bc;       // (M+1)/2 x (M+1) = [chi_hat Sc, Mc]

  int half() const { return (M + 1) / 2; }
  int size() const { return M + 1; }

  /// b_c(t) for wall velocity value uw.
  Eigen::VectorXd wall_rhs(double uw) const { return chi_hat * uw * Sc.col(0); }
};

inline CouetteSystem build_couette(int M, double chi) {
  if (M < 3 || (M % 2) == 0)
    throw std::invalid_argument(
        "build_couette: M must be odd and >= 3 (even M makes the boundary characteristic)");
  if (chi <= 0.0 || chi > 1.0)
    throw std::invalid_argument("build_couette: chi must be in (0,1]");
  CouetteSystem cs;
  cs.M = M;
  cs.chi = chi;
  cs.chi_hat = chi_hat_of(chi);
  const int K = cs.half();
  cs.Mc = Eigen::MatrixXd::Zero(K, K);
  cs.Mc(0, 0) = 1.0;
  for (int r = 1; r < K; ++r) {
    cs.Mc(r, r - 1) = std::sqrt(2.0 * r);
    cs.Mc(r, r) = std::sqrt(2.0 * r + 1.0);
  }
  cs.Ac = Eigen::MatrixXd::Zero(M + 1, M + 1);
  cs.Ac.topRightCorner(K, K) = cs.Mc;
  cs.Ac.bottomLeftCorner(K, K) = cs.Mc.transpose();
  cs.Qc_diag = Eigen::VectorXd::Ones(M + 1);
  cs.Qc_diag(0) = 0.0;
  // Sc: rows/columns of S over the even chain indices e1 + 2k e2; the
  // factorised 1D integral is all that survives.
  const double c = std::sqrt(2.0 * std::acos(-1.0));
  cs.Sc.resize(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) cs.Sc(i, j) = c * half_gauss_x_hermite(2 * i, 2 * j);
  cs.Bc.resize(K, M + 1);
  cs.Bc.leftCols(K) = cs.chi_hat * cs.Sc;
  cs.Bc.rightCols(K) = cs.Mc;
  return cs;
}

/// Orthogonal diagonalisation of the trimmed chain matrix
///   [[0, Mc'], [Mc'^T, 0]] R = R diag(L, -L),  R = [[Re, Re],[Ro, -Ro]],
/// built from the SVD of Mc' (Mc without its first row and column).
struct CouetteKnudsenBasis {
  Eigen::MatrixXd Re, Ro;   // (M-1)/2 square, invertible
  Eigen::VectorXd lambda;   // positive, descending
  Eigen::MatrixXd Mc_trim;  // the trimmed block itself
};

inline CouetteKnudsenBasis couette_knudsen_basis(const CouetteSystem& cs) {
  const int K = cs.half();
  CouetteKnudsenBasis kb;
  kb.Mc_trim = cs.Mc.bottomRightCorner(K - 1, K - 1);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(kb.Mc_trim, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd U = svd.matrixU();
  Eigen::MatrixXd V = svd.matrixV();
  kb.lambda = svd.singularValues();
  // deterministic sign: largest-magnitude entry of each U column positive
  for (int k = 0; k < U.cols(); ++k) {
    int imax = 0;
    U.col(k).cwiseAbs().maxCoeff(&imax);
    if (U(imax, k) < 0.0) {
      U.col(k) = -U.col(k);
      V.col(k) = -V.col(k);
    }
  }
  const double s = 1.0 / std::sqrt(2.0);
  kb.Re = s * U;
  kb.Ro = s * V;
  if (kb.lambda(kb.lambda.size() - 1) <= 0.0)
    throw std::runtime_error("couette_knudsen_basis: trimmed chain block is singular");
  return kb;
}

/// Boundary kernel H_M(chi) of the layer-matching conditions and the slip
/// constants solved from it. The kernel acts on (viscous wall value,
/// decaying characteristic amplitudes).
struct CouetteSlipConstants {
  double K_M = 0.0;
  double J_M = 0.0;
  Eigen::MatrixXd Hm;                // (M+1)/2 square, invertible for chi_hat > 0
  Eigen::PartialPivLU<Eigen::MatrixXd> Hm_lu;
  Eigen::VectorXd g;                 // (sqrt(2), 0, ..., 0) of length (M-1)/2
  Eigen::VectorXd kappa1;            // H_M^{-1} (1; g): row 0 is K_M, tail drives layer order 1
  Eigen::VectorXd kappa2;            // -H_M^{-1} chi_hat Sc (0; g): row 0 is J_M
};

inline CouetteSlipConstants couette_slip_constants(const CouetteSystem& cs,
                                                   const CouetteKnudsenBasis& kb) {
  const int K = cs.half();
  const int r = K - 1;
  CouetteSlipConstants out;
  out.g = Eigen::VectorXd::Zero(r);
  out.g(0) = std::sqrt(2.0);

  Eigen::MatrixXd bracket = Eigen::MatrixXd::Zero(K, K);
  bracket(0, 0) = 1.0;
  bracket.block(0, 1, 1, r) = -(out.g.transpose() * kb.Re);
  bracket.block(1, 1, r, r) = kb.Re;
  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(K, K);
  lower.block(1, 1, r, r) = kb.Mc_trim * kb.Ro;
  out.Hm = cs.chi_hat * cs.Sc * bracket + lower;
  out.Hm_lu.compute(out.Hm);
  if (std::abs(out.Hm_lu.determinant()) < 1e-300)
    throw std::runtime_error("couette_slip_constants: singular layer-matching kernel");

  Eigen::VectorXd e(K);
  e(0) = 1.0;
  e.tail(r) = out.g;
  out.kappa1 = out.Hm_lu.solve(e);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(K);
  f.tail(r) = out.g;
  out.kappa2 = -out.Hm_lu.solve(cs.chi_hat * cs.Sc * f);
  out.K_M = out.kappa1(0);
  out.J_M = out.kappa2(0);
  return out;
}

inline CouetteSlipConstants couette_slip_constants(int M, double chi) {
  const CouetteSystem cs = build_couette(M, chi);
  return couette_slip_constants(cs, couette_knudsen_basis(cs));
}

/// Wall velocity signal with its time derivative; compatibility requires
/// u(0) = 0.
struct WallSignal {
  std::function<double(double)> u;
  std::function<double(double)> dudt;
};

inline WallSignal cosine_wall(double amplitude = 1.0) {
  const double pi = std::acos(-1.0);
  return WallSignal{
      [amplitude, pi](double t) { return amplitude * (1.0 - std::cos(2.0 * pi * t)); },
      [amplitude, pi](double t) { return amplitude * 2.0 * pi * std::sin(2.0 * pi * t); }};
}

}  // namespace gradbc
