#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "gradbc/boundary.hpp"
#include "gradbc/moment_system.hpp"

namespace gradbc {

/// Certificate that the modified boundary rows with homogeneous wall data
/// (plus the no-mass-flow row u2 = 0) carve out an m-dimensional subspace
/// on which -v^T A_2 v >= 0.
struct PositivityCertificate {
  int dim_null = 0;         // dimension of the boundary subspace (= m on success)
  double min_quadratic = 0; // smallest eigenvalue of the induced form -v^T A_2 v
  Eigen::VectorXd witness;  // minimizing v (full length N)
  bool passed(double tol = 1e-10) const { return min_quadratic >= -tol; }
};

/// Builds the boundary subspace by the first-row elimination: for every
/// v_e the rows determine (v_o, rho_w) uniquely provided a_11 != 0, where
/// a_11 is the (e2-row, 0-column) entry of (M_o^T S^-1 M_o)^{-1} M_o^T.
inline PositivityCertificate check_maximal_positive(const MomentSystem& sys, double chi) {
  if (chi < 0.0 || chi > 1.0)
    throw std::invalid_argument("check_maximal_positive: chi must be in [0,1]");
  const int m = sys.basis.even_count();
  const int n = sys.basis.odd_count();
  const double chat = chi_hat_of(chi);

  const Eigen::MatrixXd S = assemble_s(sys.basis);
  const Eigen::MatrixXd Mo = assemble_mo(sys.basis);
  const Eigen::MatrixXd K = Mo.transpose() * S.llt().solve(Mo);  // n x n, SPD
  Eigen::LLT<Eigen::MatrixXd> Kf(K);
  if (Kf.info() != Eigen::Success)
    throw std::runtime_error("check_maximal_positive: M_o^T S^-1 M_o not positive definite");

  // v_o(v_e) = -chi_hat K^{-1} M_o^T (v_e - rho_w e_0), rho_w from the u2 row.
  Eigen::MatrixXd V;  // n x m map v_e -> v_o
  if (chat == 0.0) {
    V = Eigen::MatrixXd::Zero(n, m);
  } else {
    const Eigen::MatrixXd R = Kf.solve(Mo.transpose());  // n x m
    const Eigen::RowVectorXd r = R.row(0);               // e2 is the first odd index
    const double a11 = r(0);
    if (std::abs(a11) <= 1e-12 * r.cwiseAbs().maxCoeff())
      throw std::runtime_error("check_maximal_positive: singular first-row pivot a_11");
    // rho_w(v_e) = v_e(0) + sum_{k>0} r_k v_e(k) / a11
    Eigen::RowVectorXd rho_w = Eigen::RowVectorXd::Zero(m);
    rho_w(0) = 1.0;
    for (int k = 1; k < m; ++k) rho_w(k) = r(k) / a11;
    // v_e - rho_w e_0 as an m x m map, then v_o = -chi_hat R (v_e - rho_w e_0)
    Eigen::MatrixXd shift = Eigen::MatrixXd::Identity(m, m);
    shift.row(0) -= rho_w;
    V = -chat * R * shift;
  }

  // Induced quadratic form -v^T A_2 v = -2 v_e^T M_o v_o on v_e in R^m.
  const Eigen::MatrixXd MoV = Mo * V;
  const Eigen::MatrixXd P = -(MoV + MoV.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);

  PositivityCertificate cert;
  cert.dim_null = m;
  cert.min_quadratic = es.eigenvalues()(0);
  Eigen::VectorXd ve = es.eigenvectors().col(0);
  cert.witness.resize(m + n);
  cert.witness.head(m) = ve;
  cert.witness.tail(n) = V * ve;
  return cert;
}

/// Smallest eigenvalue of B^T B - c A - c^2 I.
inline double dissipativity_margin(const Eigen::MatrixXd& B, const Eigen::MatrixXd& A, double c) {
  const int N = A.rows();
  const Eigen::MatrixXd M =
      B.transpose() * B - c * A - c * c * Eigen::MatrixXd::Identity(N, N);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

struct DissipativityCertificate {
  bool found = false;
  double c = 0.0;       // certified constant (margin(c) > 0)
  double margin = 0.0;  // smallest eigenvalue at c
};

/// Searches c in (0, 1] such that B^T B - c A - c^2 I is positive definite.
/// Geometric descent locates a valid c, then bisection pushes it toward the
/// upper end of the admissible interval (existence is what is certified,
/// not the supremum). Absolute tolerance 1e-6 on c.
inline DissipativityCertificate check_strict_dissipativity(const Eigen::MatrixXd& B,
                                                           const Eigen::MatrixXd& A) {
  DissipativityCertificate cert;
  double hi = 1.0;  // invalid upper end unless it certifies directly
  double hi_margin = dissipativity_margin(B, A, hi);
  if (hi_margin > 0.0) {
    cert.found = true;
    cert.c = hi;
    cert.margin = hi_margin;
    return cert;
  }
  double lo = 0.5;
  double lo_margin = dissipativity_margin(B, A, lo);
  while (lo_margin <= 0.0 && lo > 1e-12) {
    hi = lo;
    lo *= 0.5;
    lo_margin = dissipativity_margin(B, A, lo);
  }
  if (lo_margin <= 0.0) return cert;  // nothing in (0,1]: assembly bug upstream
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (dissipativity_margin(B, A, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  cert.found = true;
  cert.c = lo;
  cert.margin = dissipativity_margin(B, A, lo);
  return cert;
}

}  // namespace gradbc
