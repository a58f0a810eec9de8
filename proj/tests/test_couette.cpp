#include <gtest/gtest.h>

#include <cmath>

#include "gradbc/boundary.hpp"
#include "gradbc/couette.hpp"
#include "gradbc/half_space.hpp"
#include "gradbc/wellposed.hpp"

using namespace gradbc;

TEST(couette, chain_matrix_m5) {
  const CouetteSystem cs = build_couette(5, 1.0);
  ASSERT_EQ(cs.Mc.rows(), 3);
  Eigen::MatrixXd expected(3, 3);
  expected << 1, 0, 0, std::sqrt(2.0), std::sqrt(3.0), 0, 0, std::sqrt(4.0), std::sqrt(5.0);
  EXPECT_LE((cs.Mc - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(couette, rejects_bad_inputs) {
  EXPECT_THROW(build_couette(4, 1.0), std::invalid_argument);
  EXPECT_THROW(build_couette(1, 1.0), std::invalid_argument);
  EXPECT_THROW(build_couette(5, 0.0), std::invalid_argument);
}

TEST(couette, qc_relaxation_pattern) {
  const CouetteSystem cs = build_couette(7, 1.0);
  EXPECT_EQ(cs.Qc_diag(0), 0.0);
  for (int k = 1; k < cs.size(); ++k) EXPECT_EQ(cs.Qc_diag(k), 1.0);
}

TEST(couette, no_zero_eigenvalue) {
  for (int M : {3, 5, 7, 9}) {
    const CouetteSystem cs = build_couette(M, 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cs.Ac, Eigen::EigenvaluesOnly);
    EXPECT_GT(es.eigenvalues().cwiseAbs().minCoeff(), 0.05) << "M=" << M;
  }
}

TEST(couette, sc_is_a_submatrix_of_full_s) {
  const int M = 5;
  const CouetteSystem cs = build_couette(M, 1.0);
  MomentBasis basis(M);
  const Eigen::MatrixXd S = assemble_s(basis);
  for (int i = 0; i < cs.half(); ++i)
    for (int j = 0; j < cs.half(); ++j) {
      const int pi = basis.even_position({1, 2 * i, 0});
      const int pj = basis.even_position({1, 2 * j, 0});
      EXPECT_NEAR(cs.Sc(i, j), S(pi, pj), 1e-14);
    }
}

TEST(couette, chain_matches_full_transport_matrix) {
  // The chain system is the restriction of the full 3D transport matrix to
  // the indices e1 + k e2 (which live in the ball of order M+1), reordered
  // into the (even k, odd k) block layout.
  const int M = 5;
  const CouetteSystem cs = build_couette(M, 1.0);
  const MomentSystem sys = make_bgk_system(M + 1);
  const int K = cs.half();
  auto block_index = [&](int k) { return (k % 2 == 0) ? k / 2 : K + (k - 1) / 2; };
  for (int a = 0; a <= M; ++a)
    for (int b = 0; b <= M; ++b) {
      const double full = sys.A2(sys.basis.position({1, a, 0}), sys.basis.position({1, b, 0}));
      EXPECT_NEAR(cs.Ac(block_index(a), block_index(b)), full, 1e-14)
          << "a=" << a << " b=" << b;
    }
}

TEST(couette, knudsen_basis_invariants) {
  for (int M : {3, 5, 7, 9}) {
    const CouetteSystem cs = build_couette(M, 1.0);
    const CouetteKnudsenBasis kb = couette_knudsen_basis(cs);
    const int r = cs.half() - 1;
    // 2 Re Re^T = I
    EXPECT_LE((2.0 * kb.Re * kb.Re.transpose() - Eigen::MatrixXd::Identity(r, r))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
    // Mc' Ro = Re Lambda
    EXPECT_LE((kb.Mc_trim * kb.Ro - kb.Re * kb.lambda.asDiagonal()).cwiseAbs().maxCoeff(), 1e-12)
        << "M=" << M;
    // assembled R orthogonal and diagonalising
    Eigen::MatrixXd R(2 * r, 2 * r);
    R.topLeftCorner(r, r) = kb.Re;
    R.topRightCorner(r, r) = kb.Re;
    R.bottomLeftCorner(r, r) = kb.Ro;
    R.bottomRightCorner(r, r) = -kb.Ro;
    EXPECT_LE(
        (R.transpose() * R - Eigen::MatrixXd::Identity(2 * r, 2 * r)).cwiseAbs().maxCoeff(),
        1e-12);
    Eigen::MatrixXd Ahat = Eigen::MatrixXd::Zero(2 * r, 2 * r);
    Ahat.topRightCorner(r, r) = kb.Mc_trim;
    Ahat.bottomLeftCorner(r, r) = kb.Mc_trim.transpose();
    Eigen::VectorXd d(2 * r);
    d.head(r) = kb.lambda;
    d.tail(r) = -kb.lambda;
    EXPECT_LE((Ahat * R - R * d.asDiagonal()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(couette, slip_constant_positive) {
  for (int M : {3, 5, 7, 9}) {
    const CouetteSlipConstants sc = couette_slip_constants(M, 1.0);
    EXPECT_GT(sc.K_M, 0.0) << "M=" << M;
    EXPECT_TRUE(std::isfinite(sc.J_M)) << "M=" << M;
  }
}

TEST(couette, slip_constant_alternative_route) {
  // Through the congruence H_M [[1, g^T],[0, 2Re^T]] = chi_hat Sc + diag(0, 2 Re L Re^T):
  // K_M = (1, g^T) [chi_hat Sc + diag(0, 2 Re L Re^T)]^{-1} (1; g), manifestly positive.
  for (double chi : {1.0, 0.5}) {
    const CouetteSystem cs = build_couette(7, chi);
    const CouetteKnudsenBasis kb = couette_knudsen_basis(cs);
    const CouetteSlipConstants sc = couette_slip_constants(cs, kb);
    const int K = cs.half();
    const int r = K - 1;
    Eigen::MatrixXd P = cs.chi_hat * cs.Sc;
    P.bottomRightCorner(r, r) +=
        2.0 * kb.Re * kb.lambda.asDiagonal() * kb.Re.transpose();
    Eigen::VectorXd e(K);
    e(0) = 1.0;
    e.tail(r) = sc.g;
    const double alt = e.dot(P.llt().solve(e));
    EXPECT_NEAR(sc.K_M, alt, 1e-12 * std::abs(alt));
  }
}

TEST(couette, slip_constant_grows_toward_specular) {
  const double k1 = couette_slip_constants(7, 1.0).K_M;
  const double k05 = couette_slip_constants(7, 0.5).K_M;
  const double k025 = couette_slip_constants(7, 0.25).K_M;
  EXPECT_GT(k05, k1);
  EXPECT_GT(k025, k05);
}

TEST(couette, slip_constant_tracks_velocity_slip_coefficient) {
  // Cross-module consistency: K_M stays within 5% of sqrt(2) k0 for
  // matching M (a logged metric, not an identity).
  for (int M : {9, 11}) {
    const double km = couette_slip_constants(M, 1.0).K_M;
    const double k0 = slip_coefficients(M, 1.0).k0;
    EXPECT_NEAR(km, std::sqrt(2.0) * k0, 0.05 * std::sqrt(2.0) * k0) << "M=" << M;
  }
}

TEST(couette, strict_dissipativity_for_odd_orders) {
  for (int M : {3, 5, 7, 9}) {
    const CouetteSystem cs = build_couette(M, 1.0);
    const DissipativityCertificate cert = check_strict_dissipativity(cs.Bc, cs.Ac);
    EXPECT_TRUE(cert.found) << "M=" << M;
    EXPECT_GT(cert.c, 0.0);
    EXPECT_GT(cert.margin, 0.0);
  }
}

TEST(couette, dissipativity_fails_for_large_constant) {
  const CouetteSystem cs = build_couette(5, 1.0);
  EXPECT_LT(dissipativity_margin(cs.Bc, cs.Ac, 10.0), 0.0);
}

TEST(couette, dissipativity_degrades_toward_specular) {
  const CouetteSystem c1 = build_couette(5, 1.0);
  const CouetteSystem c05 = build_couette(5, 0.5);
  const CouetteSystem c01 = build_couette(5, 0.1);
  const double a = check_strict_dissipativity(c1.Bc, c1.Ac).c;
  const double b = check_strict_dissipativity(c05.Bc, c05.Ac).c;
  const double c = check_strict_dissipativity(c01.Bc, c01.Ac).c;
  EXPECT_GE(a, b);
  EXPECT_GE(b, c);
}

TEST(couette, wall_signal_compatibility) {
  const WallSignal w = cosine_wall();
  EXPECT_NEAR(w.u(0.0), 0.0, 1e-15);
  EXPECT_NEAR(w.u(0.25), 1.0, 1e-12);
  EXPECT_NEAR(w.dudt(0.0), 0.0, 1e-12);
}
