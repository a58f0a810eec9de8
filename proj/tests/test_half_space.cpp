#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "gradbc/half_space.hpp"

using namespace gradbc;

TEST(half_space, requires_modified_boundary_rows) {
  const MomentSystem sys = make_bgk_system(3);
  const BoundaryOperator grad = build_bc(sys, 1.0, BcKind::grad);
  EXPECT_THROW(HalfSpaceOperator(sys, grad), std::invalid_argument);
}

TEST(half_space, zero_data_gives_zero_solution) {
  const MomentSystem sys = make_bgk_system(4);
  const BoundaryOperator bc = build_bc(sys, 1.0, BcKind::modified);
  const KnudsenLayerSolution sol =
      solve_half_space(sys, bc, Eigen::VectorXd::Zero(sys.size() - 5));
  EXPECT_LE(sol.coeffs.cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LE(sol.ge_h.cwiseAbs().maxCoeff(), 1e-13);
}

TEST(half_space, linearity_in_the_data) {
  const MomentSystem sys = make_bgk_system(5);
  const BoundaryOperator bc = build_bc(sys, 1.0, BcKind::modified);
  HalfSpaceOperator op(sys, bc);
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(sys.size() - 5);
  eta(h_column(sys.basis, {1, 1, 0})) = 0.37;
  eta(h_column(sys.basis, {3, 0, 0})) = -0.11;
  const KnudsenLayerSolution s1 = op.solve(eta);
  const KnudsenLayerSolution s2 = op.solve(2.0 * eta);
  EXPECT_LE((2.0 * s1.coeffs - s2.coeffs).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LE((2.0 * s1.ge_h - s2.ge_h).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LE((2.0 * s1.at(0.7) - s2.at(0.7)).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(half_space, solution_satisfies_ode_and_bc) {
  const MomentSystem sys = make_bgk_system(4);
  const BoundaryOperator bc = build_bc(sys, 0.8, BcKind::modified);
  HalfSpaceOperator op(sys, bc);
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(sys.size() - 5);
  eta(h_column(sys.basis, {1, 1, 0})) = 1.0;
  const KnudsenLayerSolution sol = op.solve(eta);
  // ODE residual at a few z via the modal derivative
  for (double z : {0.0, 0.4, 2.0}) {
    Eigen::VectorXd dW = Eigen::VectorXd::Zero(sys.size());
    for (int i = 0; i < sol.coeffs.size(); ++i)
      dW -= sol.coeffs(i) / sol.lambdas(i) * std::exp(-z / sol.lambdas(i)) * sol.modes.col(i);
    EXPECT_LE((sys.A2 * dW + sys.Q * sol.at(z)).cwiseAbs().maxCoeff(), 1e-9);
  }
  // boundary rows: B (W(0) - h) = 0 with h = Ge ge_h + H eta
  const Eigen::VectorXd h = sys.Ge * sol.ge_h + sys.H * eta;
  EXPECT_LE((bc.B * (sol.boundary() - h)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(half_space, velocity_slip_spot_value_table) {
  // frozen reference values at M=8, chi=1 (five decimals)
  const SlipCoefficientSet c = slip_coefficients(8, 1.0);
  EXPECT_NEAR(c.k0, 1.00772, 1e-5);
  EXPECT_NEAR(c.t0, 0.37848, 1e-5);
  EXPECT_NEAR(c.k2, -0.75697, 1e-5);
}

TEST(half_space, odd_order_spot_value_table) {
  const SlipCoefficientSet c = slip_coefficients(9, 1.0);
  EXPECT_NEAR(c.k1, 0.44040, 1e-5);
  EXPECT_NEAR(c.t1, 1.29213, 1e-5);
  EXPECT_NEAR(c.t2, -1.41403, 1e-5);
}

TEST(half_space, gamma_bgk_all_one) {
  for (int M = 3; M <= 9; ++M) {
    const auto g = gamma_coefficients(make_bgk_system(M));
    EXPECT_NEAR(g[0], 1.0, 1e-10) << "M=" << M;
    EXPECT_NEAR(g[1], 1.0, 1e-10) << "M=" << M;
    EXPECT_NEAR(g[2], 1.0, 1e-10) << "M=" << M;
  }
}

TEST(half_space, gamma_scaling_with_collision_strength) {
  // gamma1 is homogeneous of degree -1 in Q.
  const MomentSystem sys = make_bgk_system(4);
  const MomentSystem scaled = make_system_with_collision(4, 2.0 * sys.Q);
  const auto g = gamma_coefficients(scaled);
  EXPECT_NEAR(g[0], 0.5, 1e-12);
  EXPECT_NEAR(g[1], 0.5, 1e-12);
}

TEST(half_space, gamma_hard_sphere_if_data_available) {
  // GRADBC_HARD_SPHERE_Q names a whitespace-separated dense N x N collision
  // matrix for some order M (first line: M). Tabulated hard-sphere data
  // must give the known transport coefficients at large M.
  const char* path = std::getenv("GRADBC_HARD_SPHERE_Q");
  if (!path) GTEST_SKIP() << "no tabulated hard-sphere collision matrix supplied";
  std::ifstream in(path);
  ASSERT_TRUE(in.good()) << "cannot open " << path;
  int M = 0;
  in >> M;
  const MomentBasis basis(M);
  Eigen::MatrixXd Q(basis.size(), basis.size());
  for (int i = 0; i < Q.rows(); ++i)
    for (int j = 0; j < Q.cols(); ++j) ASSERT_TRUE(static_cast<bool>(in >> Q(i, j)));
  const MomentSystem sys = make_system_with_collision(M, Q);
  const auto g = gamma_coefficients(sys);
  EXPECT_NEAR(g[0], 1.270042, 2e-2);
  EXPECT_NEAR(g[1], 1.922284, 2e-2);
}

TEST(half_space, positive_slip_lengths_across_accommodation) {
  for (double chi : {0.25, 0.5, 1.0})
    for (int M : {5, 7, 9}) {
      const SlipCoefficientSet c = slip_coefficients(M, chi);
      EXPECT_GT(c.k0, 0.0) << "M=" << M << " chi=" << chi;
      EXPECT_GT(c.t1, 0.0) << "M=" << M << " chi=" << chi;
    }
}

TEST(half_space, driver_linearity) {
  const MomentSystem sys = make_bgk_system(5);
  const BoundaryOperator bc = build_bc(sys, 1.0, BcKind::modified);
  HalfSpaceOperator op(sys, bc);
  const Eigen::VectorXd drive = elemental_driver(sys, op, DriverKind::r12);
  const Eigen::VectorXd a = op.solve_elemental(drive).ge_h;
  const Eigen::VectorXd b = op.solve_elemental(3.0 * drive).ge_h;
  EXPECT_LE((3.0 * a - b).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(half_space, monotone_approach_to_converged_values) {
  // |coefficient(M) - converged reference| decreases with the order, per
  // parity family.
  const double ref_k0 = 1.01619, ref_t0 = 0.38316, ref_k2 = -0.76632;
  const double ref_k1 = 0.44046, ref_t1 = 1.30272, ref_t2 = -1.42758;
  double dk0 = 1e9, dt0 = 1e9, dk2 = 1e9;
  for (int M : {4, 6, 8, 10, 12}) {
    const SlipCoefficientSet c = slip_coefficients(M, 1.0);
    EXPECT_LT(std::abs(c.k0 - ref_k0), dk0) << "M=" << M;
    EXPECT_LT(std::abs(c.t0 - ref_t0), dt0) << "M=" << M;
    EXPECT_LT(std::abs(c.k2 - ref_k2), dk2) << "M=" << M;
    dk0 = std::abs(c.k0 - ref_k0);
    dt0 = std::abs(c.t0 - ref_t0);
    dk2 = std::abs(c.k2 - ref_k2);
  }
  double dk1 = 1e9, dt1 = 1e9, dt2 = 1e9;
  for (int M : {3, 5, 7, 9, 11}) {
    const SlipCoefficientSet c = slip_coefficients(M, 1.0);
    EXPECT_LT(std::abs(c.k1 - ref_k1), dk1) << "M=" << M;
    EXPECT_LT(std::abs(c.t1 - ref_t1), dt1) << "M=" << M;
    if (M > 3) EXPECT_LT(std::abs(c.t2 - ref_t2), dt2) << "M=" << M;
    dk1 = std::abs(c.k1 - ref_k1);
    dt1 = std::abs(c.t1 - ref_t1);
    dt2 = std::abs(c.t2 - ref_t2);
  }
}

TEST(half_space, reproducible_coefficient_sets) {
  const SlipCoefficientSet a = slip_coefficients(6, 1.0);
  const SlipCoefficientSet b = slip_coefficients(6, 1.0);
  EXPECT_EQ(a.k0, b.k0);
  EXPECT_EQ(a.t0, b.t0);
  EXPECT_EQ(a.k2, b.k2);
  EXPECT_EQ(a.gamma3, b.gamma3);
}
