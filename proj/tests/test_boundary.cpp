#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "gradbc/boundary.hpp"

using namespace gradbc;

TEST(boundary, s_corner_entry_is_one) {
  MomentBasis basis(3);
  const Eigen::MatrixXd S = assemble_s(basis);
  EXPECT_NEAR(S(0, 0), 1.0, 1e-14);  // (sqrt(2pi)/2) * sqrt(2/pi)
}

TEST(boundary, s_symmetric_positive_definite) {
  for (int M = 3; M <= 9; ++M) {
    MomentBasis basis(M);
    const Eigen::MatrixXd S = assemble_s(basis);
    EXPECT_LE((S - S.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    EXPECT_GT(es.eigenvalues()(0), 0.0) << "M=" << M;
  }
}

TEST(boundary, mo_equals_a2_block) {
  // Half-range integral route vs transport recursion route.
  for (int M = 3; M <= 7; ++M) {
    MomentBasis basis(M);
    const Eigen::MatrixXd Mo = assemble_mo(basis);
    const Eigen::MatrixXd A2 = assemble_transport(basis, 2);
    const int m = basis.even_count();
    const int n = basis.odd_count();
    EXPECT_LE((Mo - A2.topRightCorner(m, n)).cwiseAbs().maxCoeff(), 1e-13) << "M=" << M;
  }
}

TEST(boundary, mo_full_column_rank) {
  MomentBasis basis(5);
  const Eigen::MatrixXd Mo = assemble_mo(basis);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Mo);
  EXPECT_GT(svd.singularValues()(svd.singularValues().size() - 1), 1e-10);
}

TEST(boundary, e_is_shift_selector) {
  MomentBasis basis(4);
  const Eigen::MatrixXd E = assemble_e(basis);
  const int m = basis.even_count();
  const int n = basis.odd_count();
  for (int r = 0; r < n; ++r) {
    EXPECT_DOUBLE_EQ(E.row(r).sum(), 1.0);  // exactly one unit entry per row
    MultiIndex a = basis.index(m + r);
    a[1] -= 1;
    EXPECT_DOUBLE_EQ(E(r, basis.position(a)), 1.0);
  }
}

TEST(boundary, grad_rows_reproduce_product) {
  const MomentSystem sys = make_bgk_system(4);
  const BoundaryOperator op = build_bc(sys, 0.7, BcKind::grad);
  const int m = sys.basis.even_count();
  const int n = sys.basis.odd_count();
  Eigen::MatrixXd rows(m, sys.size());
  rows.leftCols(m) = op.chi_hat * op.S;
  rows.rightCols(n) = op.Mo;
  EXPECT_LE((op.B - op.E * rows).cwiseAbs().maxCoeff(), 0.0);
}

TEST(boundary, modified_rows_shape_and_rank) {
  for (int M = 3; M <= 7; ++M) {
    const MomentSystem sys = make_bgk_system(M);
    const BoundaryOperator op = build_bc(sys, 1.0, BcKind::modified);
    const int n = sys.basis.odd_count();
    EXPECT_EQ(op.B.rows(), n);
    EXPECT_EQ(op.B.cols(), sys.size());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op.B);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
    EXPECT_EQ(rank, n) << "M=" << M;
  }
}

TEST(boundary, modified_center_block_positive_definite) {
  for (double chi : {0.25, 0.6, 1.0}) {
    const MomentSystem sys = make_bgk_system(5);
    const BoundaryOperator op = build_bc(sys, chi, BcKind::modified);
    const Eigen::MatrixXd K = op.Mo.transpose() * op.S.llt().solve(op.Mo);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
    EXPECT_GT(es.eigenvalues()(0), 0.0);
  }
}

TEST(boundary, chi_validation) {
  const MomentSystem sys = make_bgk_system(3);
  EXPECT_THROW(build_bc(sys, 0.0, BcKind::modified), std::invalid_argument);
  EXPECT_NO_THROW(build_bc(sys, 0.0, BcKind::grad));
  EXPECT_THROW(build_bc(sys, 1.5, BcKind::grad), std::invalid_argument);
}

TEST(boundary, wall_vector_support_and_linearity) {
  MomentBasis basis(4);
  const Eigen::Vector3d uw(0.3, 0.0, -0.2);
  const Eigen::VectorXd b = wall_inhomogeneity(basis, 0.5, uw, 0.9);
  EXPECT_DOUBLE_EQ(b(basis.position({0, 0, 0})), 0.5);
  EXPECT_DOUBLE_EQ(b(basis.position({1, 0, 0})), 0.3);
  EXPECT_DOUBLE_EQ(b(basis.position({0, 0, 1})), -0.2);
  EXPECT_NEAR(b(basis.position({0, 2, 0})), 0.9 / std::sqrt(2.0), 1e-15);
  int nnz = 0;
  for (int i = 0; i < b.size(); ++i)
    if (b(i) != 0.0) ++nnz;
  EXPECT_LE(nnz, 7);
  // linear in the wall data, zero when all data vanish
  const Eigen::VectorXd b2 = wall_inhomogeneity(basis, 1.0, 2.0 * uw, 1.8);
  EXPECT_LE((2.0 * b - b2).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(wall_inhomogeneity(basis, 0.0, Eigen::Vector3d::Zero(), 0.0).cwiseAbs().maxCoeff(),
            0.0);
  EXPECT_THROW(wall_inhomogeneity(basis, 0.0, Eigen::Vector3d(0, 1, 0), 0.0),
               std::invalid_argument);
}
