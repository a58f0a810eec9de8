#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

extern "C" {
void dggev_(const char* jobvl, const char* jobvr, const int* n, double* a, const int* lda,
            double* b, const int* ldb, double* alphar, double* alphai, double* beta, double* vl,
            const int* ldvl, double* vr, const int* ldvr, double* work, const int* lwork,
            int* info);
}

namespace gradbc {

/// Classified spectrum of the pencil A_2 x = lambda Q x with Q symmetric
/// positive semi-definite. Finite modes carry eigenvectors; the decaying
/// half-space solutions are spanned by the positive class.
struct SpectralDecomposition {
  Eigen::VectorXd pos_lambda;   // ascending
  Eigen::MatrixXd pos_vectors;  // Q-orthonormal within near-degenerate groups
  Eigen::VectorXd neg_lambda;   // ascending
  Eigen::MatrixXd neg_vectors;
  int n_zero = 0;      // algebraic count of lambda = 0 (Null(A2) directions)
  int n_infinite = 0;  // algebraic count at infinity (Null(Q) + its Jordan extensions)
  bool near_zero_warning = false;  // some |lambda| landed within the zero threshold

  int n_positive() const { return static_cast<int>(pos_lambda.size()); }
  int n_negative() const { return static_cast<int>(neg_lambda.size()); }
  int total() const { return n_positive() + n_negative() + n_zero + n_infinite; }
};

namespace detail {

inline void qz_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, Eigen::VectorXd& alphar,
                     Eigen::VectorXd& alphai, Eigen::VectorXd& beta, Eigen::MatrixXd& VR) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXd a = A;
  Eigen::MatrixXd b = B;
  alphar.resize(n);
  alphai.resize(n);
  beta.resize(n);
  VR.resize(n, n);
  int info = 0;
  int lwork = -1;
  double wsize = 0.0;
  dggev_("N", "V", &n, a.data(), &n, b.data(), &n, alphar.data(), alphai.data(), beta.data(),
         nullptr, &n, VR.data(), &n, &wsize, &lwork, &info);
  lwork = static_cast<int>(wsize);
  std::vector<double> work(lwork);
  dggev_("N", "V", &n, a.data(), &n, b.data(), &n, alphar.data(), alphai.data(), beta.data(),
         nullptr, &n, VR.data(), &n, work.data(), &lwork, &info);
  if (info != 0) throw std::runtime_error("generalized_eigen: dggev failed to converge");
}

/// First component exceeding tol*max|x| made positive.
inline void fix_sign(Eigen::Ref<Eigen::VectorXd> x) {
  const double scale = x.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > 1e-8 * scale) {
      if (x(i) < 0.0) x = -x;
      return;
    }
  }
}

}  // namespace detail

/// Solve and classify A_2 x = lambda Q x.
///
/// Thresholds: |beta| <= 1e-10 max|beta| flags the infinite class, and
/// |lambda| <= 1e-9 max|lambda| the zero class (the structural zero modes of
/// A_2 sit far below that). Real near-degenerate QZ output that surfaces as
/// a conjugate pair with small imaginary part is split into the two real
/// vectors spanning the same invariant plane.
inline SpectralDecomposition generalized_eigen(const Eigen::MatrixXd& A2,
                                               const Eigen::MatrixXd& Q) {
  const int N = static_cast<int>(A2.rows());
  if (A2.cols() != N || Q.rows() != N || Q.cols() != N)
    throw std::invalid_argument("generalized_eigen: square matrices of equal size required");

  Eigen::VectorXd ar, ai, beta;
  Eigen::MatrixXd VR;
  detail::qz_solve(A2, Q, ar, ai, beta, VR);

  const double beta_max = beta.cwiseAbs().maxCoeff();
  const double beta_tol = 1e-10 * beta_max;

  struct FiniteMode {
    double lambda;
    Eigen::VectorXd x;
  };
  std::vector<FiniteMode> finite;
  SpectralDecomposition dec;

  for (int j = 0; j < N; ++j) {
    if (std::abs(beta(j)) <= beta_tol) {
      ++dec.n_infinite;
      continue;
    }
    Eigen::VectorXd x(N);
    if (ai(j) != 0.0) {
      // dggev stores the pair as (v_re, v_im) in adjacent columns; both real
      // parts of the plane are kept, each with lambda = Re(alpha)/beta.
      const bool first = j + 1 < N && ai(j) > 0.0;
      x = first ? VR.col(j) : VR.col(j - 1);
      const Eigen::VectorXd xi = first ? VR.col(j + 1) : VR.col(j);
      const double lam = ar(j) / beta(j);
      const double imag_ratio = std::abs(ai(j) / beta(j)) / (std::abs(lam) + 1.0);
      if (imag_ratio > 1e-6)
        throw std::runtime_error(
            "generalized_eigen: genuinely complex eigenvalue in a symmetric pencil");
      finite.push_back({lam, first ? x : xi});
      continue;
    }
    x = VR.col(j);
    finite.push_back({ar(j) / beta(j), x});
  }

  double lam_max = 0.0;
  for (const auto& f : finite) lam_max = std::max(lam_max, std::abs(f.lambda));
  const double zero_tol = 1e-9 * lam_max;

  std::vector<FiniteMode> pos, neg;
  for (auto& f : finite) {
    if (std::abs(f.lambda) <= zero_tol) {
      ++dec.n_zero;
      if (f.lambda != 0.0 && std::abs(f.lambda) > 0.1 * zero_tol) dec.near_zero_warning = true;
    } else if (f.lambda > 0.0) {
      pos.push_back(std::move(f));
    } else {
      neg.push_back(std::move(f));
    }
  }

  auto by_lambda = [](const FiniteMode& a, const FiniteMode& b) { return a.lambda < b.lambda; };
  std::stable_sort(pos.begin(), pos.end(), by_lambda);
  std::stable_sort(neg.begin(), neg.end(), by_lambda);

  // Q-orthonormalise within near-degenerate groups; across distinct
  // eigenvalues Q-orthogonality is automatic for a symmetric pencil.
  auto polish = [&](std::vector<FiniteMode>& modes, Eigen::VectorXd& lam, Eigen::MatrixXd& X) {
    const int k = static_cast<int>(modes.size());
    lam.resize(k);
    X.resize(N, k);
    int g0 = 0;
    while (g0 < k) {
      int g1 = g0 + 1;
      while (g1 < k && std::abs(modes[g1].lambda - modes[g0].lambda) <= 1e-8 * (lam_max + 1.0))
        ++g1;
      for (int i = g0; i < g1; ++i) {
        Eigen::VectorXd v = modes[i].x;
        for (int l = g0; l < i; ++l) {
          const Eigen::VectorXd& u = modes[l].x;
          v -= (u.dot(Q * v)) * u;
        }
        const double qn = std::sqrt(v.dot(Q * v));
        if (!(qn > 0.0))
          throw std::runtime_error("generalized_eigen: defective eigenvector group");
        modes[i].x = v / qn;
      }
      g0 = g1;
    }
    for (int i = 0; i < k; ++i) {
      detail::fix_sign(modes[i].x);
      lam(i) = modes[i].lambda;
      X.col(i) = modes[i].x;
    }
  };
  polish(pos, dec.pos_lambda, dec.pos_vectors);
  polish(neg, dec.neg_lambda, dec.neg_vectors);
  return dec;
}

}  // namespace gradbc
