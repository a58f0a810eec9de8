#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gradbc/couette.hpp"

namespace gradbc {

struct CouetteRunConfig {
  double eps = 0.1;
  int n_cells = 2000;
  double dt = 0.0;  // 0: automatic (CFL-bound for the moment solver)
  double T = 0.25;
  std::vector<double> times;  // snapshot instants; must land on the step grid
  double cfl = 0.9;
};

namespace detail {

/// Smallest step count >= T/dt_max whose grid hits every requested time.
inline int aligned_step_count(double T, double dt_max, const std::vector<double>& times) {
  if (!(T > 0.0) || !(dt_max > 0.0))
    throw std::invalid_argument("aligned_step_count: T and dt must be positive");
  for (double t : times)
    if (t < -1e-12 || t > T * (1.0 + 1e-12))
      throw std::invalid_argument("aligned_step_count: snapshot time outside [0, T]");
  const int n0 = std::max(1, static_cast<int>(std::ceil(T / dt_max - 1e-12)));
  for (int n = n0; n < n0 + 100000; ++n) {
    const double dt = T / n;
    bool ok = true;
    for (double t : times) {
      const double k = t / dt;
      if (std::abs(k - std::round(k)) > 1e-6) {
        ok = false;
        break;
      }
    }
    if (ok) return n;
  }
  throw std::invalid_argument("aligned_step_count: snapshot times incommensurate with T");
}

inline std::vector<int> snapshot_steps(double T, int n_steps, const std::vector<double>& times) {
  std::vector<int> steps;
  const double dt = T / n_steps;
  for (double t : times) steps.push_back(static_cast<int>(std::round(t / dt)));
  return steps;
}

}  // namespace detail

/// Space-time output of the chain moment solver: full moment snapshots at
/// cell centres plus the extracted velocity (component w_0).
struct MomentProfile {
  Eigen::VectorXd x;  // cell centres
  double dx = 0.0;
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> W;  // (M+1) x n_cells
  std::vector<Eigen::VectorXd> u;
};

/// First-order upwind fluxes with the relaxation term taken implicitly.
/// Wall closure at x = 0: incoming characteristic variables solved from
/// B_c W = b_c with the outgoing ones copied from the first interior cell;
/// zero far state at x = 1.
inline MomentProfile solve_moment_couette(const CouetteSystem& cs, const WallSignal& wall,
                                          const CouetteRunConfig& cfg) {
  if (std::abs(wall.u(0.0)) > 1e-12)
    throw std::invalid_argument("solve_moment_couette: wall signal must vanish at t = 0");
  if (cfg.n_cells < 4) throw std::invalid_argument("solve_moment_couette: need >= 4 cells");
  const int K = cs.half();
  const int S = cs.size();
  const int nc = cfg.n_cells;
  const double h = 1.0 / nc;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cs.Ac);
  const Eigen::VectorXd lam = es.eigenvalues();
  const Eigen::MatrixXd R = es.eigenvectors();
  const double lam_max = lam.cwiseAbs().maxCoeff();
  const double dt_cfl = cfg.cfl * h / lam_max;
  const double dt_target = cfg.dt > 0.0 ? cfg.dt : dt_cfl;
  if (dt_target > dt_cfl * (1.0 + 1e-12))
    throw std::invalid_argument("solve_moment_couette: dt violates the CFL bound");
  const int n_steps = detail::aligned_step_count(cfg.T, dt_target, cfg.times);
  const double dt = cfg.T / n_steps;

  const Eigen::MatrixXd Ap = R * lam.cwiseMax(0.0).asDiagonal() * R.transpose();
  const Eigen::MatrixXd Am = R * lam.cwiseMin(0.0).asDiagonal() * R.transpose();

  // boundary closure: [B_c; R_-^T] W_b = [b_c; R_-^T W_1]
  Eigen::MatrixXd Rneg(S, K);
  int c = 0;
  for (int i = 0; i < S; ++i)
    if (lam(i) < 0.0) Rneg.col(c++) = R.col(i);
  if (c != K) throw std::runtime_error("solve_moment_couette: boundary is characteristic");
  Eigen::MatrixXd bmat(S, S);
  bmat.topRows(K) = cs.Bc;
  bmat.bottomRows(K) = Rneg.transpose();
  Eigen::PartialPivLU<Eigen::MatrixXd> blu(bmat);

  const Eigen::ArrayXd relax = 1.0 / (1.0 + (dt / cfg.eps) * cs.Qc_diag.array());

  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(S, nc);
  Eigen::MatrixXd F(S, nc + 1);

  MomentProfile out;
  out.x.resize(nc);
  for (int i = 0; i < nc; ++i) out.x(i) = (i + 0.5) * h;
  out.dx = h;
  const std::vector<int> snap_at = detail::snapshot_steps(cfg.T, n_steps, cfg.times);
  auto snapshot = [&](int step) {
    for (size_t s = 0; s < snap_at.size(); ++s) {
      if (snap_at[s] == step) {
        out.times.push_back(cfg.times[s]);
        out.W.push_back(W);
        out.u.push_back(W.row(0).transpose());
      }
    }
  };
  snapshot(0);

  Eigen::VectorXd rhs(S), Wb(S);
  for (int step = 0; step < n_steps; ++step) {
    const double t = step * dt;
    rhs.head(K) = cs.wall_rhs(wall.u(t));
    rhs.tail(K) = Rneg.transpose() * W.col(0);
    Wb = blu.solve(rhs);
    F.col(0) = cs.Ac * Wb;
    F.middleCols(1, nc - 1) = Ap * W.leftCols(nc - 1) + Am * W.rightCols(nc - 1);
    F.col(nc) = Ap * W.col(nc - 1);
    W -= (dt / h) * (F.rightCols(nc) - F.leftCols(nc));
    W.array().colwise() *= relax;
    snapshot(step + 1);
  }
  return out;
}

/// Wall closure of the implicit NS solver:
///   u(0) - c1 du/dx(0) - c2 d2u/dx2(0) = u^w(t) + rhs_dt du^w/dt(t).
/// One-sided second-order stencils keep the truncation error below the
/// eps^2 slip term.
struct NsWallClosure {
  double c1 = 0.0;
  double c2 = 0.0;
  double rhs_dt = 0.0;
};

struct NsProfile {
  Eigen::VectorXd x;  // nodes 0..1
  double dx = 0.0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> u;
};

inline NsProfile solve_ns_couette(const WallSignal& wall, const CouetteRunConfig& cfg,
                                  double gamma1, const NsWallClosure& bc) {
  if (std::abs(wall.u(0.0)) > 1e-12)
    throw std::invalid_argument("solve_ns_couette: wall signal must vanish at t = 0");
  if (cfg.n_cells < 8)
    throw std::invalid_argument("solve_ns_couette: wall stencils need >= 8 intervals");
  const int N = cfg.n_cells;
  const double h = 1.0 / N;
  const double dt_target = cfg.dt > 0.0 ? cfg.dt : h;
  const int n_steps = detail::aligned_step_count(cfg.T, dt_target, cfg.times);
  const double dt = cfg.T / n_steps;
  const double mu = dt * cfg.eps * gamma1 / (h * h);

  // unknowns u_0 .. u_{N-1}; u_N = 0 eliminated
  std::vector<Eigen::Triplet<double>> trip;
  trip.emplace_back(0, 0, 1.0 + 1.5 * bc.c1 / h - 2.0 * bc.c2 / (h * h));
  trip.emplace_back(0, 1, -2.0 * bc.c1 / h + 5.0 * bc.c2 / (h * h));
  trip.emplace_back(0, 2, 0.5 * bc.c1 / h - 4.0 * bc.c2 / (h * h));
  trip.emplace_back(0, 3, bc.c2 / (h * h));
  for (int i = 1; i < N; ++i) {
    trip.emplace_back(i, i, 1.0 + 2.0 * mu);
    trip.emplace_back(i, i - 1, -mu);
    if (i + 1 < N) trip.emplace_back(i, i + 1, -mu);
  }
  Eigen::SparseMatrix<double> A(N, N);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("solve_ns_couette: wall closure made the system singular");

  Eigen::VectorXd u = Eigen::VectorXd::Zero(N);
  NsProfile out;
  out.x.resize(N + 1);
  for (int i = 0; i <= N; ++i) out.x(i) = i * h;
  out.dx = h;
  const std::vector<int> snap_at = detail::snapshot_steps(cfg.T, n_steps, cfg.times);
  auto snapshot = [&](int step) {
    for (size_t s = 0; s < snap_at.size(); ++s) {
      if (snap_at[s] == step) {
        out.times.push_back(cfg.times[s]);
        Eigen::VectorXd full(N + 1);
        full.head(N) = u;
        full(N) = 0.0;
        out.u.push_back(full);
      }
    }
  };
  snapshot(0);

  Eigen::VectorXd rhs(N);
  for (int step = 0; step < n_steps; ++step) {
    const double t1 = (step + 1) * dt;
    rhs = u;
    rhs(0) = wall.u(t1) + bc.rhs_dt * wall.dudt(t1);
    u = lu.solve(rhs);
    snapshot(step + 1);
  }
  return out;
}

/// Linear interpolation of a node profile at arbitrary points in [0, 1].
inline Eigen::VectorXd sample_profile(const Eigen::VectorXd& nodes_u, double h,
                                      const Eigen::VectorXd& x) {
  const int N = static_cast<int>(nodes_u.size()) - 1;
  Eigen::VectorXd v(x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double s = std::min(std::max(x(i) / h, 0.0), static_cast<double>(N));
    const int j = std::min(static_cast<int>(s), N - 1);
    const double w = s - j;
    v(i) = (1.0 - w) * nodes_u(j) + w * nodes_u(j + 1);
  }
  return v;
}

}  // namespace gradbc
