#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gradbc/couette.hpp"

namespace gradbc {

struct AsymptoticConfig {
  double Y = 10.0;   // truncated stretched domain; layer fields decay Gaussian-fast
  int n_y = 2500;    // nodes on [0, Y]
  double dt = 1e-5;  // implicit Euler step of the layer equations
};

/// Three-scale approximate Couette solution: stretched-variable heat-layer
/// fields together with the modal exponential-layer corrections, assembled
/// per requested output time. The expansion is in powers of sqrt(eps) with
/// the wall scale z = x/eps and the diffusive scale y = x/sqrt(eps).
class CouetteAsymptotic {
 public:
  struct Snapshot {
    double t = 0.0;
    // stretched-layer fields on the y grid
    Eigen::VectorXd u0, u1, u2;
    Eigen::VectorXd sigma1, sigma2, w22;  // -du0/dy, -du1/dy, sqrt(2) d2u0/dy2
    Eigen::VectorXd sigma3, w23, w33;     // partial third order
    // exponential-layer amplitudes
    Eigen::VectorXd wm1, wm2;  // orders 1 and 2 at z = 0
    Eigen::VectorXd d;         // time derivative of wm1 at z = 0
  };

  CouetteAsymptotic(const CouetteSystem& cs, const CouetteKnudsenBasis& kb,
                    const CouetteSlipConstants& sc, AsymptoticConfig cfg)
      : cs_(cs), kb_(kb), sc_(sc), cfg_(cfg) {}

  const Snapshot& snapshot(size_t i) const { return snaps_.at(i); }
  size_t snapshot_count() const { return snaps_.size(); }
  double hy() const { return cfg_.Y / cfg_.n_y; }

  /// March the layer equations to T and record the requested times.
  void run(const WallSignal& wall, double T, std::vector<double> times);

  /// Full composite moment vector (chain layout) at one location.
  Eigen::VectorXd composite_state(size_t snap, double eps, double x) const;

  /// Viscous part of the composite velocity only (u0 + sqrt(eps) u1 + eps u2).
  double viscous_velocity(size_t snap, double eps, double x) const;

 private:
  struct Tridiag {
    Eigen::VectorXd a, b, c;  // sub, main, super
    void factor() {
      for (int i = 1; i < b.size(); ++i) {
        a(i) /= b(i - 1);
        b(i) -= a(i) * c(i - 1);
      }
    }
    Eigen::VectorXd solve(Eigen::VectorXd r) const {
      const int n = static_cast<int>(r.size());
      for (int i = 1; i < n; ++i) r(i) -= a(i) * r(i - 1);
      r(n - 1) /= b(n - 1);
      for (int i = n - 2; i >= 0; --i) r(i) = (r(i) - c(i) * r(i + 1)) / b(i);
      return r;
    }
  };

  Eigen::VectorXd dy(const Eigen::VectorXd& f) const;
  Eigen::VectorXd dyy(const Eigen::VectorXd& f) const;
  double wall_gradient(const Eigen::VectorXd& f) const {
    const double h = hy();
    return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
  }
  static double interp(const Eigen::VectorXd& f, double h, double y) {
    const int n = static_cast<int>(f.size()) - 1;
    if (y >= n * h) return 0.0;
    const double s = y / h;
    const int j = std::min(static_cast<int>(s), n - 1);
    const double w = s - j;
    return (1.0 - w) * f(j) + w * f(j + 1);
  }

  const CouetteSystem& cs_;
  const CouetteKnudsenBasis& kb_;
  const CouetteSlipConstants& sc_;
  AsymptoticConfig cfg_;
  std::vector<Snapshot> snaps_;
};

inline Eigen::VectorXd CouetteAsymptotic::dy(const Eigen::VectorXd& f) const {
  const int n = static_cast<int>(f.size());
  const double h = hy();
  Eigen::VectorXd g(n);
  g(0) = (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
  for (int i = 1; i + 1 < n; ++i) g(i) = (f(i + 1) - f(i - 1)) / (2.0 * h);
  g(n - 1) = (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
  return g;
}

inline Eigen::VectorXd CouetteAsymptotic::dyy(const Eigen::VectorXd& f) const {
  const int n = static_cast<int>(f.size());
  const double h = hy();
  Eigen::VectorXd g(n);
  g(0) = (2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) / (h * h);
  for (int i = 1; i + 1 < n; ++i) g(i) = (f(i + 1) - 2.0 * f(i) + f(i - 1)) / (h * h);
  g(n - 1) = (2.0 * f(n - 1) - 5.0 * f(n - 2) + 4.0 * f(n - 3) - f(n - 4)) / (h * h);
  return g;
}

inline void CouetteAsymptotic::run(const WallSignal& wall, double T, std::vector<double> times) {
  if (std::abs(wall.u(0.0)) > 1e-12)
    throw std::invalid_argument("CouetteAsymptotic: wall signal must vanish at t = 0");
  if (cfg_.n_y < 8) throw std::invalid_argument("CouetteAsymptotic: need >= 8 intervals");
  const int n = cfg_.n_y + 1;  // nodes
  const double h = hy();
  int n_steps = static_cast<int>(std::ceil(T / cfg_.dt - 1e-12));
  // land every output time on the grid exactly
  for (;; ++n_steps) {
    bool ok = true;
    for (double t : times) {
      const double k = t * n_steps / T;
      if (std::abs(k - std::round(k)) > 1e-6) {
        ok = false;
        break;
      }
    }
    if (ok) break;
    if (n_steps > 100000000) throw std::invalid_argument("CouetteAsymptotic: bad output times");
  }
  const double dt = T / n_steps;
  const double mu = dt / (h * h);

  // shared Dirichlet-Dirichlet implicit Euler operator
  Tridiag op;
  op.a = Eigen::VectorXd::Constant(n, -mu);
  op.b = Eigen::VectorXd::Constant(n, 1.0 + 2.0 * mu);
  op.c = Eigen::VectorXd::Constant(n, -mu);
  op.b(0) = 1.0;
  op.c(0) = 0.0;
  op.a(n - 1) = 0.0;
  op.b(n - 1) = 1.0;
  op.factor();

  Eigen::VectorXd u0 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd u1 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd u2 = Eigen::VectorXd::Zero(n);
  std::vector<double> g0_hist(n_steps + 1, 0.0);  // wall gradient of u0 per step

  const int r = cs_.half() - 1;
  const Eigen::VectorXd kap1 = sc_.kappa1.tail(r);
  const Eigen::VectorXd kap2 = sc_.kappa2.tail(r);

  struct Pending {
    double t;
    int step;
    Eigen::VectorXd u0m, u1m, u2m;  // fields one step before t
    bool have_minus = false;
    Snapshot snap;
    bool have_center = false;
  };
  std::vector<Pending> pend;
  for (double t : times) {
    Pending p;
    p.t = t;
    p.step = static_cast<int>(std::round(t / dt));
    pend.push_back(p);
  }
  snaps_.clear();
  snaps_.resize(times.size());

  Eigen::VectorXd u0_prev = u0;
  auto record = [&](int step) {
    for (auto& p : pend) {
      if (step == p.step - 1) {
        p.u0m = u0;
        p.u1m = u1;
        p.u2m = u2;
        p.have_minus = true;
      }
      if (step == p.step) {
        p.snap.t = p.t;
        p.snap.u0 = u0;
        p.snap.u1 = u1;
        p.snap.u2 = u2;
        p.have_center = true;
        if (p.step == 0) {
          p.u0m = u0;
          p.u1m = u1;
          p.u2m = u2;
          p.have_minus = true;
        }
      }
      if (step == p.step + 1 && p.have_center) {
        // derived fields at the centre, with centred time differences
        const double denom = (p.step == 0) ? dt : 2.0 * dt;
        Snapshot& s = p.snap;
        s.sigma1 = -dy(s.u0);
        s.sigma2 = -dy(s.u1);
        s.w22 = std::sqrt(2.0) * dyy(s.u0);
        const Eigen::VectorXd sigma1_m = -dy(p.u0m);
        const Eigen::VectorXd sigma1_p = -dy(u0);
        const Eigen::VectorXd dt_sigma1 = (sigma1_p - sigma1_m) / denom;
        s.sigma3 = -dt_sigma1 - dy(s.u2) - std::sqrt(2.0) * dy(s.w22);
        s.w23 = -std::sqrt(2.0) * dy(s.sigma2);
        s.w33 = -std::sqrt(3.0) * dy(s.w22);
        // layer amplitudes
        const double g0 = g0_hist[p.step];
        const double g0m = g0_hist[p.step == 0 ? 0 : p.step - 1];
        const double g0p = g0_hist[p.step + 1];
        const double g1 = wall_gradient(s.u1);
        s.wm1 = kap1 * g0;
        s.wm2 = kap1 * g1 + kap2 * wall.dudt(p.t);
        s.d = kap1 * ((g0p - g0m) / denom);
      }
    }
  };

  g0_hist[0] = 0.0;
  record(0);
  for (int step = 1; step <= n_steps; ++step) {
    const double t1 = step * dt;
    u0_prev = u0;
    Eigen::VectorXd rhs = u0;
    rhs(0) = wall.u(t1);
    rhs(n - 1) = 0.0;
    u0 = op.solve(rhs);
    g0_hist[step] = wall_gradient(u0);

    rhs = u1;
    rhs(0) = sc_.K_M * g0_hist[step];
    rhs(n - 1) = 0.0;
    u1 = op.solve(rhs);

    // source of the order-2 field: d/dy2 of the discrete time derivative of u0
    const Eigen::VectorXd src = dyy((u0 - u0_prev) / dt);
    rhs = u2 + dt * src;
    rhs(0) = sc_.K_M * wall_gradient(u1) + sc_.J_M * wall.dudt(t1);
    rhs(n - 1) = 0.0;
    u2 = op.solve(rhs);

    record(step);
  }
  // flush: snapshots at the final step never see step+1; extend history
  for (auto& p : pend) {
    if (p.have_center && p.snap.sigma1.size() == 0) {
      Snapshot& s = p.snap;
      const double denom = dt;  // one-sided at the final instant
      s.sigma1 = -dy(s.u0);
      s.sigma2 = -dy(s.u1);
      s.w22 = std::sqrt(2.0) * dyy(s.u0);
      const Eigen::VectorXd dt_sigma1 = (-dy(s.u0) + dy(p.u0m)) / denom;
      s.sigma3 = -dt_sigma1 - dy(s.u2) - std::sqrt(2.0) * dy(s.w22);
      s.w23 = -std::sqrt(2.0) * dy(s.sigma2);
      s.w33 = -std::sqrt(3.0) * dy(s.w22);
      const double g0 = g0_hist[p.step];
      const double g1 = wall_gradient(s.u1);
      s.wm1 = kap1 * g0;
      s.wm2 = kap1 * g1 + kap2 * wall.dudt(p.t);
      s.d = kap1 * ((g0_hist[p.step] - g0_hist[p.step - 1]) / dt);
    }
  }
  for (size_t i = 0; i < pend.size(); ++i) snaps_[i] = std::move(pend[i].snap);
}

inline Eigen::VectorXd CouetteAsymptotic::composite_state(size_t snap, double eps,
                                                          double x) const {
  const Snapshot& s = snaps_.at(snap);
  const int K = cs_.half();
  const int r = K - 1;
  const double se = std::sqrt(eps);
  const double y = x / se;
  const double z = x / eps;
  const double h = hy();

  Eigen::VectorXd W = Eigen::VectorXd::Zero(cs_.size());
  // stretched-layer part; chain layout (u, w2, w4, ..., w_{M-1}; sigma, w3, ..., w_M)
  W(0) = interp(s.u0, h, y) + se * interp(s.u1, h, y) + eps * interp(s.u2, h, y);
  W(1) = eps * interp(s.w22, h, y) + eps * se * interp(s.w23, h, y);
  W(K) = se * interp(s.sigma1, h, y) + eps * interp(s.sigma2, h, y) +
         eps * se * interp(s.sigma3, h, y);
  if (K > 1) W(K + 1) = eps * se * interp(s.w33, h, y);

  // exponential-layer part
  const Eigen::ArrayXd mu = kb_.lambda.array().inverse();
  const Eigen::ArrayXd decay = (-z * mu).exp();
  const Eigen::VectorXd x1 = (decay * s.wm1.array()).matrix();
  const Eigen::VectorXd x2 = (decay * s.wm2.array()).matrix();
  const Eigen::VectorXd e1 = kb_.Re * x1;
  const Eigen::VectorXd o1 = kb_.Ro * x1;
  const Eigen::VectorXd e2 = kb_.Re * x2;
  const Eigen::VectorXd o2 = kb_.Ro * x2;

  // third order: resonant particular solution driven by d(t)
  const Eigen::VectorXd w = kb_.Re.row(0).transpose();  // Re^T e_1
  const Eigen::VectorXd f = (decay * s.d.array()).matrix();
  Eigen::VectorXd xi1(r), xi2(r);
  for (int i = 0; i < r; ++i) {
    double acc1 = 0.0, acc2 = 0.0;
    for (int j = 0; j < r; ++j) {
      const double s1 = -((i == j) ? s.d(j) : 0.0) - 2.0 * w(i) * w(j) * s.d(j);
      const double s2v = -2.0 * w(i) * w(j) * s.d(j);
      const double mi = mu(i), mj = mu(j);
      if (std::abs(mi - mj) <= 1e-9 * mi)
        acc1 += mi * s1 * z * std::exp(-mi * z);
      else
        acc1 += mi * s1 * (std::exp(-mj * z) - std::exp(-mi * z)) / (mi - mj);
      acc2 += mi / (mi + mj) * s2v * std::exp(-mj * z);
    }
    xi1(i) = acc1;
    xi2(i) = acc2;
  }
  const Eigen::VectorXd e3 = kb_.Re * (xi1 + xi2);
  const Eigen::VectorXd o3 = kb_.Ro * (xi1 - xi2);
  const double sig3 = -std::sqrt(2.0) * (kb_.Re * (kb_.lambda.array() * f.array()).matrix())(0);
  const double u3 =
      -std::sqrt(2.0) * e3(0) -
      std::sqrt(2.0) * (kb_.Re * (kb_.lambda.array().square() * f.array()).matrix())(0);

  W(0) += se * (-std::sqrt(2.0) * e1(0)) + eps * (-std::sqrt(2.0) * e2(0)) + eps * se * u3;
  W(K) += eps * se * sig3;
  W.segment(1, r) += se * e1 + eps * e2 + eps * se * e3;
  W.segment(K + 1, r) += se * o1 + eps * o2 + eps * se * o3;
  return W;
}

inline double CouetteAsymptotic::viscous_velocity(size_t snap, double eps, double x) const {
  const Snapshot& s = snaps_.at(snap);
  const double se = std::sqrt(eps);
  const double y = x / se;
  const double h = hy();
  return interp(s.u0, h, y) + se * interp(s.u1, h, y) + eps * interp(s.u2, h, y);
}

}  // namespace gradbc
