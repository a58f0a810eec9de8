#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradbc/boundary.hpp"
#include "gradbc/moment_system.hpp"
#include "gradbc/pencil.hpp"

namespace gradbc {

/// Decaying solution of the half-space problem
///   A_2 dW/dz = -Q W,  z >= 0,   B (W(0) - h) = 0,   W(inf) = 0,
/// in modal form W(z) = sum_i c_i x_i exp(-z/lambda_i) over the positive
/// finite pencil modes, together with the induced equilibrium part of h.
struct KnudsenLayerSolution {
  Eigen::VectorXd coeffs;   // c_i
  Eigen::MatrixXd modes;    // x_i as columns
  Eigen::VectorXd lambdas;  // decay scales lambda_i > 0
  Eigen::VectorXd ge_h;     // [phi0, phi1, phi3, phi4]^T h

  Eigen::VectorXd at(double z) const {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(modes.rows());
    for (int i = 0; i < coeffs.size(); ++i)
      w += coeffs(i) * std::exp(-z / lambdas(i)) * modes.col(i);
    return w;
  }
  Eigen::VectorXd boundary() const { return modes * coeffs; }
};

/// Shared data for repeated half-space solves against one (system, bc):
/// the classified pencil and the factored boundary block [B X | -B G_e].
class HalfSpaceOperator {
 public:
  HalfSpaceOperator(const MomentSystem& sys, const BoundaryOperator& bc)
      : dec_(generalized_eigen(sys.A2, sys.Q)) {
    if (bc.kind != BcKind::modified)
      throw std::invalid_argument("HalfSpaceOperator: modified boundary rows required");
    const int n = sys.basis.odd_count();
    if (dec_.n_positive() + 4 != n)
      throw std::runtime_error(
          "HalfSpaceOperator: positive mode count != n-4; half-space problem not square "
          "(mis-assembled system)");
    BH_ = bc.B * sys.H;
    Eigen::MatrixXd sysmat(n, n);
    sysmat.leftCols(dec_.n_positive()) = bc.B * dec_.pos_vectors;
    sysmat.rightCols(4) = -bc.B * sys.Ge;
    lu_.compute(sysmat);
    const Eigen::VectorXd piv = lu_.matrixLU().diagonal().cwiseAbs();
    if (piv.minCoeff() <= 1e-12 * piv.maxCoeff())
      throw std::runtime_error("HalfSpaceOperator: singular boundary system");
    D_ = sys.H.transpose() * sys.Q * sys.H;
    Dllt_.compute(D_);
  }

  const SpectralDecomposition& decomposition() const { return dec_; }
  const Eigen::MatrixXd& relaxation_block() const { return D_; }  // H^T Q H

  /// Solve with the non-equilibrium data eta = H^T h given.
  KnudsenLayerSolution solve(const Eigen::VectorXd& eta) const {
    const int np = dec_.n_positive();
    Eigen::VectorXd rhs = BH_ * eta;
    Eigen::VectorXd sol = lu_.solve(rhs);
    KnudsenLayerSolution out;
    out.coeffs = sol.head(np);
    out.ge_h = sol.tail(4);
    out.modes = dec_.pos_vectors;
    out.lambdas = dec_.pos_lambda;
    return out;
  }

  /// Solve the elemental form B(G_e G_e^T h + W(0)) = B H (H^T Q H)^{-1} A.
  /// Identical linear system up to the sign of the equilibrium unknowns.
  KnudsenLayerSolution solve_elemental(const Eigen::VectorXd& drive) const {
    KnudsenLayerSolution out = solve(Dllt_.solve(drive));
    out.ge_h = -out.ge_h;
    return out;
  }

  Eigen::VectorXd apply_relaxation_inverse(const Eigen::VectorXd& v) const {
    return Dllt_.solve(v);
  }

 private:
  SpectralDecomposition dec_;
  Eigen::MatrixXd BH_;
  Eigen::MatrixXd D_;
  Eigen::LLT<Eigen::MatrixXd> Dllt_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

inline KnudsenLayerSolution solve_half_space(const MomentSystem& sys, const BoundaryOperator& bc,
                                             const Eigen::VectorXd& eta) {
  return HalfSpaceOperator(sys, bc).solve(eta);
}

/// Driving vectors of the elemental problems, as coordinates in the H basis.
enum class DriverKind { r12, s1, s2, sqrt2_Hr22, A2_r12, A2_s2 };

inline Eigen::VectorXd stress_driver(const MomentSystem& sys, int i, int d) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(sys.size());
  MultiIndex a{0, 0, 0};
  a[i - 1] += 1;
  a[d - 1] += 1;
  v(sys.basis.position(a)) = 1.0;
  return sys.H.transpose() * v;
}

inline Eigen::VectorXd heat_flux_driver(const MomentSystem& sys, int d) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(sys.size());
  MultiIndex a{0, 0, 0};
  a[d - 1] = 3;
  v(sys.basis.position(a)) = std::sqrt(1.5);
  for (int i = 0; i < 3; ++i) {
    if (i == d - 1) continue;
    MultiIndex b{0, 0, 0};
    b[d - 1] = 1;
    b[i] = 2;
    v(sys.basis.position(b)) = std::sqrt(0.5);
  }
  return sys.H.transpose() * v;
}

inline Eigen::VectorXd elemental_driver(const MomentSystem& sys, const HalfSpaceOperator& op,
                                        DriverKind kind) {
  switch (kind) {
    case DriverKind::r12:
      return stress_driver(sys, 1, 2);
    case DriverKind::s1:
      return heat_flux_driver(sys, 1);
    case DriverKind::s2:
      return heat_flux_driver(sys, 2);
    case DriverKind::sqrt2_Hr22:
      return std::sqrt(2.0) * stress_driver(sys, 2, 2);
    case DriverKind::A2_r12:
      return -sys.H.transpose() * sys.A2 * sys.H *
             op.apply_relaxation_inverse(stress_driver(sys, 1, 2));
    case DriverKind::A2_s2:
      return -sys.H.transpose() * sys.A2 * sys.H *
             op.apply_relaxation_inverse(heat_flux_driver(sys, 2));
  }
  throw std::logic_error("elemental_driver: unknown kind");
}

/// Slip/jump and transport coefficients extracted from the six elemental
/// half-space problems for one (M, chi).
struct SlipCoefficientSet {
  int M = 0;
  double chi = 1.0;
  std::string model = "bgk";
  double k0 = 0, t0 = 0, t1 = 0, k1 = 0, k2 = 0, t2 = 0;
  double gamma1 = 0, gamma2 = 0, gamma3 = 0;
};

inline const char* driver_name(DriverKind kind) {
  switch (kind) {
    case DriverKind::r12: return "velocity-slip";
    case DriverKind::s2: return "temperature-jump";
    case DriverKind::s1: return "thermal-creep";
    case DriverKind::sqrt2_Hr22: return "normal-stress";
    case DriverKind::A2_r12: return "second-order-viscous-slip";
    case DriverKind::A2_s2: return "second-order-temperature-jump";
  }
  return "?";
}

/// Viscosity, conductivity and cross coefficient from the collision matrix:
///   gamma1 = r12^T D^-1 r12,
///   gamma2 = (2/5) s1^T D^-1 s1,
///   gamma3 = r12^T D^-1 (H^T A2 H) D^-1 s1,        D = H^T Q H.
/// All three equal one for BGK.
inline std::array<double, 3> gamma_coefficients(const MomentSystem& sys) {
  const Eigen::MatrixXd D = sys.H.transpose() * sys.Q * sys.H;
  Eigen::LLT<Eigen::MatrixXd> llt(D);
  const Eigen::VectorXd r12 = stress_driver(sys, 1, 2);
  const Eigen::VectorXd s1 = heat_flux_driver(sys, 1);
  const Eigen::VectorXd a = llt.solve(r12);
  const Eigen::VectorXd b = llt.solve(s1);
  const double g1 = r12.dot(a);
  const double g2 = 0.4 * s1.dot(b);
  const double g3 = a.dot(sys.H.transpose() * (sys.A2 * (sys.H * b)));
  return {g1, g2, g3};
}

inline SlipCoefficientSet slip_coefficients(const MomentSystem& sys,
                                            const BoundaryOperator& bc) {
  HalfSpaceOperator op(sys, bc);
  SlipCoefficientSet out;
  out.M = sys.basis.order();
  out.chi = bc.chi;

  auto eq_part = [&](DriverKind kind) {
    try {
      return op.solve_elemental(elemental_driver(sys, op, kind)).ge_h;
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("slip_coefficients: ") + driver_name(kind) +
                               " problem failed: " + e.what());
    }
  };
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  out.k0 = s2 / 2.0 * eq_part(DriverKind::r12)(1);
  out.t1 = s3 / 3.0 * eq_part(DriverKind::s2)(3);
  out.t0 = 0.5 * eq_part(DriverKind::s1)(1);
  out.k1 = s6 / 3.0 * eq_part(DriverKind::sqrt2_Hr22)(3);
  out.k2 = 0.5 * eq_part(DriverKind::A2_r12)(1);
  out.t2 = s6 / 6.0 * eq_part(DriverKind::A2_s2)(3);

  const auto g = gamma_coefficients(sys);
  out.gamma1 = g[0];
  out.gamma2 = g[1];
  out.gamma3 = g[2];
  return out;
}

inline SlipCoefficientSet slip_coefficients(int M, double chi) {
  const MomentSystem sys = make_bgk_system(M);
  const BoundaryOperator bc = build_bc(sys, chi, BcKind::modified);
  return slip_coefficients(sys, bc);
}

}  // namespace gradbc
