#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "gradbc/multi_index.hpp"

namespace gradbc {

/// Transport matrix A_d with entries
///   A_d[a,b] = sqrt(a_d) d_{b,a-e_d} + sqrt(a_d+1) d_{b,a+e_d},
/// symmetric with nonzeros only between neighbours a -> a +- e_d.
inline Eigen::MatrixXd assemble_transport(const MomentBasis& basis, int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("assemble_transport: d must be 1..3");
  const int N = basis.size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    MultiIndex a = basis.index(i);
    const int ad = a[d - 1];
    MultiIndex up = a;
    up[d - 1] += 1;
    if (basis.contains(up)) {
      const double v = std::sqrt(ad + 1.0);
      const int j = basis.position(up);
      A(i, j) = v;
      A(j, i) = v;
    }
  }
  return A;
}

/// Null-space and complement data of a collision matrix.
struct CollisionStructure {
  Eigen::MatrixXd Q;   // N x N, symmetric PSD, Null(Q) spanned by G
  Eigen::MatrixXd G;   // N x 5, orthonormal: [phi0, phi1, phi2, phi3, phi4]
  Eigen::MatrixXd H;   // N x (N-5), orthonormal complement of G
  Eigen::MatrixXd Ge;  // N x 4: [phi0, phi1, phi3, phi4] (wall-normal velocity excluded)
};

namespace detail {

inline Eigen::MatrixXd equilibrium_basis(const MomentBasis& basis) {
  const int N = basis.size();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N, 5);
  G(basis.position({0, 0, 0}), 0) = 1.0;
  for (int i = 0; i < 3; ++i) G(basis.position(unit_index(i)), 1 + i) = 1.0;
  const double s3 = std::sqrt(3.0) / 3.0;
  for (int i = 0; i < 3; ++i) {
    MultiIndex a{0, 0, 0};
    a[i] = 2;
    G(basis.position(a), 4) = s3;
  }
  return G;
}

/// Complement of the equilibrium basis: unit columns everywhere except the
/// two columns replacing span{2e2, 2e3} inside the (2e1, 2e2, 2e3) plane.
inline Eigen::MatrixXd equilibrium_complement(const MomentBasis& basis) {
  const int N = basis.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N - 5);
  const int p2e1 = basis.position({2, 0, 0});
  const int p2e2 = basis.position({0, 2, 0});
  const int p2e3 = basis.position({0, 0, 2});
  const double r3 = std::sqrt(3.0);
  for (int pos = 0, col = 0; pos < N; ++pos) {
    const MultiIndex a = basis.index(pos);
    if (index_norm(a) <= 1 || pos == p2e1) continue;  // spanned by G together with 2e2/2e3 combos
    if (pos == p2e2) {
      H(p2e1, col) = r3 / 3.0;
      H(p2e2, col) = (-3.0 - r3) / 6.0;
      H(p2e3, col) = (3.0 - r3) / 6.0;
    } else if (pos == p2e3) {
      H(p2e1, col) = r3 / 3.0;
      H(p2e2, col) = (3.0 - r3) / 6.0;
      H(p2e3, col) = (-3.0 - r3) / 6.0;
    } else {
      H(pos, col) = 1.0;
    }
    ++col;
  }
  return H;
}

}  // namespace detail

/// Column of H associated with a multi-index (0-based). The five positions
/// {0, e1, e2, e3, 2e1} carry no H column.
inline int h_column(const MomentBasis& basis, const MultiIndex& a) {
  const int pos = basis.position(a);
  const int m = basis.even_count();
  if (index_norm(a) <= 1 || (a == MultiIndex{2, 0, 0}))
    throw std::invalid_argument("h_column: index has no complement column");
  return pos < m ? pos - 4 : pos - 5;
}

/// BGK collision structure: identity relaxation off the equilibrium
/// subspace, Q = I - G G^T.
inline CollisionStructure assemble_collision_bgk(const MomentBasis& basis) {
  CollisionStructure c;
  c.G = detail::equilibrium_basis(basis);
  c.H = detail::equilibrium_complement(basis);
  const int N = basis.size();
  c.Q = Eigen::MatrixXd::Identity(N, N) - c.G * c.G.transpose();
  c.Ge.resize(N, 4);
  c.Ge.col(0) = c.G.col(0);
  c.Ge.col(1) = c.G.col(1);
  c.Ge.col(2) = c.G.col(3);
  c.Ge.col(3) = c.G.col(4);
  return c;
}

/// Assembled linear moment system for one collision model.
struct MomentSystem {
  MomentBasis basis;
  Eigen::MatrixXd A1, A2, A3;
  Eigen::MatrixXd Q, G, H, Ge;

  int size() const { return basis.size(); }
};

inline MomentSystem make_bgk_system(int M) {
  MomentSystem s{MomentBasis(M), {}, {}, {}, {}, {}, {}, {}};
  s.A1 = assemble_transport(s.basis, 1);
  s.A2 = assemble_transport(s.basis, 2);
  s.A3 = assemble_transport(s.basis, 3);
  CollisionStructure c = assemble_collision_bgk(s.basis);
  s.Q = std::move(c.Q);
  s.G = std::move(c.G);
  s.H = std::move(c.H);
  s.Ge = std::move(c.Ge);
  return s;
}

/// Same system with an externally supplied collision matrix (e.g. tabulated
/// hard-sphere data). The matrix must be symmetric PSD and annihilate the
/// standard equilibrium basis.
inline MomentSystem make_system_with_collision(int M, const Eigen::MatrixXd& Q) {
  MomentSystem s = make_bgk_system(M);
  if (Q.rows() != s.size() || Q.cols() != s.size())
    throw std::invalid_argument("make_system_with_collision: size mismatch");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + Q.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("make_system_with_collision: Q not symmetric");
  if ((Q * s.G).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + Q.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("make_system_with_collision: Null(Q) != equilibrium subspace");
  s.Q = Q;
  return s;
}

/// Low-order macroscopic fields of a moment vector.
struct MacroState {
  double rho = 0.0;
  Eigen::Vector3d u = Eigen::Vector3d::Zero();
  double theta = 0.0;
  Eigen::Matrix3d sigma = Eigen::Matrix3d::Zero();
  Eigen::Vector3d q = Eigen::Vector3d::Zero();
};

inline MacroState moments_to_macro(const Eigen::VectorXd& W, const MomentBasis& basis) {
  if (W.size() != basis.size())
    throw std::invalid_argument("moments_to_macro: vector length != basis size");
  MacroState s;
  s.rho = W(basis.position({0, 0, 0}));
  for (int i = 0; i < 3; ++i) s.u(i) = W(basis.position(unit_index(i)));
  double tr = 0.0;
  for (int i = 0; i < 3; ++i) {
    MultiIndex a{0, 0, 0};
    a[i] = 2;
    tr += W(basis.position(a));
  }
  s.theta = std::sqrt(2.0) / 3.0 * tr;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      MultiIndex a{0, 0, 0};
      a[i] += 1;
      a[j] += 1;
      s.sigma(i, j) = std::sqrt(1.0 + (i == j ? 1.0 : 0.0)) * W(basis.position(a)) -
                      (i == j ? s.theta : 0.0);
    }
  for (int i = 0; i < 3; ++i) {
    double qi = 0.0;
    for (int j = 0; j < 3; ++j) {
      MultiIndex a{0, 0, 0};
      a[i] += 1;
      a[j] += 2;
      const double fact = (i == j) ? 6.0 : 2.0;  // (e_i + 2 e_j)!
      qi += std::sqrt(fact) * W(basis.position(a));
    }
    s.q(i) = 0.5 * qi;
  }
  return s;
}

}  // namespace gradbc
