#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradbc/half_space.hpp"

namespace gradbc {

/// Robin-type wall conditions for the linearised NS equations at x2 = 0,
/// with the Knudsen number folded into the weights:
///   u2 = 0
///   u_i - u_i^w = cu_n (du_i/dx2 + du_2/dx_i) + cu_t dtheta/dx_i + cu_nn d2u_i/dx2^2
///   th - th^w   = ct_n dtheta/dx2 + ct_nn d2theta/dx2^2 + ct_div du_2/dx2
struct NsSlipBc {
  double eps = 0.0;
  double cu_n = 0.0;   // sqrt(2) k0 eps
  double cu_t = 0.0;   // 2 t0 eps
  double cu_nn = 0.0;  // 2 k2 eps^2
  double ct_n = 0.0;   // sqrt(2) t1 eps
  double ct_nn = 0.0;  // 2 t2 eps^2
  double ct_div = 0.0; // k1 eps
};

inline NsSlipBc ns_slip_bc(const SlipCoefficientSet& c, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("ns_slip_bc: eps must be positive");
  NsSlipBc bc;
  bc.eps = eps;
  bc.cu_n = std::sqrt(2.0) * c.k0 * eps;
  bc.cu_t = 2.0 * c.t0 * eps;
  bc.cu_nn = 2.0 * c.k2 * eps * eps;
  bc.ct_n = std::sqrt(2.0) * c.t1 * eps;
  bc.ct_nn = 2.0 * c.t2 * eps * eps;
  bc.ct_div = c.k1 * eps;
  return bc;
}

/// Material coefficients of the linearised NS system: mu = gamma1 (shear
/// viscosity), lambda = gamma2 (heat conductivity).
struct NsCoefficients {
  double mu = 1.0;
  double lambda = 1.0;
};

inline NsCoefficients assemble_ns_system_coeffs(const std::array<double, 3>& gammas) {
  return NsCoefficients{gammas[0], gammas[1]};
}

/// One weighted derivative term of a boundary relation. Fields are labelled
/// by scale: "outer" lives on x2, "viscous" on the stretched y = x2/sqrt(eps).
struct SlipBcTerm {
  std::string field;       // "u_i", "u2", "theta"
  std::string scale;       // "outer" | "viscous" | "wall"
  int field_order;         // expansion order j of the referenced field
  std::string derivative;  // "dx2", "dxi", "dy", "dy2"
  std::string weight_name; // symbolic weight, e.g. "sqrt2*k0"
  double weight;           // numeric value
};

struct SlipBcRelation {
  std::string lhs;  // "u_i - u_i^w", "u2", "theta - theta^w"
  std::vector<SlipBcTerm> terms;
};

/// Boundary relations at one half-order of the expansion.
struct SlipBCRecord {
  int order_twice = 0;  // 0 (order 0), 1 (order 1/2), 2 (order 1)
  std::vector<SlipBcRelation> relations;
};

/// The three order-by-order records: no-slip at order 0, first normal
/// derivatives at order 1/2, and the tangential/cross/second-normal terms
/// at order 1. All weights come from one SlipCoefficientSet.
inline std::array<SlipBCRecord, 3> slip_bc_records(const SlipCoefficientSet& c) {
  const double s2 = std::sqrt(2.0);
  std::array<SlipBCRecord, 3> rec;

  rec[0].order_twice = 0;
  rec[0].relations.push_back({"u_i - u_i^w", {}});
  rec[0].relations.push_back({"theta - theta^w", {}});

  rec[1].order_twice = 1;
  rec[1].relations.push_back({"u2", {}});
  rec[1].relations.push_back(
      {"u_i - u_i^w", {{"u_i", "viscous", 0, "dy", "sqrt2*k0", s2 * c.k0}}});
  rec[1].relations.push_back(
      {"theta - theta^w", {{"theta", "viscous", 0, "dy", "sqrt2*t1", s2 * c.t1}}});

  rec[2].order_twice = 2;
  rec[2].relations.push_back({"u2", {}});
  rec[2].relations.push_back({"u_i - u_i^w",
                              {{"u_i", "outer", 0, "dx2", "sqrt2*k0", s2 * c.k0},
                               {"u2", "outer", 0, "dxi", "sqrt2*k0", s2 * c.k0},
                               {"u_i", "viscous", 1, "dy", "sqrt2*k0", s2 * c.k0},
                               {"theta", "outer", 0, "dxi", "2*t0", 2.0 * c.t0},
                               {"u_i", "viscous", 0, "dy2", "2*k2", 2.0 * c.k2}}});
  rec[2].relations.push_back({"theta - theta^w",
                              {{"theta", "viscous", 1, "dy", "sqrt2*t1", s2 * c.t1},
                               {"theta", "outer", 0, "dx2", "sqrt2*t1", s2 * c.t1},
                               {"theta", "viscous", 0, "dy2", "2*t2", 2.0 * c.t2},
                               {"u2", "viscous", 1, "dy", "k1", c.k1},
                               {"u2", "outer", 0, "dx2", "k1", c.k1}}});
  return rec;
}

}  // namespace gradbc
