#pragma once

#include <array>
#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gradbc {

/// Hermite multi-index (a1, a2, a3).
using MultiIndex = std::array<int, 3>;

inline int index_norm(const MultiIndex& a) { return a[0] + a[1] + a[2]; }

inline MultiIndex unit_index(int d) {
  MultiIndex e{0, 0, 0};
  e[d] = 1;
  return e;
}

/// Ordering of the moment variables: indices with even a2 come before
/// indices with odd a2; within one parity class the norm |a| decides;
/// ties are broken anti-lexicographically (the larger entry at the first
/// differing slot goes first).
inline bool index_less(const MultiIndex& a, const MultiIndex& b) {
  const int pa = a[1] & 1;
  const int pb = b[1] & 1;
  if (pa != pb) return pa < pb;
  const int na = index_norm(a);
  const int nb = index_norm(b);
  if (na != nb) return na < nb;
  for (int i = 0; i < 3; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

/// All multi-indices with |a| <= M in the canonical order. Usable for any
/// M >= 0; the moment systems themselves require M >= 3 (see MomentBasis).
inline std::vector<MultiIndex> ordered_multi_indices(int M) {
  if (M < 0) throw std::invalid_argument("ordered_multi_indices: M < 0");
  std::vector<MultiIndex> idx;
  idx.reserve((M + 1) * (M + 2) * (M + 3) / 6);
  for (int a1 = 0; a1 <= M; ++a1)
    for (int a2 = 0; a2 + a1 <= M; ++a2)
      for (int a3 = 0; a3 + a1 + a2 <= M; ++a3) idx.push_back({a1, a2, a3});
  std::sort(idx.begin(), idx.end(), index_less);
  return idx;
}

/// Ordered basis of moment variables up to total degree M.
///
/// Positions are 0-based. The even-a2 block occupies [0, m) and the odd-a2
/// block [m, N); inside a block the order is by norm, then anti-lex.
class MomentBasis {
 public:
  explicit MomentBasis(int M) : M_(M) {
    if (M < 3)
      throw std::invalid_argument(
          "MomentBasis: M >= 3 required (equilibrium subspace must separate)");
    idx_ = ordered_multi_indices(M);
    const int L = M_ + 1;
    lut_.assign(L * L * L, -1);
    for (int i = 0; i < static_cast<int>(idx_.size()); ++i) {
      const auto& a = idx_[i];
      lut_[(a[0] * L + a[1]) * L + a[2]] = i;
      if ((a[1] & 1) == 0) ++m_;
    }
    n_ = static_cast<int>(idx_.size()) - m_;
  }

  int order() const { return M_; }
  int size() const { return static_cast<int>(idx_.size()); }
  int even_count() const { return m_; }
  int odd_count() const { return n_; }

  const MultiIndex& index(int pos) const { return idx_[pos]; }

  bool contains(const MultiIndex& a) const {
    if (a[0] < 0 || a[1] < 0 || a[2] < 0) return false;
    return index_norm(a) <= M_;
  }

  /// Position of a multi-index in the full ordering.
  int position(const MultiIndex& a) const {
    if (!contains(a)) throw std::out_of_range("MomentBasis::position: |a| > M");
    const int L = M_ + 1;
    return lut_[(a[0] * L + a[1]) * L + a[2]];
  }

  /// Position within the even block (requires a2 even).
  int even_position(const MultiIndex& a) const {
    if (a[1] & 1) throw std::invalid_argument("even_position: a2 odd");
    return position(a);
  }

  /// Position within the odd block (requires a2 odd).
  int odd_position(const MultiIndex& a) const {
    if (!(a[1] & 1)) throw std::invalid_argument("odd_position: a2 even");
    return position(a) - m_;
  }

 private:
  int M_ = 0;
  int m_ = 0;
  int n_ = 0;
  std::vector<MultiIndex> idx_;
  std::vector<int> lut_;
};

}  // namespace gradbc
