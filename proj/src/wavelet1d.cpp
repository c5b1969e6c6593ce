#include "corsing/wavelet1d.hpp"

#include <cmath>
#include <stdexcept>

namespace corsing {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Euclidean remainder, valid for negative a.
inline Eigen::Index wrap(Eigen::Index a, Eigen::Index n) {
  Eigen::Index r = a % n;
  return r < 0 ? r + n : r;
}

void check_levels(int l0, int L) {
  if (l0 < 2) throw std::invalid_argument("coarsest level l0 must be >= 2");
  if (L <= l0) throw std::invalid_argument("finest level L must exceed l0");
}

}  // namespace

std::vector<WaveletIndex> enumerate_indices(int l0, int L) {
  check_levels(l0, L);
  std::vector<WaveletIndex> out;
  out.reserve(std::size_t{1} << L);
  for (int k = 0; k < (1 << l0); ++k) out.push_back({l0 - 1, k});
  for (int lev = l0; lev < L; ++lev)
    for (int k = 0; k < (1 << lev); ++k) out.push_back({lev, k});
  return out;
}

std::size_t canonical_position(const WaveletIndex& idx, int l0) {
  if (idx.level == l0 - 1) return static_cast<std::size_t>(idx.shift);
  return (std::size_t{1} << idx.level) + static_cast<std::size_t>(idx.shift);
}

WaveletIndex index_at(std::size_t position, int l0) {
  if (position < (std::size_t{1} << l0))
    return {l0 - 1, static_cast<int>(position)};
  int lev = 0;
  while ((std::size_t{2} << lev) <= position) ++lev;
  return {lev, static_cast<int>(position - (std::size_t{1} << lev))};
}

int level_of_size(Eigen::Index n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("coefficient length must be a power of two >= 2");
  int L = 0;
  while ((Eigen::Index{1} << L) < n) ++L;
  return L;
}

CVector dwt_analysis(const CVector& fine, int l0) {
  const int L = level_of_size(fine.size());
  check_levels(l0, L);

  CVector out = fine;
  CVector scratch(fine.size());
  for (int lev = L - 1; lev >= l0; --lev) {
    const Eigen::Index n2 = Eigen::Index{1} << (lev + 1);
    const Eigen::Index n = n2 / 2;
    for (Eigen::Index k = 0; k < n; ++k) {
      Complex lo = 0.0, hi = 0.0;
      for (int t = 0; t < 5; ++t)
        lo += FilterBank::a_dual[t] * out[wrap(2 * k + FilterBank::a_dual_min + t, n2)];
      for (int t = 0; t < 3; ++t)
        hi += FilterBank::b_dual[t] * out[wrap(2 * k + FilterBank::b_dual_min + t, n2)];
      scratch[k] = kInvSqrt2 * lo;
      scratch[n + k] = kInvSqrt2 * hi;
    }
    out.head(n2) = scratch.head(n2);
  }
  return out;
}

CVector dwt_synthesis(const CVector& coeffs, int l0) {
  const int L = level_of_size(coeffs.size());
  check_levels(l0, L);

  CVector out = coeffs;
  CVector scratch(coeffs.size());
  for (int lev = l0; lev < L; ++lev) {
    const Eigen::Index n = Eigen::Index{1} << lev;
    const Eigen::Index n2 = 2 * n;
    scratch.head(n2).setZero();
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex lo = kInvSqrt2 * out[k];
      const Complex hi = kInvSqrt2 * out[n + k];
      for (int t = 0; t < 3; ++t)
        scratch[wrap(2 * k + FilterBank::a_min + t, n2)] += FilterBank::a[t] * lo;
      for (int t = 0; t < 5; ++t)
        scratch[wrap(2 * k + FilterBank::b_min + t, n2)] += FilterBank::b[t] * hi;
    }
    out.head(n2) = scratch.head(n2);
  }
  return out;
}

CVector interpolate_to_level(const std::function<double(double)>& u, int L) {
  if (L < 1 || L > 30) throw std::invalid_argument("level L out of range");
  const Eigen::Index n = Eigen::Index{1} << L;
  const double h = 1.0 / static_cast<double>(n);
  const double scale = std::exp2(-0.5 * L);
  CVector c(n);
  for (Eigen::Index k = 0; k < n; ++k) c[k] = scale * u(static_cast<double>(k) * h);
  return c;
}

CVector nodal_to_scaling(const CVector& nodal) {
  const int L = level_of_size(nodal.size());
  return std::exp2(-0.5 * L) * nodal;
}

}  // namespace corsing
