#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <vector>

namespace corsing {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Biorthogonal B-spline filter bank of order (2,2).
///
/// Primal refinement: phi(x) = sum_k a_k phi(2x-k), psi(x) = sum_k b_k phi(2x-k).
/// Decomposition uses the dual pair (a_dual, b_dual); reconstruction uses (a, b).
/// All coefficients are dyadic rationals, so they are exact in double precision.
struct FilterBank {
  static constexpr int a_min = -1;  ///< primal lowpass offsets [-1, 1]
  static constexpr double a[3] = {0.5, 1.0, 0.5};

  static constexpr int a_dual_min = -2;  ///< dual lowpass offsets [-2, 2]
  static constexpr double a_dual[5] = {-0.25, 0.5, 1.5, 0.5, -0.25};

  static constexpr int b_min = -1;  ///< primal highpass offsets [-1, 3]
  static constexpr double b[5] = {0.25, 0.5, -1.5, 0.5, 0.25};

  static constexpr int b_dual_min = 0;  ///< dual highpass offsets [0, 2]
  static constexpr double b_dual[3] = {0.5, -1.0, 0.5};
};

/// One member of the periodized 1D trial basis.
///
/// level == l0-1 marks the coarsest scaling layer (phi_{l0,shift}); levels
/// l0 <= level < L are wavelets psi_{level,shift}. Shifts live modulo
/// 2^max(level, l0).
struct WaveletIndex {
  int level;
  int shift;

  bool is_scaling(int l0) const { return level == l0 - 1; }
  /// Dyadic scale of the underlying function (l0 for the scaling layer).
  int effective_level(int l0) const { return level < l0 ? l0 : level; }
};

/// Canonical basis enumeration: the 2^l0 scaling indices first, then the
/// wavelet levels l0..L-1 in ascending order with shifts ascending inside
/// each level (level-major, shift-minor). Every module of this project
/// indexes trial coefficients in exactly this order.
std::vector<WaveletIndex> enumerate_indices(int l0, int L);

/// Position of (level, shift) in the canonical order: shift for the scaling
/// layer, 2^level + shift for wavelet levels.
std::size_t canonical_position(const WaveletIndex& idx, int l0);

/// Inverse of canonical_position.
WaveletIndex index_at(std::size_t position, int l0);

/// Number of cascade levels L implied by a coefficient count 2^L.
/// Throws std::invalid_argument when n is not a power of two.
int level_of_size(Eigen::Index n);

/// Fast wavelet decomposition of 2^L level-L scaling coefficients into the
/// canonical coefficient vector (L - l0 cascade steps, periodic wrap-around,
/// dual filters).
CVector dwt_analysis(const CVector& fine, int l0);

/// Inverse of dwt_analysis (primal filters).
CVector dwt_synthesis(const CVector& coeffs, int l0);

/// Level-L scaling coefficients of the piecewise-linear interpolant of a
/// one-periodic function: c_k = 2^{-L/2} u(k 2^{-L}).
CVector interpolate_to_level(const std::function<double(double)>& u, int L);

/// Same sampling rule applied to precomputed nodal values u(k 2^{-L}).
CVector nodal_to_scaling(const CVector& nodal);

}  // namespace corsing
