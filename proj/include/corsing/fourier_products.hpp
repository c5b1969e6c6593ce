#pragma once

#include <span>

#include "corsing/tensor_basis.hpp"

namespace corsing {

/// ||xi_q||^2_{H^1} = 1 + (2 pi ||q||_2)^2 for the Fourier mode xi_q.
double test_h1_normsq(std::span<const long> q);

/// (phi_{level,shift}, xi_q): 2^{-level/2} for q = 0, exactly 0 when
/// q 2^{-level} is a nonzero integer, and otherwise
/// 2^{-level/2} e^{-2 pi i q k 2^{-level}} sinc^2(q 2^{-level})
/// with sinc(t) = sin(pi t)/(pi t).
Complex phi_fourier(int level, int shift, long q);

/// (psi_{level,shift}, xi_q) via the refinement expansion
/// psi_{l,k} = 2^{-1/2} sum_m b_m phi_{l+1,2k+m}; exactly 0 for q = 0.
Complex psi_fourier(int level, int shift, long q);

/// Dispatches to phi_fourier or psi_fourier for one tensor factor.
Complex factor_fourier(const TrialFactor& f, long q);

/// prod_d (theta_d, xi_{q_d}) over the axis factors of trial function j.
Complex tensor_product_coeff(const TrialBasis& basis, std::size_t j,
                             std::span<const long> q);

}  // namespace corsing
