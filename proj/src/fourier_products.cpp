#include "corsing/fourier_products.hpp"

#include <cmath>

namespace corsing {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

double test_h1_normsq(std::span<const long> q) {
  double sq = 0.0;
  for (long qi : q) sq += static_cast<double>(qi) * static_cast<double>(qi);
  return 1.0 + 4.0 * M_PI * M_PI * sq;
}

Complex phi_fourier(int level, int shift, long q) {
  const double scale = std::exp2(-0.5 * level);
  if (q == 0) return scale;
  const long period = 1L << level;
  const long qm = ((q % period) + period) % period;
  if (qm == 0) return 0.0;  // sin(pi * integer), exact zero

  // sin(pi q / 2^level) with the integer part of q/2^level reduced exactly.
  double sval = std::sin(M_PI * static_cast<double>(qm) / static_cast<double>(period));
  if (((q - qm) / period) & 1L) sval = -sval;
  const double t = static_cast<double>(q) * std::exp2(-level);
  const double s = sval / (M_PI * t);

  // Phase -2 pi q k / 2^level, reduced modulo one turn in integer arithmetic.
  const long km = ((static_cast<long>(shift) % period) + period) % period;
  const long num = (qm * km) % period;
  const double phase = -2.0 * M_PI * static_cast<double>(num) / static_cast<double>(period);
  return scale * s * s * std::polar(1.0, phase);
}

Complex psi_fourier(int level, int shift, long q) {
  if (q == 0) return 0.0;  // vanishing moment of the primal wavelet
  Complex acc = 0.0;
  for (int t = 0; t < 5; ++t) {
    const long j = 2L * shift + FilterBank::b_min + t;
    acc += FilterBank::b[t] * phi_fourier(level + 1, static_cast<int>(j), q);
  }
  return kInvSqrt2 * acc;
}

Complex factor_fourier(const TrialFactor& f, long q) {
  return f.wavelet ? psi_fourier(f.level, f.shift, q)
                   : phi_fourier(f.level, f.shift, q);
}

Complex tensor_product_coeff(const TrialBasis& basis, std::size_t j,
                             std::span<const long> q) {
  Complex prod = 1.0;
  for (int d = 0; d < basis.dim(); ++d) {
    prod *= factor_fourier(basis.factor(j, d), q[d]);
    if (prod == 0.0) return 0.0;
  }
  return prod;
}

}  // namespace corsing
