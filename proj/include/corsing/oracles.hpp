#pragma once

#include "corsing/assembly.hpp"

namespace corsing {
namespace oracle {

/// Pointwise evaluation of the periodized, L^2-normalized scaling function
/// phi_{level,shift} (hat) and wavelet psi_{level,shift} via the explicit
/// refinement expansion. These never touch the transform code, so they serve
/// as independent references.
double phi_point(int level, int shift, double x, bool periodized = true);
double psi_point(int level, int shift, double x, bool periodized = true);

/// Composite Gauss-Legendre quadrature of g over [0,1], with the subdivision
/// chosen from the dyadic breakpoints of the trial function and the
/// oscillation scale of the integrand.
Complex integrate_periodic(const std::function<Complex(double)>& g,
                           int breakpoint_level, long max_freq);

/// Quadrature value of (theta_{level,shift}, xi_q) for theta = phi or psi.
Complex factor_fourier_quadrature(bool wavelet, int level, int shift, long q);

/// Quadrature value of the raw 1D bilinear form
/// a(psi_j, xi_q) = (eta psi', xi_q') + (beta psi', xi_q) + (rho psi, xi_q)
/// for a trial function given by canonical position, L^2-normalized pairing.
Complex bilinear_form_quadrature(const AdrProblem& problem, std::size_t j, long q);

/// Derivative of the trial function (piecewise constant), for the quadrature.
double phi_point_deriv(int level, int shift, double x, bool periodized = true);
double psi_point_deriv(int level, int shift, double x, bool periodized = true);

/// Nodal values of the dual scaling/wavelet function on [support] after
/// `iterations` cascade steps started from the hat (piecewise linear iterates).
struct CascadeFunction {
  double lo = 0.0;       ///< left end of the support
  double step = 1.0;     ///< node spacing
  std::vector<double> values;

  double eval(double x) const;
};
CascadeFunction dual_scaling_cascade(int iterations);
CascadeFunction dual_wavelet_cascade(int iterations);

/// Inner product of the level-L hat phi_{L,j} with the periodized translate
/// 2^{l/2} g(2^l x - k) of a cascade iterate (both piecewise linear, the
/// integral is exact).
double hat_vs_cascade(int L, int j, const CascadeFunction& g, int level, int shift);

/// Exact H^1 quantities of a periodic piecewise-linear function given by its
/// nodal values on the 2^{-J} grid.
double pw_linear_l2_normsq(const Eigen::VectorXd& nodal);
double pw_linear_h1_seminormsq(const Eigen::VectorXd& nodal);

}  // namespace oracle
}  // namespace corsing
