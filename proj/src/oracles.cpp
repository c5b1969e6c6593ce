#include "corsing/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace corsing {
namespace oracle {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double hat(double y) { return std::max(0.0, 1.0 - std::abs(y)); }
double hat_deriv(double y) {
  if (y <= -1.0 || y >= 1.0 || y == 0.0) return 0.0;
  return y < 0.0 ? 1.0 : -1.0;
}

double mother_psi(double y) {
  double acc = 0.0;
  for (int t = 0; t < 5; ++t)
    acc += FilterBank::b[t] * hat(2.0 * y - (FilterBank::b_min + t));
  return acc;
}

double mother_psi_deriv(double y) {
  double acc = 0.0;
  for (int t = 0; t < 5; ++t)
    acc += FilterBank::b[t] * 2.0 * hat_deriv(2.0 * y - (FilterBank::b_min + t));
  return acc;
}

// 12-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNodes[12] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr double kGlWeights[12] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

template <typename Mother, typename MotherD>
double periodized_point(int level, int shift, double x, bool periodized,
                        Mother mother, MotherD, double lo, double hi, bool deriv) {
  const double scale = std::exp2(0.5 * level) * (deriv ? std::exp2(level) : 1.0);
  double acc = 0.0;
  const double two_l = std::exp2(level);
  if (!periodized) return scale * mother(two_l * x - shift);
  // arguments 2^l (x + j) - k land in [lo, hi] for few j
  const long jmin = static_cast<long>(std::floor((lo + shift) / two_l - x)) - 1;
  const long jmax = static_cast<long>(std::ceil((hi + shift) / two_l - x)) + 1;
  for (long j = jmin; j <= jmax; ++j)
    acc += mother(two_l * (x + static_cast<double>(j)) - shift);
  return scale * acc;
}

}  // namespace

double phi_point(int level, int shift, double x, bool periodized) {
  return periodized_point(level, shift, x, periodized, hat, hat_deriv, -1.0, 1.0,
                          false);
}

double psi_point(int level, int shift, double x, bool periodized) {
  return periodized_point(level, shift, x, periodized, mother_psi,
                          mother_psi_deriv, -1.0, 2.0, false);
}

double phi_point_deriv(int level, int shift, double x, bool periodized) {
  return periodized_point(level, shift, x, periodized, hat_deriv, hat_deriv, -1.0,
                          1.0, true);
}

double psi_point_deriv(int level, int shift, double x, bool periodized) {
  return periodized_point(level, shift, x, periodized, mother_psi_deriv,
                          mother_psi_deriv, -1.0, 2.0, true);
}

Complex integrate_periodic(const std::function<Complex(double)>& g,
                           int breakpoint_level, long max_freq) {
  const long base = 1L << breakpoint_level;
  const long extra =
      std::max<long>(1, (2 * std::labs(max_freq) + base - 1) / base);
  const long cells = base * extra;
  const double h = 1.0 / static_cast<double>(cells);
  Complex acc = 0.0;
  for (long c = 0; c < cells; ++c) {
    const double mid = (static_cast<double>(c) + 0.5) * h;
    Complex cell = 0.0;
    for (int i = 0; i < 12; ++i)
      cell += kGlWeights[i] * g(mid + 0.5 * h * kGlNodes[i]);
    acc += 0.5 * h * cell;
  }
  return acc;
}

Complex factor_fourier_quadrature(bool wavelet, int level, int shift, long q) {
  auto g = [&](double x) -> Complex {
    const double v =
        wavelet ? psi_point(level, shift, x) : phi_point(level, shift, x);
    return v * std::polar(1.0, -kTwoPi * static_cast<double>(q) * x);
  };
  return integrate_periodic(g, level + 1, q);
}

Complex bilinear_form_quadrature(const AdrProblem& problem, std::size_t j, long q) {
  if (problem.n != 1)
    throw std::invalid_argument("quadrature oracle covers n = 1 only");
  const TrialBasis basis(1, problem.l0, problem.L, problem.mode);
  const TrialFactor f = basis.factor(j, 0);
  const long field_freq = std::max({problem.eta.max_abs_freq(),
                                    problem.beta[0].max_abs_freq(),
                                    problem.rho.max_abs_freq()});
  auto g = [&](double x) -> Complex {
    const double v = f.wavelet ? psi_point(f.level, f.shift, x)
                               : phi_point(f.level, f.shift, x);
    const double dv = f.wavelet ? psi_point_deriv(f.level, f.shift, x)
                                : phi_point_deriv(f.level, f.shift, x);
    const std::array<double, 1> xs = {x};
    const double eta = problem.eta.evaluate(xs);
    const double beta = problem.beta[0].evaluate(xs);
    const double rho = problem.rho.evaluate(xs);
    const Complex bar_xi = std::polar(1.0, -kTwoPi * static_cast<double>(q) * x);
    const Complex bar_xi_d = Complex(0.0, -kTwoPi * static_cast<double>(q)) * bar_xi;
    return eta * dv * bar_xi_d + beta * dv * bar_xi + rho * v * bar_xi;
  };
  return integrate_periodic(g, f.level + 1, q + field_freq);
}

double CascadeFunction::eval(double x) const {
  const double pos = (x - lo) / step;
  if (pos <= 0.0 || pos >= static_cast<double>(values.size() - 1)) return 0.0;
  const auto i = static_cast<std::size_t>(pos);
  const double t = pos - static_cast<double>(i);
  return (1.0 - t) * values[i] + t * values[i + 1];
}

CascadeFunction dual_scaling_cascade(int iterations) {
  CascadeFunction f;
  f.lo = -2.0;
  f.step = 1.0;
  f.values = {0.0, 0.0, 1.0, 0.0, 0.0};  // the hat sampled on integers
  for (int it = 0; it < iterations; ++it) {
    CascadeFunction next;
    next.lo = f.lo;
    next.step = 0.5 * f.step;
    next.values.assign(2 * (f.values.size() - 1) + 1, 0.0);
    const long inv_step = std::lround(1.0 / f.step);
    for (std::size_t i = 0; i < next.values.size(); ++i) {
      double acc = 0.0;
      for (int t = 0; t < 5; ++t) {
        const long k = FilterBank::a_dual_min + t;
        // f((2 x_i) - k) by exact nodal lookup
        const long idx = static_cast<long>(i) + (std::lround(f.lo) - k) * inv_step;
        if (idx >= 0 && idx < static_cast<long>(f.values.size()))
          acc += FilterBank::a_dual[t] * f.values[static_cast<std::size_t>(idx)];
      }
      next.values[i] = acc;
    }
    f = std::move(next);
  }
  return f;
}

CascadeFunction dual_wavelet_cascade(int iterations) {
  const CascadeFunction phi = dual_scaling_cascade(iterations);
  CascadeFunction f;
  f.step = 0.5 * phi.step;
  f.lo = -1.0;
  const std::size_t count = static_cast<std::size_t>(std::lround(3.0 / f.step)) + 1;
  f.values.assign(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = f.lo + static_cast<double>(i) * f.step;
    double acc = 0.0;
    for (int t = 0; t < 3; ++t)
      acc += FilterBank::b_dual[t] * phi.eval(2.0 * x - (FilterBank::b_dual_min + t));
    f.values[i] = acc;
  }
  return f;
}

double hat_vs_cascade(int L, int j, const CascadeFunction& g, int level, int shift) {
  // Integrate phi_{L,j}(x) * 2^{l/2} sum_p g(2^l (x+p) - k) over [0,1).
  const double two_l = std::exp2(level);
  auto gper = [&](double x) {
    double acc = 0.0;
    const double glo = g.lo, ghi = g.lo + g.step * static_cast<double>(g.values.size() - 1);
    const long pmin = static_cast<long>(std::floor((glo + shift) / two_l - x)) - 1;
    const long pmax = static_cast<long>(std::ceil((ghi + shift) / two_l - x)) + 1;
    for (long p = pmin; p <= pmax; ++p)
      acc += g.eval(two_l * (x + static_cast<double>(p)) - shift);
    return std::exp2(0.5 * level) * acc;
  };
  // Union grid of the two piecewise-linear functions; Simpson is exact per cell.
  int gJ = level;
  double s = g.step;
  while (s < 1.0) {
    s *= 2.0;
    ++gJ;
  }
  const int J = std::max(L, gJ);
  const long cells = 1L << J;
  const double h = 1.0 / static_cast<double>(cells);
  double acc = 0.0;
  for (long c = 0; c < cells; ++c) {
    const double x0 = static_cast<double>(c) * h;
    const double x1 = x0 + h, xm = x0 + 0.5 * h;
    const double f0 = phi_point(L, j, x0) * gper(x0);
    const double fm = phi_point(L, j, xm) * gper(xm);
    const double f1 = phi_point(L, j, x1) * gper(x1);
    acc += h / 6.0 * (f0 + 4.0 * fm + f1);
  }
  return acc;
}

double pw_linear_l2_normsq(const Eigen::VectorXd& nodal) {
  const Eigen::Index n = nodal.size();
  const double h = 1.0 / static_cast<double>(n);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = nodal[i], b = nodal[(i + 1) % n];
    acc += h / 3.0 * (a * a + a * b + b * b);
  }
  return acc;
}

double pw_linear_h1_seminormsq(const Eigen::VectorXd& nodal) {
  const Eigen::Index n = nodal.size();
  const double h = 1.0 / static_cast<double>(n);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = (nodal[(i + 1) % n] - nodal[i]) / h;
    acc += d * d * h;
  }
  return acc;
}

}  // namespace oracle
}  // namespace corsing
