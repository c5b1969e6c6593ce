#include "corsing/coherence.hpp"

#include <cmath>
#include <stdexcept>

namespace corsing {

namespace {

struct QStats {
  double norm2sq = 0.0;   // ||q||_2^2
  double norminf = 0.0;   // ||q||_inf
  int support = 0;        // ||q||_0
  double prod_abs = 1.0;  // prod_{d in supp} |q_d|
  double prod_4 = 1.0;    // prod_{d in supp} q_d^4
};

QStats q_stats(std::span<const long> q) {
  QStats st;
  for (long qi : q) {
    const double a = std::abs(static_cast<double>(qi));
    st.norm2sq += a * a;
    st.norminf = std::max(st.norminf, a);
    if (qi != 0) {
      ++st.support;
      st.prod_abs *= a;
      st.prod_4 *= a * a * a * a;
    }
  }
  return st;
}

}  // namespace

double nu_1d(long q, double N, double C) {
  if (q == 0) return C;
  const double a = std::abs(static_cast<double>(q));
  return C * std::min(N / (a * a), 1.0 / a);
}

double nu_1d_sharp(long q, double N, double eta_h1sq, double beta_h1sq,
                   double rho_h1sq) {
  if (q == 0) return eta_h1sq + beta_h1sq + rho_h1sq;
  const double a = std::abs(static_cast<double>(q));
  const double weight = eta_h1sq + beta_h1sq / (a * a) + rho_h1sq / (a * a * a * a);
  return weight * std::min(N / (a * a), 1.0 / a);
}

double nu_ani(std::span<const long> q, int l0, int L, int n) {
  const QStats st = q_stats(q);
  if (st.support == 0) return std::exp2(-(2.0 + n) * l0);
  const double first =
      std::exp2(static_cast<double>(3 * st.support - 2) * L) * st.norm2sq / st.prod_4;
  const double second = st.norm2sq / (st.norminf * st.norminf * st.prod_abs);
  return std::exp2(-static_cast<double>(n - st.support) * l0) * std::min(first, second);
}

double nu_iso(std::span<const long> q, int l0, int L, int n) {
  const QStats st = q_stats(q);
  if (st.support == 0) return std::exp2(-(2.0 + n) * l0);
  const double expo = 2.0 * (-0.5 * n + 2.0 * st.support - 1.0) * L;
  const double first = (1.0 + std::exp2(expo)) * st.norm2sq / st.prod_4;
  const double second = std::exp2(-static_cast<double>(n - st.support) * l0) *
                        st.norm2sq / (st.norminf * st.norminf * st.prod_abs);
  return std::min(first, second);
}

double nu_practical(std::span<const long> q) {
  const QStats st = q_stats(q);
  if (st.support == 0) return 1.0;
  return std::min(1.0, st.norm2sq / (st.norminf * st.norminf * st.prod_abs));
}

MeasureKind measure_kind_from_string(const std::string& name) {
  if (name == "uniform") return MeasureKind::Uniform;
  if (name == "thm4.3" || name == "thm43") return MeasureKind::Thm43;
  if (name == "sharp-1d" || name == "sharp1d") return MeasureKind::Sharp1D;
  if (name == "thm4.5" || name == "thm45") return MeasureKind::Thm45;
  if (name == "thm4.7" || name == "thm47") return MeasureKind::Thm47;
  if (name == "practical" || name == "nonuniform") return MeasureKind::Practical;
  throw std::invalid_argument("unknown measure kind: " + name);
}

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Uniform: return "uniform";
    case MeasureKind::Thm43: return "thm4.3";
    case MeasureKind::Sharp1D: return "sharp-1d";
    case MeasureKind::Thm45: return "thm4.5";
    case MeasureKind::Thm47: return "thm4.7";
    case MeasureKind::Practical: return "practical";
  }
  return "?";
}

double SamplingMeasure::total() const {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

std::vector<double> nu_on_grid(MeasureKind kind, const TestGrid& grid,
                               const MeasureParams& params) {
  const std::size_t M = grid.size();
  std::vector<double> nu(M);
  for (std::size_t i = 0; i < M; ++i) {
    const auto qa = grid.at(i);
    const std::span<const long> q(qa.data(), static_cast<std::size_t>(grid.n));
    switch (kind) {
      case MeasureKind::Uniform: nu[i] = 1.0; break;
      case MeasureKind::Thm43: nu[i] = nu_1d(q[0], params.N, params.C); break;
      case MeasureKind::Sharp1D:
        nu[i] = nu_1d_sharp(q[0], params.N, params.eta_h1sq, params.beta_h1sq,
                            params.rho_h1sq);
        break;
      case MeasureKind::Thm45: nu[i] = nu_ani(q, params.l0, params.L, grid.n); break;
      case MeasureKind::Thm47: nu[i] = nu_iso(q, params.l0, params.L, grid.n); break;
      case MeasureKind::Practical: nu[i] = nu_practical(q); break;
    }
  }
  return nu;
}

SamplingMeasure build_measure(MeasureKind kind, const TestGrid& grid,
                              const MeasureParams& params) {
  if ((kind == MeasureKind::Thm43 || kind == MeasureKind::Sharp1D) && grid.n != 1)
    throw std::invalid_argument("1D measure kind on a multi-dimensional grid");
  SamplingMeasure measure;
  measure.kind = kind;
  measure.p = nu_on_grid(kind, grid, params);
  double total = 0.0;
  for (double v : measure.p) {
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument("nu must be finite and positive on Q");
    total += v;
  }
  for (double& v : measure.p) v /= total;
  return measure;
}

SamplingMeasure build_measure(MeasureKind kind, const AdrProblem& problem) {
  MeasureParams params;
  params.N = std::exp2(static_cast<double>(problem.n) * problem.L);
  params.C = compute_constant_C(problem);
  params.l0 = problem.l0;
  params.L = problem.L;
  params.eta_h1sq = problem.eta.h1_normsq();
  params.beta_h1sq = problem.beta[0].h1_normsq();
  params.rho_h1sq = problem.rho.h1_normsq();
  return build_measure(kind, problem.test_grid(), params);
}

RRecommendation recommend_R(int s, double N, int n, double C, int L) {
  if (s < 1) throw std::invalid_argument("sparsity s must be >= 1");
  const double rate = (n == 1) ? C * s * N : C * s * std::pow(N, 3.0 - 2.0 / n);
  return {rate, 1L << L};
}

MRecommendation recommend_m(int s, double N, double eps, double C, int n, int l0) {
  if (s < 1 || static_cast<double>(s) > N)
    throw std::invalid_argument("sparsity s must satisfy 1 <= s <= N");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("eps must be in (0,1)");
  const double logs = std::log(N) + std::log(static_cast<double>(s)) + std::log(C);
  const double inner = s * std::log(std::exp(1.0) * N / (2.0 * s)) +
                       std::log(2.0 * s / eps);
  double theoretical = C * s * inner;
  if (n == 1) {
    theoretical *= logs;
  } else {
    theoretical *= std::exp2(static_cast<double>(n) * l0) * std::pow(logs, n);
  }
  const long empirical = static_cast<long>(std::ceil(2.0 * s * std::log(N)));
  return {theoretical, empirical};
}

Eigen::VectorXd empirical_coherence(const Eigen::MatrixXcd& B) {
  Eigen::VectorXd mu(B.rows());
  for (Eigen::Index i = 0; i < B.rows(); ++i)
    mu[i] = B.row(i).cwiseAbs2().maxCoeff();
  return mu;
}

}  // namespace corsing
