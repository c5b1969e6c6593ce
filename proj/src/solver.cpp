#include "corsing/solver.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace corsing {

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<std::size_t> draw_tests(const SamplingMeasure& measure, int m,
                                    std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample count m must be >= 1");
  if (measure.p.empty()) throw std::invalid_argument("degenerate measure");
  std::vector<double> cdf(measure.p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < measure.p.size(); ++i) {
    acc += measure.p[i];
    cdf[i] = acc;
  }
  if (!(acc > 0.0) || !std::isfinite(acc))
    throw std::invalid_argument("degenerate measure");
  cdf.back() = std::max(cdf.back(), 1.0);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> tests(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double u =
        static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    tests[static_cast<std::size_t>(i)] =
        static_cast<std::size_t>(std::min<std::ptrdiff_t>(
            it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
  }
  return tests;
}

Eigen::VectorXd precondition(const SamplingMeasure& measure,
                             const std::vector<std::size_t>& tests, int m) {
  Eigen::VectorXd D(static_cast<Eigen::Index>(tests.size()));
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const double p = measure.p.at(tests[i]);
    if (!(p > 0.0)) throw std::invalid_argument("drawn test has zero probability");
    D[static_cast<Eigen::Index>(i)] = 1.0 / std::sqrt(static_cast<double>(m) * p);
  }
  return D;
}

CVector SparseSolution::dense(std::size_t N) const {
  CVector z = CVector::Zero(static_cast<Eigen::Index>(N));
  for (std::size_t t = 0; t < support.size(); ++t)
    z[static_cast<Eigen::Index>(support[t])] = coeffs[static_cast<Eigen::Index>(t)];
  return z;
}

namespace {

template <typename Scalar>
SparseSolution omp_core(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
                        const Eigen::Vector<Scalar, Eigen::Dynamic>& f, int s,
                        const OmpOptions& options) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;
  const Eigen::Index m = A.rows();
  const Eigen::Index N = A.cols();
  if (f.size() != m) throw std::invalid_argument("data length must match rows");
  if (s < 1 || s > std::min<Eigen::Index>(m, N))
    throw std::invalid_argument("sparsity s must satisfy 1 <= s <= min(m, N)");

  const Eigen::VectorXd col_norms = A.colwise().norm();
  const double f_norm = f.norm();

  SparseSolution sol;
  Matrix Q(m, s);  // orthonormal basis of the support columns
  Matrix R(s, s);  // A[:,support] = Q R
  R.setZero();
  Vector y(s);  // Q^* f accumulated per step
  Vector r = f;
  std::vector<char> used(static_cast<std::size_t>(N), 0);

  for (int step = 0; step < s; ++step) {
    if (r.norm() <= options.rtol * f_norm) break;

    // Column of maximal normalized correlation with the residual.
    const Vector corr = A.adjoint() * r;
    Eigen::Index best = -1;
    double best_score = -1.0;
    for (Eigen::Index j = 0; j < N; ++j) {
      if (used[static_cast<std::size_t>(j)] || col_norms[j] == 0.0) continue;
      const double score = std::abs(corr[j]) / col_norms[j];
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    if (best < 0) break;
    used[static_cast<std::size_t>(best)] = 1;
    sol.support.push_back(static_cast<std::size_t>(best));

    // Gram-Schmidt update of the thin QR factorization.
    const Eigen::Index t = step;
    Vector v = A.col(best);
    Vector h = Vector::Zero(s);
    if (t > 0) {
      h.head(t) = Q.leftCols(t).adjoint() * v;
      v.noalias() -= Q.leftCols(t) * h.head(t);
      Vector w = Q.leftCols(t).adjoint() * v;
      if (w.template lpNorm<Eigen::Infinity>() > options.reorth_tol * v.norm()) {
        h.head(t) += w;
        v.noalias() -= Q.leftCols(t) * w;
      }
    }
    const double v_norm = v.norm();
    if (v_norm <= options.rank_tol * col_norms[best]) {
      sol.rank_deficient = true;
      sol.support.pop_back();
      break;
    }
    Q.col(t) = v / v_norm;
    R.col(t).head(t) = h.head(t);
    R(t, t) = v_norm;
    y[t] = Q.col(t).dot(r);  // dot conjugates the left argument
    r.noalias() -= Q.col(t) * y[t];
  }

  const Eigen::Index t = static_cast<Eigen::Index>(sol.support.size());
  Vector coeffs;
  if (sol.rank_deficient) {
    // Minimum-norm least squares on the selected support.
    Matrix As(m, t);
    for (Eigen::Index i = 0; i < t; ++i)
      As.col(i) = A.col(static_cast<Eigen::Index>(sol.support[static_cast<std::size_t>(i)]));
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(As);
    coeffs = cod.solve(f);
    sol.residual_norm = (As * coeffs - f).norm();
  } else if (t > 0) {
    coeffs = R.topLeftCorner(t, t).template triangularView<Eigen::Upper>().solve(y.head(t));
    sol.residual_norm = r.norm();
  } else {
    sol.residual_norm = r.norm();
  }
  sol.coeffs = coeffs.template cast<Complex>();
  return sol;
}

}  // namespace

SparseSolution omp_solve(const Eigen::MatrixXcd& A, const CVector& f, int s,
                         const OmpOptions& options) {
  return omp_core<Complex>(A, f, s, options);
}

SparseSolution omp_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& f, int s,
                         const OmpOptions& options) {
  return omp_core<double>(A, f, s, options);
}

CompressedSystem build_compressed_system(const Assembler& assembler,
                                         const SamplingMeasure& measure,
                                         const std::vector<std::size_t>& tests,
                                         int m_drawn, std::uint64_t seed,
                                         bool dedup) {
  CompressedSystem sys;
  sys.seed = seed;
  sys.tests = tests;
  Eigen::VectorXd counts;
  if (dedup) {
    std::map<std::size_t, int> mult;
    for (std::size_t t : tests) ++mult[t];
    sys.tests.clear();
    counts.resize(static_cast<Eigen::Index>(mult.size()));
    Eigen::Index i = 0;
    for (const auto& [t, c] : mult) {
      sys.tests.push_back(t);
      counts[i++] = static_cast<double>(c);
    }
  }

  const std::size_t rows = sys.tests.size();
  const std::size_t N = assembler.basis().size();
  sys.A.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(N));
  std::vector<Complex> row(N);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto q = assembler.grid().at(sys.tests[i]);
    assembler.stiffness_row(std::span<const long>(q.data(), assembler.grid().n),
                            row.data(), true);
    for (std::size_t j = 0; j < N; ++j)
      sys.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  sys.f = sys.A * assembler.reference_coeffs();

  sys.D = precondition(measure, sys.tests, m_drawn);
  if (dedup)
    for (Eigen::Index i = 0; i < sys.D.size(); ++i)
      sys.D[i] *= std::sqrt(counts[i]);  // keeps E[(DA)*DA] = B*B
  return sys;
}

namespace {

CorsingResult solve_impl(const Assembler& assembler, int s,
                         const std::vector<std::size_t>& tests, int m_drawn,
                         const SamplingMeasure& measure, std::uint64_t seed,
                         const CorsingOptions& options) {
  if (assembler.reference_coeffs().size() == 0)
    throw std::logic_error("corsing_solve requires a manufactured solution");
  CorsingResult result;
  result.system =
      build_compressed_system(assembler, measure, tests, m_drawn, seed, options.dedup);

  const Eigen::MatrixXcd At = result.system.D.asDiagonal() * result.system.A;
  const CVector ft = result.system.D.cast<Complex>().cwiseProduct(result.system.f);
  if (options.real_coefficients) {
    // Real data: recover a real coefficient vector on the stacked system.
    const Eigen::Index rows = At.rows();
    Eigen::MatrixXd As(2 * rows, At.cols());
    As.topRows(rows) = At.real();
    As.bottomRows(rows) = At.imag();
    Eigen::VectorXd fs(2 * rows);
    fs.head(rows) = ft.real();
    fs.tail(rows) = ft.imag();
    result.solution = omp_solve(As, fs, s, options.omp);
  } else {
    result.solution = omp_solve(At, ft, s, options.omp);
  }
  result.coeffs = result.solution.dense(assembler.basis().size());
  if (options.clip) {
    const double norm = result.coeffs.norm();
    if (norm > *options.clip) result.coeffs *= *options.clip / norm;
  }
  return result;
}

}  // namespace

CorsingResult corsing_solve(const Assembler& assembler, int s, int m,
                            const SamplingMeasure& measure, std::uint64_t seed,
                            const CorsingOptions& options) {
  const auto tests = draw_tests(measure, m, seed);
  return solve_impl(assembler, s, tests, m, measure, seed, options);
}

CorsingResult corsing_solve_with_tests(const Assembler& assembler, int s,
                                       const std::vector<std::size_t>& tests,
                                       const SamplingMeasure& measure,
                                       const CorsingOptions& options) {
  return solve_impl(assembler, s, tests, static_cast<int>(tests.size()), measure,
                    0, options);
}

}  // namespace corsing
