#pragma once

#include <cstdint>
#include <optional>

#include "corsing/coherence.hpp"

namespace corsing {

/// Deterministic per-trial seed derived from a master seed: the i-th stream is
/// splitmix64(master + (i+1) * 0x9E3779B97F4A7C15).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

/// m i.i.d. draws from the measure (flat test-grid indices, repetitions kept).
/// Inverse-CDF sampling on 53-bit uniforms from mt19937_64, so the draw
/// sequence depends only on the seed.
std::vector<std::size_t> draw_tests(const SamplingMeasure& measure, int m,
                                    std::uint64_t seed);

/// Diagonal preconditioner weights D_ii = 1 / sqrt(m p_{tau_i}).
Eigen::VectorXd precondition(const SamplingMeasure& measure,
                             const std::vector<std::size_t>& tests, int m);

struct OmpOptions {
  double rtol = 1e-12;          ///< stop once ||r|| <= rtol ||f||
  double reorth_tol = 1e-8;     ///< re-orthogonalize when orthogonality degrades
  double rank_tol = 1e-12;      ///< dependent-column threshold (relative)
};

/// s-sparse greedy solution of min ||A z - f||: support, the least-squares
/// coefficients on it, and the final residual norm.
struct SparseSolution {
  std::vector<std::size_t> support;
  CVector coeffs;
  double residual_norm = 0.0;
  bool rank_deficient = false;

  CVector dense(std::size_t N) const;
};

/// Orthogonal matching pursuit: per step, pick the unused column maximizing
/// |A_j^* r| / ||A_j||_2 (zero columns skipped, ties to the smallest index),
/// re-solve least squares on the support, update the residual. Runs s steps or
/// until the residual tolerance. A numerically dependent selected column flags
/// the solution rank-deficient and the final coefficients fall back to the
/// minimum-norm least-squares solution.
SparseSolution omp_solve(const Eigen::MatrixXcd& A, const CVector& f, int s,
                         const OmpOptions& options = {});

/// Real-arithmetic variant (coefficients constrained to the reals).
SparseSolution omp_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& f,
                         int s, const OmpOptions& options = {});

struct CorsingOptions {
  OmpOptions omp;
  bool dedup = false;           ///< collapse repeated tests, reweighting D
  std::optional<double> clip;   ///< post-scale by min(1, K/||zhat||_2)
  /// The ADR data here is real, so the coefficient vector is recovered over
  /// the reals by default: OMP runs on the stacked system
  /// [Re(DA); Im(DA)] z = [Re(Df); Im(Df)]. Disable to solve in complex
  /// arithmetic instead.
  bool real_coefficients = true;
};

/// Drawn tests, preconditioner, compressed rows A and data f.
struct CompressedSystem {
  std::vector<std::size_t> tests;
  Eigen::MatrixXcd A;
  CVector f;
  Eigen::VectorXd D;
  std::uint64_t seed = 0;
};

CompressedSystem build_compressed_system(const Assembler& assembler,
                                         const SamplingMeasure& measure,
                                         const std::vector<std::size_t>& tests,
                                         int m_drawn, std::uint64_t seed,
                                         bool dedup);

struct CorsingResult {
  CompressedSystem system;
  SparseSolution solution;
  CVector coeffs;  ///< solution embedded in the length-N trial order
};

/// End-to-end compressed solve: draw m tests from the measure, assemble the
/// compressed rows and data, precondition, and recover an s-sparse coefficient
/// vector by OMP.
CorsingResult corsing_solve(const Assembler& assembler, int s, int m,
                            const SamplingMeasure& measure, std::uint64_t seed,
                            const CorsingOptions& options = {});

/// Same, with an explicitly supplied test list instead of random draws.
CorsingResult corsing_solve_with_tests(const Assembler& assembler, int s,
                                       const std::vector<std::size_t>& tests,
                                       const SamplingMeasure& measure,
                                       const CorsingOptions& options = {});

}  // namespace corsing
