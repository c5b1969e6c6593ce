#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corsing/assembly.hpp"

namespace corsing {

/// Local a-coherence upper bound for 1D problems: C at q = 0 and
/// C min{N/q^2, 1/|q|} otherwise, with N = 2^L.
double nu_1d(long q, double N, double C);

/// Sharper 1D variant for rho in H^1: the per-term weighting
/// (||eta||^2 + ||beta||^2/q^2 + ||rho||^2/q^4) min{N/q^2, 1/|q|}.
double nu_1d_sharp(long q, double N, double eta_h1sq, double beta_h1sq,
                   double rho_h1sq);

/// Anisotropic-tensor bound in n dimensions.
double nu_ani(std::span<const long> q, int l0, int L, int n);

/// Isotropic-tensor bound in n dimensions.
double nu_iso(std::span<const long> q, int l0, int L, int n);

/// Simplified bound used by the multi-dimensional studies:
/// min{1, ||q||_2^2 / (||q||_inf^2 prod_{d in supp q} |q_d|)}, 1 at q = 0.
double nu_practical(std::span<const long> q);

enum class MeasureKind { Uniform, Thm43, Sharp1D, Thm45, Thm47, Practical };

MeasureKind measure_kind_from_string(const std::string& name);
std::string to_string(MeasureKind kind);

/// Probability distribution over the test grid in canonical order,
/// p = nu|_Q / ||nu|_Q||_1.
struct SamplingMeasure {
  MeasureKind kind = MeasureKind::Uniform;
  std::vector<double> p;

  double total() const;
};

struct MeasureParams {
  double N = 0.0;  ///< trial dimension 2^{nL}
  double C = 1.0;  ///< field constant for the 1D kinds
  int l0 = 2;
  int L = 0;
  double eta_h1sq = 1.0, beta_h1sq = 0.0, rho_h1sq = 1.0;  ///< Sharp1D inputs
};

SamplingMeasure build_measure(MeasureKind kind, const TestGrid& grid,
                              const MeasureParams& params);

/// Convenience: measure parameters filled in from a problem.
SamplingMeasure build_measure(MeasureKind kind, const AdrProblem& problem);

/// Truncation recipe: theoretical R ~ C s N (1D) or C s N^{3-2/n} (nD) with
/// unit constant, and the practical choice R = 2^L used by the studies.
struct RRecommendation {
  double theoretical;
  long practical;
};
RRecommendation recommend_R(int s, double N, int n, double C, int L);

/// Sample-size recipe: the theoretical rate with unit constant (the nD rates
/// carry the extra 2^{n l0} factor and the n-th power of the log), plus the
/// empirical rule m = ceil(2 s ln N) used by the 1D studies (natural log).
struct MRecommendation {
  double theoretical;
  long empirical;
};
MRecommendation recommend_m(int s, double N, double eps, double C, int n, int l0);

/// Row-wise max_j |B_{q,j}|^2: the empirical local a-coherence of an
/// assembled stiffness matrix.
Eigen::VectorXd empirical_coherence(const Eigen::MatrixXcd& B);

/// Restriction of the chosen nu to the grid, in canonical order (unnormalized).
std::vector<double> nu_on_grid(MeasureKind kind, const TestGrid& grid,
                               const MeasureParams& params);

}  // namespace corsing
