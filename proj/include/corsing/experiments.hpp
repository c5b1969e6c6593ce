#pragma once

#include <filesystem>
#include <optional>

#include "corsing/solver.hpp"

namespace corsing {

/// Closed-form exact solution used to generate data and measure recovery.
struct ManufacturedSolution {
  std::string id;
  int n = 1;
  std::function<double(std::span<const double>)> eval;
  std::string description;
};

/// The built-in study solutions u1 (1D), u2/u3 (2D), u4 (3D).
ManufacturedSolution manufactured(const std::string& id);

/// Largest-s entries by magnitude (ties to the smaller index) and the
/// relative tail error ||coeffs - kept||_2 / ||coeffs||_2.
struct BestSTerm {
  std::vector<std::size_t> support;
  double rel_error = 0.0;
};
BestSTerm best_s_term(const CVector& coeffs, int s);

/// Relative coefficient-space recovery error ||a - b||_2 / ||a||_2, the
/// H^1-surrogate used throughout the studies.
double relative_error(const CVector& reference, const CVector& recovered);

/// Five-number box statistics with 1.5 IQR whiskers; quartiles use linear
/// interpolation on the sorted sample.
struct TrialStats {
  std::vector<double> errors;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double whisker_lo = 0, whisker_hi = 0;
  std::vector<double> outliers;

  static TrialStats from(std::vector<double> errors);
};

struct StudyConfig {
  std::string study_id = "study";
  std::string problem = "u1";  ///< manufactured solution id
  AdrProblem adr;              ///< fields + discretization (solution filled from problem)
  std::vector<int> s_grid = {50};
  std::vector<int> m_grid = {300};
  MeasureKind measure = MeasureKind::Thm43;
  int trials = 100;
  bool emit_coherence = false;
  CorsingOptions solver;
};

/// Parses the JSON study configuration (keys: study_id, problem, fields,
/// basis, l0, L, R, s | s_grid, m_grid, measure, trials, emit_coherence).
StudyConfig parse_study_config(const std::string& json_text);

struct TrialRecord {
  std::string study_id;
  int s = 0, m = 0;
  std::string measure;
  std::uint64_t seed = 0;
  double rel_error = 0.0;
  double runtime_ms = 0.0;
};

struct StudyResult {
  StudyConfig config;
  std::vector<TrialRecord> records;                 // grid-point major, trial minor
  std::vector<std::pair<std::pair<int, int>, TrialStats>> stats;  // per (s, m)
  std::vector<std::pair<int, double>> best_s_errors;              // per s
};

/// Runs trials over the (s, m) grid with seeds split deterministically from
/// the master seed; trials execute concurrently, outputs are scheduling
/// independent.
StudyResult run_study(const StudyConfig& config, std::uint64_t master_seed,
                      int threads = 0);

/// Writes stats.csv (study_id,s,m,measure,seed,rel_error,runtime_ms),
/// summary.csv (quartiles per grid point), and coherence.csv on request.
void write_study_outputs(const StudyResult& result,
                         const std::filesystem::path& out_dir);

/// One oracle check of the validation run.
struct ValidationCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
};

/// One-shot runner of the built-in oracles: filter identities, transform
/// round trips, closed forms vs quadrature, zero patterns, coherence
/// dominance, preconditioner identity, OMP vs exhaustive search, measure
/// normalization, and the reference condition numbers.
ValidationReport validate_suite(bool verbose = false);

/// Exposed separately so a tampered filter bank can be checked to fail:
/// verifies the perfect-reconstruction identities
/// sum_j a~_{j-2k} a_{j-2k'} + b~_{j-2k} b_{j-2k'} = 2 delta_{kk'} (even/odd
/// phases) exactly in dyadic-rational arithmetic.
bool check_filter_biorthogonality(std::span<const double> a, int a_min,
                                  std::span<const double> a_dual, int a_dual_min,
                                  std::span<const double> b, int b_min,
                                  std::span<const double> b_dual, int b_dual_min);

}  // namespace corsing
