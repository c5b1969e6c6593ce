#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corsing/fourier_products.hpp"
#include "corsing/tensor_basis.hpp"

namespace corsing {

/// An ADR coefficient given as a finite Fourier series
/// f(x) = sum_t amp_t exp(2 pi i freq_t . x); a constant is the single term
/// (0, c). Real-valued fields carry conjugate-symmetric amplitudes.
class CoeffField {
 public:
  struct Term {
    std::array<long, 3> freq;
    Complex amp;
  };

  CoeffField() = default;
  explicit CoeffField(std::vector<Term> terms);
  static CoeffField constant(double c);
  /// c0 + amp sin(2 pi f . x), the oscillatory-diffusion shape of the studies.
  static CoeffField constant_plus_sine(double c0, double amp, std::array<long, 3> f,
                                       int n = 1);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_constant() const;
  Complex mean() const;  ///< the frequency-0 amplitude

  double l2_normsq() const;       ///< sum |amp|^2 (Parseval)
  double h1_seminormsq() const;   ///< sum (2 pi |freq|)^2 |amp|^2
  double h1_normsq() const { return l2_normsq() + h1_seminormsq(); }
  long max_abs_freq() const;

  bool conjugate_symmetric(double tol = 1e-12) const;
  double evaluate(std::span<const double> x) const;  ///< real part at a point

 private:
  std::vector<Term> terms_;
};

/// Truncated Fourier test index set Q = { -floor(R/2)+1 <= q_i <= floor(R/2) }
/// flattened lexicographically with axis 0 major and ascending q_i.
struct TestGrid {
  int n;
  long R;

  TestGrid(int n_, long R_);
  std::size_t size() const { return size_; }
  long q_min() const { return -(R / 2) + 1; }
  long q_max() const { return R / 2; }
  std::array<long, 3> at(std::size_t flat) const;
  std::size_t flat(std::span<const long> q) const;

 private:
  std::size_t size_;
};

/// A periodic ADR problem together with its discretization parameters and a
/// manufactured solution. Nonconstant fields are supported for n = 1 only.
struct AdrProblem {
  int n = 1;
  int l0 = 2;
  int L = 9;
  long R = 512;
  BasisMode mode = BasisMode::Aniso;
  CoeffField eta = CoeffField::constant(1.0);
  std::array<CoeffField, 3> beta = {CoeffField::constant(0.0),
                                    CoeffField::constant(0.0),
                                    CoeffField::constant(0.0)};
  CoeffField rho = CoeffField::constant(1.0);
  std::function<double(std::span<const double>)> solution;
  std::string solution_id = "custom";

  /// Throws std::invalid_argument on inconsistent parameters, nonconstant
  /// fields with n > 1, or constant fields violating eta > 0, rho > 0.
  void validate() const;

  TrialBasis trial_basis() const { return TrialBasis(n, l0, L, mode); }
  TestGrid test_grid() const { return TestGrid(n, R); }
};

/// Assembles stiffness entries B_{q,j} = a(psihat_j, xihat_q), full matrices,
/// and load vectors. All 1D wavelet-Fourier inner products are cached up
/// front, so single entries are O(n) lookups.
class Assembler {
 public:
  explicit Assembler(const AdrProblem& problem);

  const AdrProblem& problem() const { return problem_; }
  const TrialBasis& basis() const { return basis_; }
  const TestGrid& grid() const { return grid_; }

  /// a(psihat_j, xihat_q); set normalized = false for the raw
  /// L^2-normalized pairing a(psi_j, xi_q).
  Complex stiffness_entry(std::size_t j, std::span<const long> q,
                          bool normalized = true) const;

  /// One test row over all trial functions.
  void stiffness_row(std::span<const long> q, Complex* out, bool normalized = true) const;

  /// Full M x N matrix; rows follow the TestGrid order, columns the trial
  /// order. Throws std::length_error if M*N exceeds entry_cap.
  Eigen::MatrixXcd assemble_B(bool normalized = true,
                              std::size_t entry_cap = std::size_t{1} << 25) const;

  /// Coefficients of the level-L interpolant of the manufactured solution in
  /// the H^1-normalized trial basis (the recovery target).
  const CVector& reference_coeffs() const { return reference_; }

  /// Load vector g, g_q = (f, xihat_q), realized as g = B ubar so the data is
  /// consistent with the level-L recovery target.
  CVector load_vector() const;
  Complex load_entry(std::span<const long> q) const;

  /// Constant-coefficient cross-check: g_q = symbol(q) (u, xi_q) /
  /// ||xi_q||_{H^1} with (u, xi_q) from the DFT of the nodal samples.
  CVector load_vector_symbol() const;

  /// eta (2 pi ||q||)^2 + 2 pi i beta . q + rho for constant fields.
  Complex constant_symbol(std::span<const long> q) const;

 private:
  Complex raw_entry(std::size_t j, std::span<const long> q) const;
  Complex table(std::size_t pos1d, long q) const;

  AdrProblem problem_;
  TrialBasis basis_;
  TestGrid grid_;
  bool constant_fields_;
  // combined per-frequency (r, eta_r, beta_r, rho_r) rows for the 1D
  // convolution path
  struct ConvTerm {
    long r;
    Complex eta, beta, rho;
  };
  std::vector<ConvTerm> conv_terms_;
  long q_lo_ = 0, q_hi_ = 0;
  Eigen::MatrixXcd table_;  // (theta_p, xi_q), p-th trial factor x frequency
  CVector reference_;
  CVector nodal_;  // solution samples on the level-L grid, row-major
};

/// The field constant entering the sampling recipes: for n = 1 the value
/// ||eta||^2_{H^1} + ||beta||^2_{H^1} + ||rho||^2_{L^2}; for constant fields
/// in any dimension |eta|^2 + ||beta||_2^2 + |rho|^2.
double compute_constant_C(const AdrProblem& problem);

/// Writes B with a plain-text header (n, l0, L, R, mode, field terms) followed
/// by one "q_index j_index re im" line per entry.
void dump_matrix(const Assembler& assembler, const std::string& path,
                 bool normalized = true);

}  // namespace corsing
