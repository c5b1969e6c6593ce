#include "corsing/assembly.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace corsing {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

CoeffField::CoeffField(std::vector<Term> terms) : terms_(std::move(terms)) {
  // Merge duplicate frequencies so Parseval sums stay exact.
  std::map<std::array<long, 3>, Complex> merged;
  for (const auto& t : terms_) merged[t.freq] += t.amp;
  terms_.clear();
  for (const auto& [freq, amp] : merged)
    if (amp != 0.0) terms_.push_back({freq, amp});
  if (terms_.empty()) terms_.push_back({{0, 0, 0}, 0.0});
}

CoeffField CoeffField::constant(double c) {
  return CoeffField({{{0, 0, 0}, Complex(c, 0.0)}});
}

CoeffField CoeffField::constant_plus_sine(double c0, double amp,
                                          std::array<long, 3> f, int n) {
  // amp*sin(2 pi f.x) = (amp/2i) (xi_f - xi_{-f})
  std::array<long, 3> neg = {0, 0, 0};
  for (int d = 0; d < n; ++d) neg[d] = -f[d];
  return CoeffField({{{0, 0, 0}, Complex(c0, 0.0)},
                     {f, Complex(0.0, -0.5 * amp)},
                     {neg, Complex(0.0, 0.5 * amp)}});
}

bool CoeffField::is_constant() const {
  for (const auto& t : terms_)
    if (t.freq != std::array<long, 3>{0, 0, 0} && t.amp != 0.0) return false;
  return true;
}

Complex CoeffField::mean() const {
  for (const auto& t : terms_)
    if (t.freq == std::array<long, 3>{0, 0, 0}) return t.amp;
  return 0.0;
}

double CoeffField::l2_normsq() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::norm(t.amp);
  return s;
}

double CoeffField::h1_seminormsq() const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double fsq = 0.0;
    for (long f : t.freq) fsq += static_cast<double>(f) * static_cast<double>(f);
    s += kTwoPi * kTwoPi * fsq * std::norm(t.amp);
  }
  return s;
}

long CoeffField::max_abs_freq() const {
  long m = 0;
  for (const auto& t : terms_)
    for (long f : t.freq) m = std::max(m, std::labs(f));
  return m;
}

bool CoeffField::conjugate_symmetric(double tol) const {
  for (const auto& t : terms_) {
    std::array<long, 3> neg;
    for (int d = 0; d < 3; ++d) neg[d] = -t.freq[d];
    Complex other = 0.0;
    for (const auto& s : terms_)
      if (s.freq == neg) other = s.amp;
    if (std::abs(t.amp - std::conj(other)) > tol) return false;
  }
  return true;
}

double CoeffField::evaluate(std::span<const double> x) const {
  Complex acc = 0.0;
  for (const auto& t : terms_) {
    double phase = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d)
      phase += static_cast<double>(t.freq[d]) * x[d];
    acc += t.amp * std::polar(1.0, kTwoPi * phase);
  }
  return acc.real();
}

TestGrid::TestGrid(int n_, long R_) : n(n_), R(R_) {
  if (n < 1 || n > 3) throw std::invalid_argument("dimension n must be 1, 2, or 3");
  if (R < 2) throw std::invalid_argument("test bandwidth R must be >= 2");
  size_ = 1;
  for (int d = 0; d < n; ++d) size_ *= static_cast<std::size_t>(R);
}

std::array<long, 3> TestGrid::at(std::size_t flat) const {
  std::array<long, 3> q = {0, 0, 0};
  for (int d = n - 1; d >= 0; --d) {
    q[d] = q_min() + static_cast<long>(flat % static_cast<std::size_t>(R));
    flat /= static_cast<std::size_t>(R);
  }
  return q;
}

std::size_t TestGrid::flat(std::span<const long> q) const {
  std::size_t f = 0;
  for (int d = 0; d < n; ++d) {
    if (q[d] < q_min() || q[d] > q_max())
      throw std::out_of_range("test index outside Q");
    f = f * static_cast<std::size_t>(R) + static_cast<std::size_t>(q[d] - q_min());
  }
  return f;
}

void AdrProblem::validate() const {
  if (n < 1 || n > 3) throw std::invalid_argument("dimension n must be 1, 2, or 3");
  if (l0 < 2) throw std::invalid_argument("coarsest level l0 must be >= 2");
  if (L <= l0) throw std::invalid_argument("finest level L must exceed l0");
  if (R < 2) throw std::invalid_argument("test bandwidth R must be >= 2");
  const bool constant = eta.is_constant() && rho.is_constant() &&
                        beta[0].is_constant() && beta[1].is_constant() &&
                        beta[2].is_constant();
  if (!constant && n > 1)
    throw std::invalid_argument("nonconstant coefficients are supported for n = 1 only");
  if (!eta.conjugate_symmetric() || !rho.conjugate_symmetric() ||
      !beta[0].conjugate_symmetric() || !beta[1].conjugate_symmetric() ||
      !beta[2].conjugate_symmetric())
    throw std::invalid_argument("field amplitudes must be conjugate symmetric");
  if (constant) {
    if (eta.mean().real() <= 0.0) throw std::invalid_argument("constant eta must be > 0");
    if (rho.mean().real() <= 0.0) throw std::invalid_argument("constant rho must be > 0");
  }
}

Assembler::Assembler(const AdrProblem& problem)
    : problem_(problem),
      basis_(problem.n, problem.l0, problem.L, problem.mode),
      grid_(problem.n, problem.R) {
  problem_.validate();
  constant_fields_ = problem_.eta.is_constant() && problem_.rho.is_constant() &&
                     problem_.beta[0].is_constant() && problem_.beta[1].is_constant() &&
                     problem_.beta[2].is_constant();

  long rmax = 0;
  if (problem_.n == 1) {
    std::map<long, ConvTerm> merged;
    auto add = [&](const CoeffField& f, int slot) {
      for (const auto& t : f.terms()) {
        auto& row = merged[t.freq[0]];
        row.r = t.freq[0];
        if (slot == 0) row.eta += t.amp;
        if (slot == 1) row.beta += t.amp;
        if (slot == 2) row.rho += t.amp;
      }
    };
    add(problem_.eta, 0);
    add(problem_.beta[0], 1);
    add(problem_.rho, 2);
    for (const auto& [r, row] : merged) conv_terms_.push_back(row);
    rmax = std::max({problem_.eta.max_abs_freq(), problem_.beta[0].max_abs_freq(),
                     problem_.rho.max_abs_freq()});
  }

  // 1D inner-product table: phi rows for levels l0..L-1, then psi rows.
  q_lo_ = grid_.q_min() - rmax;
  q_hi_ = grid_.q_max() + rmax;
  const int l0 = problem_.l0, L = problem_.L;
  const Eigen::Index rows_per_type = (Eigen::Index{1} << L) - (Eigen::Index{1} << l0);
  const Eigen::Index ncols = q_hi_ - q_lo_ + 1;
  table_.resize(2 * rows_per_type, ncols);
  for (int lev = l0; lev < L; ++lev) {
    const Eigen::Index base = (Eigen::Index{1} << lev) - (Eigen::Index{1} << l0);
    for (int k = 0; k < (1 << lev); ++k)
      for (long q = q_lo_; q <= q_hi_; ++q) {
        table_(base + k, q - q_lo_) = phi_fourier(lev, k, q);
        table_(rows_per_type + base + k, q - q_lo_) = psi_fourier(lev, k, q);
      }
  }

  if (problem_.solution) {
    const Eigen::Index ext = Eigen::Index{1} << L;
    std::size_t total = basis_.size();
    nodal_.resize(static_cast<Eigen::Index>(total));
    std::array<double, 3> x = {0.0, 0.0, 0.0};
    for (std::size_t g = 0; g < total; ++g) {
      std::size_t rest = g;
      for (int d = problem_.n - 1; d >= 0; --d) {
        x[d] = static_cast<double>(rest % ext) / static_cast<double>(ext);
        rest /= ext;
      }
      nodal_[static_cast<Eigen::Index>(g)] =
          problem_.solution(std::span<const double>(x.data(), problem_.n));
    }
    CVector scaling = std::exp2(-0.5 * L * problem_.n) * nodal_;
    CVector coeffs = tensor_dwt(scaling, problem_.n, l0, L, problem_.mode);
    reference_.resize(coeffs.size());
    for (std::size_t j = 0; j < total; ++j)
      reference_[static_cast<Eigen::Index>(j)] =
          coeffs[static_cast<Eigen::Index>(j)] / basis_.h1_weight(j);
  }
}

Complex Assembler::table(std::size_t pos1d, long q) const {
  // pos1d here is a direct row index prepared by the callers
  return table_(static_cast<Eigen::Index>(pos1d), q - q_lo_);
}

Complex Assembler::constant_symbol(std::span<const long> q) const {
  double qsq = 0.0, betaq = 0.0;
  for (int d = 0; d < problem_.n; ++d) {
    const double qd = static_cast<double>(q[d]);
    qsq += qd * qd;
    betaq += problem_.beta[d].mean().real() * qd;
  }
  return problem_.eta.mean().real() * kTwoPi * kTwoPi * qsq +
         Complex(0.0, kTwoPi * betaq) + problem_.rho.mean().real();
}

Complex Assembler::raw_entry(std::size_t j, std::span<const long> q) const {
  for (int d = 0; d < problem_.n; ++d)
    if (q[d] < grid_.q_min() || q[d] > grid_.q_max())
      throw std::out_of_range("test index outside Q");
  const int l0 = problem_.l0, L = problem_.L;
  const Eigen::Index rows_per_type = (Eigen::Index{1} << L) - (Eigen::Index{1} << l0);
  auto row_of = [&](const TrialFactor& f) {
    const Eigen::Index base = (Eigen::Index{1} << f.level) - (Eigen::Index{1} << l0);
    return (f.wavelet ? rows_per_type : 0) + base + f.shift;
  };

  if (problem_.n == 1) {
    const Eigen::Index row = row_of(basis_.factor(j, 0));
    const long q0 = q[0];
    Complex acc = 0.0;
    for (const auto& t : conv_terms_) {
      const double shifted = static_cast<double>(q0 - t.r);
      const Complex coef = kTwoPi * kTwoPi * static_cast<double>(q0) * shifted * t.eta +
                           Complex(0.0, kTwoPi * shifted) * t.beta + t.rho;
      acc += coef * table_(row, q0 - t.r - q_lo_);
    }
    return acc;
  }

  Complex prod = 1.0;
  for (int d = 0; d < problem_.n; ++d) {
    prod *= table_(row_of(basis_.factor(j, d)), q[d] - q_lo_);
    if (prod == 0.0) return 0.0;
  }
  return constant_symbol(q) * prod;
}

Complex Assembler::stiffness_entry(std::size_t j, std::span<const long> q,
                                   bool normalized) const {
  Complex a = raw_entry(j, q);
  if (normalized) a *= basis_.h1_weight(j) / std::sqrt(test_h1_normsq(q));
  return a;
}

void Assembler::stiffness_row(std::span<const long> q, Complex* out,
                              bool normalized) const {
  const std::size_t N = basis_.size();
  const double test_scale = normalized ? 1.0 / std::sqrt(test_h1_normsq(q)) : 1.0;
  for (std::size_t j = 0; j < N; ++j) {
    Complex a = raw_entry(j, q);
    if (normalized) a *= basis_.h1_weight(j) * test_scale;
    out[j] = a;
  }
}

Eigen::MatrixXcd Assembler::assemble_B(bool normalized, std::size_t entry_cap) const {
  const std::size_t M = grid_.size(), N = basis_.size();
  if (M * N > entry_cap)
    throw std::length_error("stiffness matrix exceeds the configured entry cap");
  Eigen::MatrixXcd B(M, N);
  std::vector<Complex> row(N);
  for (std::size_t i = 0; i < M; ++i) {
    const auto q = grid_.at(i);
    stiffness_row(std::span<const long>(q.data(), problem_.n), row.data(), normalized);
    for (std::size_t j = 0; j < N; ++j)
      B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  return B;
}

CVector Assembler::load_vector() const {
  if (reference_.size() == 0)
    throw std::logic_error("load vector requires a manufactured solution");
  const std::size_t M = grid_.size(), N = basis_.size();
  CVector g(static_cast<Eigen::Index>(M));
  std::vector<Complex> row(N);
  for (std::size_t i = 0; i < M; ++i) {
    const auto q = grid_.at(i);
    stiffness_row(std::span<const long>(q.data(), problem_.n), row.data(), true);
    Complex acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) acc += row[j] * reference_[static_cast<Eigen::Index>(j)];
    g[static_cast<Eigen::Index>(i)] = acc;
  }
  return g;
}

Complex Assembler::load_entry(std::span<const long> q) const {
  if (reference_.size() == 0)
    throw std::logic_error("load vector requires a manufactured solution");
  const std::size_t N = basis_.size();
  std::vector<Complex> row(N);
  stiffness_row(q, row.data(), true);
  Complex acc = 0.0;
  for (std::size_t j = 0; j < N; ++j) acc += row[j] * reference_[static_cast<Eigen::Index>(j)];
  return acc;
}

CVector Assembler::load_vector_symbol() const {
  if (reference_.size() == 0)
    throw std::logic_error("load vector requires a manufactured solution");
  if (!constant_fields_)
    throw std::logic_error("the symbol route requires constant coefficients");

  // Separable DFT of the nodal samples: uhat_q = 2^{-nL} sum_g u(x_g) e^{-2 pi i q.g/G}
  const Eigen::Index G = Eigen::Index{1} << problem_.L;
  CVector work = nodal_;
  Eigen::MatrixXcd dft(G, G);
  for (Eigen::Index a = 0; a < G; ++a)
    for (Eigen::Index b = 0; b < G; ++b)
      dft(a, b) = std::polar(1.0, -kTwoPi * static_cast<double>((a * b) % G) /
                                      static_cast<double>(G));
  const int n = problem_.n;
  CVector line(G), transformed(G);
  for (int axis = 0; axis < n; ++axis) {
    std::array<Eigen::Index, 3> stride = {0, 0, 0};
    Eigen::Index s = 1;
    for (int d = n - 1; d >= 0; --d) {
      stride[d] = s;
      s *= G;
    }
    std::array<Eigen::Index, 3> c = {0, 0, 0};
    while (true) {
      Eigen::Index base = 0;
      for (int d = 0; d < n; ++d)
        if (d != axis) base += c[d] * stride[d];
      for (Eigen::Index i = 0; i < G; ++i) line[i] = work[base + i * stride[axis]];
      transformed.noalias() = dft * line;
      for (Eigen::Index i = 0; i < G; ++i) work[base + i * stride[axis]] = transformed[i];
      int d = n - 1;
      for (; d >= 0; --d) {
        if (d == axis) continue;
        if (++c[d] < G) break;
        c[d] = 0;
      }
      if (d < 0) break;
    }
  }
  work *= std::exp2(-static_cast<double>(n) * problem_.L);

  const std::size_t M = grid_.size();
  CVector g(static_cast<Eigen::Index>(M));
  for (std::size_t i = 0; i < M; ++i) {
    const auto q = grid_.at(i);
    Eigen::Index bin = 0;
    for (int d = 0; d < n; ++d) {
      const long qm = ((q[d] % G) + G) % G;
      bin = bin * G + qm;
    }
    const auto qs = std::span<const long>(q.data(), n);
    g[static_cast<Eigen::Index>(i)] =
        constant_symbol(qs) * work[bin] / std::sqrt(test_h1_normsq(qs));
  }
  return g;
}

double compute_constant_C(const AdrProblem& problem) {
  if (problem.n == 1)
    return problem.eta.h1_normsq() + problem.beta[0].h1_normsq() +
           problem.rho.l2_normsq();
  double betasq = 0.0;
  for (int d = 0; d < problem.n; ++d) betasq += std::norm(problem.beta[d].mean());
  return std::norm(problem.eta.mean()) + betasq + std::norm(problem.rho.mean());
}

void dump_matrix(const Assembler& assembler, const std::string& path, bool normalized) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  const auto& p = assembler.problem();
  os << "# corsing-wf stiffness matrix\n";
  os << "# n " << p.n << " l0 " << p.l0 << " L " << p.L << " R " << p.R
     << " mode " << to_string(p.mode) << " normalized " << (normalized ? 1 : 0) << "\n";
  auto field_line = [&os, &p](const char* name, const CoeffField& f) {
    os << "# " << name;
    for (const auto& t : f.terms()) {
      os << "  (";
      for (int d = 0; d < p.n; ++d) os << (d ? "," : "") << t.freq[d];
      os << ") " << t.amp.real() << " " << t.amp.imag();
    }
    os << "\n";
  };
  field_line("eta", p.eta);
  for (int d = 0; d < p.n; ++d) field_line("beta", p.beta[d]);
  field_line("rho", p.rho);
  const std::size_t M = assembler.grid().size(), N = assembler.basis().size();
  os << "# rows " << M << " cols " << N << "\n";
  os.precision(17);
  std::vector<Complex> row(N);
  for (std::size_t i = 0; i < M; ++i) {
    const auto q = assembler.grid().at(i);
    assembler.stiffness_row(std::span<const long>(q.data(), p.n), row.data(), normalized);
    for (std::size_t j = 0; j < N; ++j)
      os << i << " " << j << " " << row[j].real() << " " << row[j].imag() << "\n";
  }
}

}  // namespace corsing
