#include "corsing/experiments.hpp"

#include <json.hpp>

#include <Eigen/QR>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "corsing/linalg.hpp"
#include "corsing/oracles.hpp"

namespace corsing {

namespace {

double gauss_bump(double x, double center, double denom) {
  // periodic distance keeps the closed form one-periodic to machine precision
  double d = x - center;
  d -= std::round(d);
  return std::exp(-d * d / denom);
}

void format_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

ManufacturedSolution manufactured(const std::string& id) {
  ManufacturedSolution sol;
  sol.id = id;
  if (id == "u1") {
    sol.n = 1;
    sol.description = "smooth 1D profile with a sharp bump at x = 0.3";
    sol.eval = [](std::span<const double> x) {
      return 1.0 + gauss_bump(x[0], 0.3, 0.0005) + 0.5 * std::cos(2.0 * M_PI * x[0]);
    };
  } else if (id == "u2") {
    sol.n = 2;
    sol.description = "one isotropic and one anisotropic Gaussian feature";
    sol.eval = [](std::span<const double> x) {
      return gauss_bump(x[0], 0.3, 0.0005) * gauss_bump(x[1], 0.4, 0.0005) +
             2.0 * gauss_bump(x[0], 0.6, 0.001) * gauss_bump(x[1], 0.5, 0.005);
    };
  } else if (id == "u3") {
    sol.n = 2;
    sol.description = "Gaussian ridge constant along the second axis";
    sol.eval = [](std::span<const double> x) {
      return gauss_bump(x[0], 0.45, 0.005);
    };
  } else if (id == "u4") {
    sol.n = 3;
    sol.description = "anisotropic Gaussian feature centered at (0.4, 0.5, 0.6)";
    sol.eval = [](std::span<const double> x) {
      return gauss_bump(x[0], 0.4, 0.005) * gauss_bump(x[1], 0.5, 0.0005) *
             gauss_bump(x[2], 0.6, 0.005);
    };
  } else {
    throw std::invalid_argument("unknown manufactured solution: " + id);
  }
  return sol;
}

BestSTerm best_s_term(const CVector& coeffs, int s) {
  const std::size_t N = static_cast<std::size_t>(coeffs.size());
  if (s < 0 || static_cast<std::size_t>(s) > N)
    throw std::invalid_argument("sparsity s must satisfy 0 <= s <= N");
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(coeffs[static_cast<Eigen::Index>(a)]);
    const double mb = std::abs(coeffs[static_cast<Eigen::Index>(b)]);
    if (ma != mb) return ma > mb;
    return a < b;  // ties to the smaller canonical index
  });
  BestSTerm out;
  out.support.assign(order.begin(), order.begin() + s);
  double tail = 0.0;
  for (std::size_t i = static_cast<std::size_t>(s); i < N; ++i)
    tail += std::norm(coeffs[static_cast<Eigen::Index>(order[i])]);
  const double total = coeffs.squaredNorm();
  out.rel_error = total > 0.0 ? std::sqrt(tail / total) : 0.0;
  return out;
}

double relative_error(const CVector& reference, const CVector& recovered) {
  return (reference - recovered).norm() / reference.norm();
}

TrialStats TrialStats::from(std::vector<double> errors) {
  TrialStats st;
  st.errors = std::move(errors);
  if (st.errors.empty()) return st;
  std::vector<double> sorted = st.errors;
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double p) {
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
  };
  st.min = sorted.front();
  st.max = sorted.back();
  st.q1 = quantile(0.25);
  st.median = quantile(0.5);
  st.q3 = quantile(0.75);
  const double iqr = st.q3 - st.q1;
  const double lo_fence = st.q1 - 1.5 * iqr, hi_fence = st.q3 + 1.5 * iqr;
  st.whisker_lo = st.max;
  st.whisker_hi = st.min;
  for (double v : sorted) {
    if (v >= lo_fence) st.whisker_lo = std::min(st.whisker_lo, v);
    if (v <= hi_fence) st.whisker_hi = std::max(st.whisker_hi, v);
    if (v < lo_fence || v > hi_fence) st.outliers.push_back(v);
  }
  return st;
}

namespace {

CoeffField parse_field(const nlohmann::json& j, int n) {
  if (j.contains("const")) return CoeffField::constant(j["const"].get<double>());
  if (j.contains("const_plus_sine")) {
    const auto& v = j["const_plus_sine"];
    std::array<long, 3> f = {0, 0, 0};
    for (int d = 0; d < n; ++d) f[d] = v[2 + d].get<long>();
    return CoeffField::constant_plus_sine(v[0].get<double>(), v[1].get<double>(), f, n);
  }
  if (j.contains("terms")) {
    std::vector<CoeffField::Term> terms;
    for (const auto& t : j["terms"]) {
      CoeffField::Term term{{0, 0, 0}, 0.0};
      for (int d = 0; d < n; ++d) term.freq[d] = t[d].get<long>();
      term.amp = Complex(t[n].get<double>(), t[n + 1].get<double>());
      terms.push_back(term);
    }
    return CoeffField(terms);
  }
  throw std::invalid_argument("field spec needs const, const_plus_sine, or terms");
}

}  // namespace

StudyConfig parse_study_config(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  StudyConfig cfg;
  cfg.study_id = j.value("study_id", std::string("study"));
  cfg.problem = j.value("problem", std::string("u1"));

  const ManufacturedSolution sol = manufactured(cfg.problem);
  cfg.adr.n = sol.n;
  cfg.adr.solution = sol.eval;
  cfg.adr.solution_id = sol.id;
  cfg.adr.l0 = j.value("l0", 2);
  cfg.adr.L = j.value("L", sol.n == 1 ? 9 : (sol.n == 2 ? 6 : 4));
  cfg.adr.R = j.value("R", 1L << cfg.adr.L);
  cfg.adr.mode = basis_mode_from_string(j.value("basis", std::string("ani")));

  // Study defaults: pure diffusion-reaction in 1D, unit advection in nD.
  cfg.adr.eta = CoeffField::constant(1.0);
  cfg.adr.rho = CoeffField::constant(1.0);
  for (int d = 0; d < 3; ++d)
    cfg.adr.beta[d] = CoeffField::constant(d < cfg.adr.n && cfg.adr.n > 1 ? 1.0 : 0.0);
  if (j.contains("fields")) {
    const auto& f = j["fields"];
    if (f.contains("eta")) cfg.adr.eta = parse_field(f["eta"], cfg.adr.n);
    if (f.contains("rho")) cfg.adr.rho = parse_field(f["rho"], cfg.adr.n);
    if (f.contains("beta")) {
      const auto& b = f["beta"];
      for (int d = 0; d < cfg.adr.n; ++d)
        cfg.adr.beta[d] = parse_field(b[static_cast<std::size_t>(d)], cfg.adr.n);
    }
  }

  if (j.contains("s_grid"))
    cfg.s_grid = j["s_grid"].get<std::vector<int>>();
  else
    cfg.s_grid = {j.value("s", 50)};
  if (j.contains("m_grid"))
    cfg.m_grid = j["m_grid"].get<std::vector<int>>();
  else if (j.contains("m"))
    cfg.m_grid = {j["m"].get<int>()};
  else
    cfg.m_grid = {};  // filled per s by the empirical rule
  cfg.measure = measure_kind_from_string(j.value("measure", std::string("thm4.3")));
  cfg.trials = j.value("trials", 100);
  cfg.emit_coherence = j.value("emit_coherence", false);
  cfg.solver.dedup = j.value("dedup", false);
  if (j.contains("clip") && !j["clip"].is_null())
    cfg.solver.clip = j["clip"].get<double>();
  return cfg;
}

StudyResult run_study(const StudyConfig& config, std::uint64_t master_seed,
                      int threads) {
  StudyResult result;
  result.config = config;

  const Assembler assembler(config.adr);
  const SamplingMeasure measure = build_measure(config.measure, config.adr);
  const double N = static_cast<double>(assembler.basis().size());

  for (int s : config.s_grid)
    result.best_s_errors.emplace_back(
        s, best_s_term(assembler.reference_coeffs(), s).rel_error);

  struct GridPoint {
    int s, m;
  };
  std::vector<GridPoint> grid;
  for (int s : config.s_grid) {
    if (config.m_grid.empty()) {
      // the empirical rule m = ceil(2 s ln N)
      grid.push_back({s, static_cast<int>(std::ceil(2.0 * s * std::log(N)))});
    } else {
      for (int m : config.m_grid) grid.push_back({s, m});
    }
  }

  const std::size_t total = grid.size() * static_cast<std::size_t>(config.trials);
  result.records.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) break;
      const std::size_t gp = task / static_cast<std::size_t>(config.trials);
      const std::size_t trial = task % static_cast<std::size_t>(config.trials);
      const std::uint64_t seed = trial_seed(master_seed, task);
      const auto t0 = std::chrono::steady_clock::now();
      const CorsingResult run = corsing_solve(assembler, grid[gp].s, grid[gp].m,
                                              measure, seed, config.solver);
      const auto t1 = std::chrono::steady_clock::now();
      TrialRecord rec;
      rec.study_id = config.study_id;
      rec.s = grid[gp].s;
      rec.m = grid[gp].m;
      rec.measure = to_string(config.measure);
      rec.seed = seed;
      rec.rel_error = relative_error(assembler.reference_coeffs(), run.coeffs);
      rec.runtime_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      result.records[task] = std::move(rec);
    }
  };

  int nthreads = threads > 0 ? threads
                             : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (std::size_t gp = 0; gp < grid.size(); ++gp) {
    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(config.trials));
    for (int t = 0; t < config.trials; ++t)
      errors.push_back(
          result.records[gp * static_cast<std::size_t>(config.trials) +
                         static_cast<std::size_t>(t)]
              .rel_error);
    result.stats.emplace_back(std::make_pair(grid[gp].s, grid[gp].m),
                              TrialStats::from(std::move(errors)));
  }
  return result;
}

void write_study_outputs(const StudyResult& result,
                         const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream os(out_dir / "stats.csv");
    os << "study_id,s,m,measure,seed,rel_error,runtime_ms\n";
    for (const auto& r : result.records) {
      os << r.study_id << "," << r.s << "," << r.m << "," << r.measure << ","
         << r.seed << ",";
      format_double(os, r.rel_error);
      os << ",";
      format_double(os, r.runtime_ms);
      os << "\n";
    }
  }
  {
    std::ofstream os(out_dir / "summary.csv");
    os << "study_id,s,m,measure,trials,best_s_error,min,q1,median,q3,max,"
          "whisker_lo,whisker_hi,n_outliers\n";
    for (const auto& [sm, st] : result.stats) {
      double best = 0.0;
      for (const auto& [s, e] : result.best_s_errors)
        if (s == sm.first) best = e;
      os << result.config.study_id << "," << sm.first << "," << sm.second << ","
         << to_string(result.config.measure) << "," << st.errors.size() << ",";
      for (double v : {best, st.min, st.q1, st.median, st.q3, st.max,
                       st.whisker_lo, st.whisker_hi}) {
        format_double(os, v);
        os << ",";
      }
      os << st.outliers.size() << "\n";
    }
  }
  if (result.config.emit_coherence) {
    const Assembler assembler(result.config.adr);
    const auto B = assembler.assemble_B();
    const Eigen::VectorXd mu = empirical_coherence(B);
    const SamplingMeasure measure =
        build_measure(result.config.measure, result.config.adr);
    MeasureParams params;
    params.N = static_cast<double>(assembler.basis().size());
    params.C = compute_constant_C(result.config.adr);
    params.l0 = result.config.adr.l0;
    params.L = result.config.adr.L;
    params.eta_h1sq = result.config.adr.eta.h1_normsq();
    params.beta_h1sq = result.config.adr.beta[0].h1_normsq();
    params.rho_h1sq = result.config.adr.rho.h1_normsq();
    const auto nu = nu_on_grid(result.config.measure, assembler.grid(), params);
    std::ofstream os(out_dir / "coherence.csv");
    const int n = result.config.adr.n;
    for (int d = 0; d < n; ++d) os << "q" << (d + 1) << ",";
    os << "nu,p,mu\n";
    for (std::size_t i = 0; i < assembler.grid().size(); ++i) {
      const auto q = assembler.grid().at(i);
      for (int d = 0; d < n; ++d) os << q[d] << ",";
      format_double(os, nu[i]);
      os << ",";
      format_double(os, measure.p[i]);
      os << ",";
      format_double(os, mu[static_cast<Eigen::Index>(i)]);
      os << "\n";
    }
  }
}

bool check_filter_biorthogonality(std::span<const double> a, int a_min,
                                  std::span<const double> a_dual, int a_dual_min,
                                  std::span<const double> b, int b_min,
                                  std::span<const double> b_dual, int b_dual_min) {
  auto at = [](std::span<const double> f, int fmin, int idx) {
    const int off = idx - fmin;
    return (off >= 0 && off < static_cast<int>(f.size())) ? f[static_cast<std::size_t>(off)]
                                                          : 0.0;
  };
  // Reconstruction identity: sum_k a_{j-2k} a~_{j'-2k} + b_{j-2k} b~_{j'-2k}
  // = 2 delta_{jj'}; all quantities are dyadic rationals, so compare exactly.
  for (int j = -8; j <= 8; ++j)
    for (int jp = -8; jp <= 8; ++jp) {
      double acc = 0.0;
      for (int k = -8; k <= 8; ++k)
        acc += at(a, a_min, j - 2 * k) * at(a_dual, a_dual_min, jp - 2 * k) +
               at(b, b_min, j - 2 * k) * at(b_dual, b_dual_min, jp - 2 * k);
      if (acc != (j == jp ? 2.0 : 0.0)) return false;
    }
  // Dual side: lowpass/highpass biorthogonality across the decimated shifts.
  for (int k = -4; k <= 4; ++k)
    for (int kp = -4; kp <= 4; ++kp) {
      double aa = 0.0, bb = 0.0, ab = 0.0, ba = 0.0;
      for (int j = -12; j <= 12; ++j) {
        aa += at(a, a_min, j - 2 * k) * at(a_dual, a_dual_min, j - 2 * kp);
        bb += at(b, b_min, j - 2 * k) * at(b_dual, b_dual_min, j - 2 * kp);
        ab += at(a, a_min, j - 2 * k) * at(b_dual, b_dual_min, j - 2 * kp);
        ba += at(b, b_min, j - 2 * k) * at(a_dual, a_dual_min, j - 2 * kp);
      }
      const double expect = (k == kp) ? 2.0 : 0.0;
      if (aa != expect || bb != expect || ab != 0.0 || ba != 0.0) return false;
    }
  return true;
}

bool ValidationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

AdrProblem study_problem_1d(bool oscillatory) {
  AdrProblem p;
  p.n = 1;
  p.l0 = 2;
  p.L = 9;
  p.R = 512;
  p.mode = BasisMode::Aniso;
  p.eta = oscillatory ? CoeffField::constant_plus_sine(1.0, 0.5, {3, 0, 0})
                      : CoeffField::constant(1.0);
  p.beta[0] = CoeffField::constant(0.0);
  p.rho = CoeffField::constant(1.0);
  const auto sol = manufactured("u1");
  p.solution = sol.eval;
  p.solution_id = sol.id;
  return p;
}

}  // namespace

ValidationReport validate_suite(bool verbose) {
  ValidationReport report;
  auto add = [&](const std::string& name, bool passed, double measured,
                 const std::string& detail) {
    report.checks.push_back({name, passed, measured, detail});
    if (verbose)
      std::cout << (passed ? "[PASS] " : "[FAIL] ") << name << ": " << detail
                << " (measured " << measured << ")\n";
  };

  {
    const bool ok = check_filter_biorthogonality(
        FilterBank::a, FilterBank::a_min, FilterBank::a_dual, FilterBank::a_dual_min,
        FilterBank::b, FilterBank::b_min, FilterBank::b_dual, FilterBank::b_dual_min);
    add("filter-biorthogonality", ok, ok ? 0.0 : 1.0,
        "perfect-reconstruction identities, exact arithmetic");
  }

  {
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector x(512);
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = Complex(normal(rng), normal(rng));
    const CVector back = dwt_synthesis(dwt_analysis(x, 2), 2);
    const double err = (back - x).norm() / x.norm();
    add("dwt-round-trip", err <= 1e-12, err, "relative error at L = 9");
  }

  {
    std::mt19937_64 rng(777);
    double worst = 0.0;
    for (int c = 0; c < 200; ++c) {
      const int lev = 2 + static_cast<int>(rng() % 7);  // 2..8
      const bool wav = (rng() % 2) == 0;
      const int k = static_cast<int>(rng() % (1u << lev));
      const long q = static_cast<long>(rng() % 513) - 256;
      const Complex closed = wav ? psi_fourier(lev, k, q) : phi_fourier(lev, k, q);
      const Complex quad = oracle::factor_fourier_quadrature(wav, lev, k, q);
      worst = std::max(worst, std::abs(closed - quad));
    }
    add("closed-form-vs-quadrature", worst <= 1e-9, worst,
        "200 random (level, shift, q), absolute");
  }

  {
    // Tensor zero patterns: wavelet factor on an axis with q_d = 0 kills the
    // product; all-scaling with q = 0 gives 2^{-n l0 / 2}.
    bool ok = true;
    const TrialBasis ani(2, 2, 4, BasisMode::Aniso);
    const TrialBasis iso(2, 2, 4, BasisMode::Iso);
    for (const TrialBasis* basis : {&ani, &iso}) {
      for (std::size_t j = 0; j < basis->size(); j += 3) {
        for (long q0 = -4; q0 <= 4; ++q0)
          for (long q1 = -4; q1 <= 4; ++q1) {
            const std::array<long, 2> q = {q0, q1};
            bool must_vanish = false;
            for (int d = 0; d < 2; ++d)
              if (q[d] == 0 && basis->factor(j, d).wavelet) must_vanish = true;
            if (must_vanish &&
                tensor_product_coeff(*basis, j, std::span<const long>(q)) != 0.0)
              ok = false;
          }
      }
    }
    const TrialBasis ani3(2, 2, 3, BasisMode::Aniso);
    const std::array<long, 2> zero = {0, 0};
    const Complex all_scal =
        tensor_product_coeff(ani3, 0, std::span<const long>(zero));
    ok = ok && std::abs(all_scal - std::exp2(-2.0)) <= 1e-14;
    add("tensor-zero-patterns", ok, ok ? 0.0 : 1.0,
        "vanishing products and the all-scaling value at q = 0");
  }

  {
    // |(D^a1 theta, D^a2 xi_q)| against the closed-form bounds, k = 0 (the
    // modulus does not depend on the shift).
    const double b_norm2 = std::sqrt(0.25 * 0.25 * 2 + 0.5 * 0.5 * 2 + 1.5 * 1.5);
    bool ok = true;
    double worst_ratio = 0.0;
    for (double gamma : {0.0, 0.5, 1.0, 2.0})
      for (int a1 = 0; a1 <= 1; ++a1)
        for (int a2 = 0; a2 <= 1; ++a2)
          for (int lev = 2; lev <= 8; ++lev)
            for (long q = 1; q <= 256; ++q) {
              const double deriv = std::pow(2.0 * M_PI * q, a1 + a2);
              const double piq = std::pow(M_PI * q, gamma - 2.0 + a1 + a2);
              const double common = std::exp2((1.5 - gamma) * lev) * piq;
              const double scal_bound = std::exp2(a1 + a2) * common;
              const double wave_bound =
                  std::exp2(a1 + a2 + 1 - gamma) * b_norm2 * std::sqrt(5.0) * common;
              const double scal = deriv * std::abs(phi_fourier(lev, 0, q));
              const double wave = deriv * std::abs(psi_fourier(lev, 0, q));
              worst_ratio = std::max({worst_ratio, scal / scal_bound, wave / wave_bound});
              if (scal > scal_bound * (1.0 + 1e-12) || wave > wave_bound * (1.0 + 1e-12))
                ok = false;
            }
    add("auxiliary-inequalities", ok, worst_ratio,
        "worst value/bound ratio over the (gamma, level, q) sweep");
  }

  {
    // Monte-Carlo preconditioner identity on a small 1D problem.
    AdrProblem p = study_problem_1d(false);
    p.L = 5;
    p.R = 32;
    const Assembler assembler(p);
    const auto B = assembler.assemble_B();
    const Eigen::MatrixXcd gram = B.adjoint() * B;
    const SamplingMeasure measure = build_measure(MeasureKind::Thm43, p);
    const auto taus = draw_tests(measure, 20000, 2024);
    Eigen::MatrixXcd estimate = Eigen::MatrixXcd::Zero(B.cols(), B.cols());
    for (std::size_t t : taus) {
      const auto row = B.row(static_cast<Eigen::Index>(t));
      estimate.noalias() += row.adjoint() * row / measure.p[t];
    }
    estimate /= static_cast<double>(taus.size());
    const double rel = (estimate - gram).norm() / gram.norm();
    add("preconditioner-identity", rel <= 0.05, rel,
        "Monte-Carlo E[(DA)*DA] vs B*B, Frobenius, 2e4 samples");
  }

  {
    for (bool osc : {false, true}) {
      const AdrProblem p = study_problem_1d(osc);
      const Assembler assembler(p);
      const auto B = assembler.assemble_B();
      const Eigen::VectorXd mu = empirical_coherence(B);
      MeasureParams params;
      params.N = 512.0;
      params.C = compute_constant_C(p);
      const auto nu = nu_on_grid(MeasureKind::Thm43, assembler.grid(), params);
      double K = 0.0;
      for (std::size_t i = 0; i < nu.size(); ++i)
        K = std::max(K, mu[static_cast<Eigen::Index>(i)] / nu[i]);
      add(osc ? "coherence-dominance-oscillatory" : "coherence-dominance-constant",
          K <= 1e3, K, "single constant K with mu <= K nu over Q");

      const double kappa = condition_number(B);
      const double target = osc ? 28.2 : 20.4;
      add(osc ? "condition-number-oscillatory" : "condition-number-constant",
          std::abs(kappa - target) <= 0.05 * target, kappa,
          "kappa(B) at L = 9, R = 512");
    }
  }

  {
    bool ok = true;
    double worst = 0.0;
    const AdrProblem p1 = study_problem_1d(false);
    for (MeasureKind kind :
         {MeasureKind::Uniform, MeasureKind::Thm43, MeasureKind::Sharp1D}) {
      const double total = build_measure(kind, p1).total();
      worst = std::max(worst, std::abs(total - 1.0));
    }
    AdrProblem p2;
    p2.n = 2;
    p2.l0 = 2;
    p2.L = 5;
    p2.R = 32;
    for (MeasureKind kind :
         {MeasureKind::Uniform, MeasureKind::Thm45, MeasureKind::Thm47,
          MeasureKind::Practical}) {
      const double total = build_measure(kind, p2).total();
      worst = std::max(worst, std::abs(total - 1.0));
    }
    ok = worst <= 1e-12;
    add("measure-normalization", ok, worst, "sum of p over Q minus one");
  }

  {
    // OMP against exhaustive support search on planted 2-sparse problems.
    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal(0.0, 1.0);
    bool ok = true;
    for (int inst = 0; inst < 20; ++inst) {
      Eigen::MatrixXcd A(10, 20);
      for (Eigen::Index i = 0; i < A.size(); ++i)
        A.data()[i] = Complex(normal(rng), normal(rng));
      const int j1 = static_cast<int>(rng() % 20);
      int j2 = static_cast<int>(rng() % 20);
      while (j2 == j1) j2 = static_cast<int>(rng() % 20);
      CVector x = CVector::Zero(20);
      x[j1] = Complex(3.0 + normal(rng) * 0.1, 0.5);
      x[j2] = Complex(0.0, 1.5 + normal(rng) * 0.1);
      const CVector f = A * x;
      const SparseSolution omp = omp_solve(A, f, 2);

      double best_res = std::numeric_limits<double>::infinity();
      std::pair<int, int> best_pair{-1, -1};
      for (int p = 0; p < 20; ++p)
        for (int q = p + 1; q < 20; ++q) {
          Eigen::MatrixXcd As(10, 2);
          As.col(0) = A.col(p);
          As.col(1) = A.col(q);
          const CVector z = As.colPivHouseholderQr().solve(f);
          const double res = (As * z - f).norm();
          if (res < best_res) {
            best_res = res;
            best_pair = {p, q};
          }
        }
      std::vector<std::size_t> got = omp.support;
      std::sort(got.begin(), got.end());
      if (got.size() != 2 ||
          static_cast<int>(got[0]) != best_pair.first ||
          static_cast<int>(got[1]) != best_pair.second)
        ok = false;
    }
    add("omp-vs-exhaustive", ok, ok ? 0.0 : 1.0,
        "support match on 20 random 10x20 planted instances");
  }

  return report;
}

}  // namespace corsing
