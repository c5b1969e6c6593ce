#include <doctest.h>

#include <random>

#include "corsing/coherence.hpp"
#include "corsing/experiments.hpp"

using namespace corsing;

TEST_CASE("1D coherence bound") {
  CHECK(nu_1d(0, 512, 2.5) == doctest::Approx(2.5));
  // second branch is active for 1 <= |q| <= N
  for (long q : {1L, 7L, 500L})
    CHECK(nu_1d(q, 512, 1.0) == doctest::Approx(1.0 / std::abs((double)q)));
  CHECK(nu_1d(1000, 512, 1.0) == doctest::Approx(512.0 / 1e6));

  // tail sum behaves like N/R: doubling R halves the tail
  auto tail = [](long R) {
    double s = 0.0;
    for (long q = R / 2; q <= 100000; ++q) s += 2.0 * nu_1d(q, 512.0, 1.0);
    return s;
  };
  const double t1 = tail(1 << 12), t2 = tail(1 << 13);
  CHECK(t1 / t2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("sharp 1D variant") {
  CHECK(nu_1d_sharp(1, 512, 1.0, 0.5, 2.0) == doctest::Approx(3.5));
  // large |q|: the eta term dominates; ratio to nu_1d tends to eta/C
  const double big = 511;
  const double ratio = nu_1d_sharp(big, 512, 1.0, 0.5, 2.0) / nu_1d(big, 512, 3.5);
  CHECK(ratio == doctest::Approx(1.0 / 3.5).epsilon(1e-3));
  // monotone nonincreasing in |q| for |q| >= 1
  double prev = nu_1d_sharp(1, 512, 1.0, 0.5, 2.0);
  for (long q = 2; q <= 600; ++q) {
    const double cur = nu_1d_sharp(q, 512, 1.0, 0.5, 2.0);
    CHECK(cur <= prev * (1.0 + 1e-12));
    prev = cur;
  }
}

TEST_CASE("anisotropic and isotropic bounds") {
  const long z2[] = {0, 0};
  CHECK(nu_ani(std::span<const long>(z2, 2), 2, 6, 2) ==
        doctest::Approx(std::exp2(-8.0)));
  const long z3[] = {0, 0, 0};
  CHECK(nu_iso(std::span<const long>(z3, 3), 2, 4, 3) ==
        doctest::Approx(std::exp2(-10.0)));

  // unit support: the second min argument evaluates to 2^{-l0} * 1
  const long e1[] = {1, 0};
  CHECK(nu_ani(std::span<const long>(e1, 2), 2, 6, 2) ==
        doctest::Approx(std::exp2(-2.0)));

  // n = 2, ||q||_0 = 1: the iso exponent vanishes and the first argument is
  // 2 ||q||^2 / |qhat|^4
  const long e5[] = {5, 0};
  CHECK(nu_iso(std::span<const long>(e5, 2), 2, 6, 2) ==
        doctest::Approx(std::min(2.0 * 25.0 / 625.0, std::exp2(-2.0) / 5.0)));

  // permutation and sign symmetry
  std::mt19937_64 rng(3);
  for (int c = 0; c < 50; ++c) {
    long q[3];
    for (auto& v : q) v = static_cast<long>(rng() % 17) - 8;
    long qp[3] = {q[2], q[0], q[1]};
    long qs[3] = {-q[0], q[1], -q[2]};
    for (int n : {2, 3}) {
      const std::span<const long> a(q, static_cast<std::size_t>(n));
      const std::span<const long> s(qs, static_cast<std::size_t>(n));
      CHECK(nu_ani(a, 2, 4, n) == doctest::Approx(nu_ani(s, 2, 4, n)));
      CHECK(nu_iso(a, 2, 4, n) == doctest::Approx(nu_iso(s, 2, 4, n)));
      CHECK(nu_practical(a) == doctest::Approx(nu_practical(s)));
    }
    const std::span<const long> a3(q, 3), p3(qp, 3);
    CHECK(nu_ani(a3, 2, 4, 3) == doctest::Approx(nu_ani(p3, 2, 4, 3)));
    CHECK(nu_iso(a3, 2, 4, 3) == doctest::Approx(nu_iso(p3, 2, 4, 3)));
    CHECK(nu_practical(a3) == doctest::Approx(nu_practical(p3)));
  }
}

TEST_CASE("practical bound values") {
  const long z[] = {0, 0};
  CHECK(nu_practical(std::span<const long>(z, 2)) == doctest::Approx(1.0));
  for (long t : {1L, 2L, 9L}) {
    const long q[] = {t, 0};
    CHECK(nu_practical(std::span<const long>(q, 2)) ==
          doctest::Approx(1.0 / static_cast<double>(t)));
  }
  const long q34[] = {3, 4};
  CHECK(nu_practical(std::span<const long>(q34, 2)) ==
        doctest::Approx(25.0 / 192.0));
}

TEST_CASE("measure construction") {
  const TestGrid g1(1, 16);
  MeasureParams params;
  params.N = 16;
  params.C = 1.0;
  const auto uniform = build_measure(MeasureKind::Uniform, g1, params);
  for (double v : uniform.p) CHECK(v == doctest::Approx(1.0 / 16.0));

  // p0 / p1 = 1 for the 1D bound when N >= 1
  const TestGrid g512(1, 512);
  params.N = 512;
  const auto thm = build_measure(MeasureKind::Thm43, g512, params);
  const long q0[] = {0}, q1[] = {1};
  CHECK(thm.p[g512.flat(std::span<const long>(q0, 1))] ==
        doctest::Approx(thm.p[g512.flat(std::span<const long>(q1, 1))]));

  // every kind sums to one
  const TestGrid g2(2, 16);
  params.l0 = 2;
  params.L = 4;
  for (MeasureKind kind : {MeasureKind::Uniform, MeasureKind::Thm45,
                           MeasureKind::Thm47, MeasureKind::Practical}) {
    const auto m = build_measure(kind, g2, params);
    CHECK(std::abs(m.total() - 1.0) <= 1e-12);
  }
  for (MeasureKind kind :
       {MeasureKind::Uniform, MeasureKind::Thm43, MeasureKind::Sharp1D}) {
    const auto m = build_measure(kind, g512, params);
    CHECK(std::abs(m.total() - 1.0) <= 1e-12);
  }

  CHECK_THROWS_AS(build_measure(MeasureKind::Thm43, g2, params),
                  std::invalid_argument);
}

TEST_CASE("restricted nu mass grows logarithmically in R") {
  // || nu|_Q ||_1 for the 1D bound: ratio at 2R over R approaches
  // 1 + log 2 / log R from above
  double prev_mass = 0.0;
  double prev_ratio = 2.0;
  for (int k = 6; k <= 12; ++k) {
    const long R = 1L << k;
    double mass = nu_1d(0, 512, 1.0);
    for (long q = -R / 2 + 1; q <= R / 2; ++q)
      if (q != 0) mass += nu_1d(q, 512, 1.0);
    if (prev_mass > 0.0) {
      const double ratio = mass / prev_mass;
      const double predicted = 1.0 + std::log(2.0) / std::log(static_cast<double>(R / 2));
      CHECK(std::abs(ratio - predicted) <= 0.10);
      CHECK(ratio <= prev_ratio + 1e-12);  // ratios decrease toward 1
      prev_ratio = ratio;
    }
    prev_mass = mass;
  }
}

TEST_CASE("recommendation recipes") {
  const auto r1 = recommend_R(50, 512, 1, 2.0, 9);
  CHECK(r1.theoretical == doctest::Approx(2.0 * 50 * 512));
  CHECK(r1.practical == 512);
  const auto r2 = recommend_R(100, 4096, 2, 4.0, 6);
  CHECK(r2.practical == 64);
  CHECK(r2.theoretical == doctest::Approx(4.0 * 100 * std::pow(4096.0, 2.0)));
  // monotone in s and N
  CHECK(recommend_R(60, 512, 1, 2.0, 9).theoretical > r1.theoretical);
  CHECK(recommend_R(50, 1024, 1, 2.0, 10).theoretical > r1.theoretical);

  const auto m1 = recommend_m(50, 512, 0.1, 2.0, 1, 2);
  CHECK(m1.empirical == 624);  // ceil(100 ln 512), natural log
  const auto m_eps = recommend_m(50, 512, 0.01, 2.0, 1, 2);
  CHECK(m_eps.theoretical > m1.theoretical);
  const auto m2 = recommend_m(50, 512, 0.1, 2.0, 2, 2);
  CHECK(m2.theoretical >= std::exp2(4.0) * m1.theoretical / 10.0);

  CHECK_THROWS_AS(recommend_m(0, 512, 0.1, 1.0, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(recommend_m(50, 512, 1.5, 1.0, 1, 2), std::invalid_argument);
}

TEST_CASE("empirical coherence") {
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(3, 4);
  B(1, 2) = Complex(3.0, 4.0);
  const Eigen::VectorXd mu = empirical_coherence(B);
  CHECK(mu[0] == 0.0);
  CHECK(mu[1] == doctest::Approx(25.0));
  CHECK(mu[2] == 0.0);
}

TEST_CASE("dominance of the empirical coherence, 1D study configuration") {
  for (bool osc : {false, true}) {
    AdrProblem p;
    p.n = 1;
    p.l0 = 2;
    p.L = 9;
    p.R = 512;
    p.eta = osc ? CoeffField::constant_plus_sine(1.0, 0.5, {3, 0, 0})
                : CoeffField::constant(1.0);
    p.beta[0] = CoeffField::constant(0.0);
    p.rho = CoeffField::constant(1.0);
    Assembler assembler(p);
    const auto B = assembler.assemble_B();
    const Eigen::VectorXd mu = empirical_coherence(B);
    MeasureParams params;
    params.N = 512;
    params.C = compute_constant_C(p);
    const auto nu = nu_on_grid(MeasureKind::Thm43, assembler.grid(), params);
    double K = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i)
      K = std::max(K, mu[static_cast<Eigen::Index>(i)] / nu[i]);
    CHECK(K <= 1e3);
    // mu decays with |q|: empirical dominance of the predicted envelope
    for (std::size_t i = 0; i < nu.size(); ++i)
      CHECK(mu[static_cast<Eigen::Index>(i)] <= K * nu[i] * (1.0 + 1e-12));
  }
}
