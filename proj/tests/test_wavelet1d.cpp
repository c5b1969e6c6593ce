#include <doctest.h>

#include <random>

#include "corsing/oracles.hpp"
#include "corsing/wavelet1d.hpp"

using namespace corsing;

namespace {

CVector random_complex(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = Complex(normal(rng), normal(rng));
  return x;
}

}  // namespace

TEST_CASE("index enumeration counts and layout") {
  const auto idx = enumerate_indices(2, 3);
  REQUIRE(idx.size() == 8);
  // 4 scaling indices at level 1 (= l0 - 1), then 4 wavelets at level 2
  for (int k = 0; k < 4; ++k) {
    CHECK(idx[k].level == 1);
    CHECK(idx[k].shift == k);
    CHECK(idx[k].is_scaling(2));
  }
  for (int k = 0; k < 4; ++k) {
    CHECK(idx[4 + k].level == 2);
    CHECK(!idx[4 + k].is_scaling(2));
  }
  CHECK(enumerate_indices(2, 9).size() == 512);

  CHECK_THROWS_AS(enumerate_indices(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_indices(1, 5), std::invalid_argument);

  // canonical_position and index_at are inverse bijections
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    CHECK(canonical_position(idx[pos], 2) == pos);
    const WaveletIndex back = index_at(pos, 2);
    CHECK(back.level == idx[pos].level);
    CHECK(back.shift == idx[pos].shift);
  }
}

TEST_CASE("perfect reconstruction") {
  for (int l0 : {2, 3}) {
    for (int L : {l0 + 1, 6, 9}) {
      const CVector x = random_complex(1 << L, 1000 + L);
      const CVector back = dwt_synthesis(dwt_analysis(x, l0), l0);
      CHECK((back - x).norm() <= 1e-12 * x.norm());
    }
  }
  CHECK_THROWS_AS(dwt_analysis(CVector::Zero(100), 2), std::invalid_argument);
  CHECK_THROWS_AS(dwt_analysis(CVector::Zero(4), 2), std::invalid_argument);
}

TEST_CASE("filter refinement matches the hat and mother wavelet") {
  // phi(x) = sum a_k phi(2x - k) and psi(x) = sum b_k phi(2x - k), spot values
  for (double x : {-0.75, -0.3, 0.0, 0.4, 0.9, 1.3, 1.9}) {
    double acc = 0.0;
    for (int t = 0; t < 5; ++t)
      acc += FilterBank::b[t] *
             std::max(0.0, 1.0 - std::abs(2.0 * x - (FilterBank::b_min + t)));
    CHECK(oracle::psi_point(0, 0, x, false) == doctest::Approx(acc).epsilon(1e-14));
  }
}

TEST_CASE("vanishing moments of the analysis bands") {
  const int l0 = 2, L = 6;
  const Eigen::Index n = 1 << L;

  // constants: every wavelet band vanishes
  CVector ones = CVector::Constant(n, std::exp2(-0.5 * L));
  CVector w = dwt_analysis(ones, l0);
  CHECK(w.tail(n - (1 << l0)).lpNorm<Eigen::Infinity>() <= 1e-12);

  // affine input: dual highpass has two vanishing moments away from the wrap
  CVector affine(n);
  for (Eigen::Index k = 0; k < n; ++k)
    affine[k] = 0.7 * static_cast<double>(k) + 0.3;
  w = dwt_analysis(affine, l0);
  // finest band occupies [n/2, n); the wrap contaminates shifts near 0 and n/2-1
  for (Eigen::Index k = n / 2 + 2; k < n - 2; ++k)
    CHECK(std::abs(w[k]) <= 1e-12);
}

TEST_CASE("synthesis of a unit coarse coefficient is the refinement cascade") {
  const int l0 = 2, L = 7;
  const Eigen::Index n = 1 << L;
  CVector unit = CVector::Zero(n);
  unit[0] = 1.0;  // (l0 - 1, 0): the scaling function phi_{2,0}
  const CVector fine = dwt_synthesis(unit, l0);

  // expand phi_{l0,0} by the a-filter cascade down to level L, independently
  std::vector<double> coeffs = {1.0};
  int offset = 0;  // support start index at the current level
  for (int lev = l0; lev < L; ++lev) {
    std::vector<double> next(2 * coeffs.size() + 4, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      for (int t = 0; t < 3; ++t)
        next[2 * k + t] += coeffs[k] * FilterBank::a[t] / std::sqrt(2.0);
    coeffs = std::move(next);
    offset = 2 * offset + FilterBank::a_min;
  }
  CVector expected = CVector::Zero(n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Eigen::Index pos = ((offset + static_cast<Eigen::Index>(i)) % n + n) % n;
    expected[pos] += coeffs[i];
  }
  CHECK((fine - expected).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("analysis of an impulse matches dual-function inner products") {
  // c_{l,k} = (phi_{L,j0}, dual_{l,k}) with the dual functions evaluated by
  // cascade iteration; the iterates converge slowly, so the tolerance is loose
  // but far below the O(0.1..1) effect of any filter or indexing defect.
  const int l0 = 2, L = 5, j0 = 7;
  const Eigen::Index n = 1 << L;
  CVector impulse = CVector::Zero(n);
  impulse[j0] = 1.0;
  const CVector got = dwt_analysis(impulse, l0);

  const auto phi_dual = oracle::dual_scaling_cascade(16);
  const auto psi_dual = oracle::dual_wavelet_cascade(16);
  for (std::size_t pos = 0; pos < static_cast<std::size_t>(n); pos += 3) {
    const WaveletIndex idx = index_at(pos, l0);
    const bool scal = idx.is_scaling(l0);
    const double expected =
        oracle::hat_vs_cascade(L, j0, scal ? phi_dual : psi_dual,
                               idx.effective_level(l0), idx.shift);
    CHECK(std::abs(got[static_cast<Eigen::Index>(pos)] - expected) <= 2e-2);
  }
}

TEST_CASE("interpolation examples") {
  const CVector c = interpolate_to_level([](double) { return 1.0; }, 3);
  for (Eigen::Index k = 0; k < 8; ++k)
    CHECK(c[k].real() == doctest::Approx(std::exp2(-1.5)).epsilon(1e-15));

  // sawtooth reproduced exactly at the nodes after synthesis
  const int L = 5;
  auto saw = [](double x) { return x - 0.5; };
  const CVector fine = interpolate_to_level(saw, L);
  const double scale = std::exp2(0.5 * L);  // phi_{L,k}(k 2^-L) = 2^{L/2}
  for (Eigen::Index k = 0; k < (1 << L); ++k)
    CHECK(fine[k].real() * scale ==
          doctest::Approx(saw(static_cast<double>(k) / (1 << L))).epsilon(1e-14));

  // round trip through the wavelet basis preserves nodal values
  const CVector back = dwt_synthesis(dwt_analysis(fine, 2), 2);
  CHECK((back - fine).lpNorm<Eigen::Infinity>() <= 1e-13);
}

TEST_CASE("periodized wavelet equals the mother wavelet on its support") {
  // no-overlap condition for l0 >= 2
  for (int lev : {2, 3, 5}) {
    const int k = (1 << lev) - 1;  // support wraps around x = 1
    const double lo = (k - 1.0) * std::exp2(-lev);
    for (int i = 0; i <= 20; ++i) {
      const double x = lo + 3.0 * std::exp2(-lev) * i / 20.0;
      const double periodized = oracle::psi_point(lev, k, x - std::floor(x), true);
      const double plain = oracle::psi_point(lev, k, x, false);
      CHECK(periodized == doctest::Approx(plain).epsilon(1e-13));
    }
  }
}
