#include <doctest.h>

#include <random>

#include "corsing/oracles.hpp"
#include "corsing/tensor_basis.hpp"

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

TEST_CASE("trial basis sizes") {
  CHECK(TrialBasis(2, 2, 3, BasisMode::Aniso).size() == 64);
  CHECK(TrialBasis(2, 2, 3, BasisMode::Iso).size() == 64);
  CHECK(TrialBasis(2, 2, 6, BasisMode::Aniso).size() == 4096);
  CHECK(TrialBasis(2, 2, 6, BasisMode::Iso).size() == 4096);
  CHECK(TrialBasis(3, 2, 4, BasisMode::Aniso).size() == 4096);
  CHECK(TrialBasis(3, 2, 4, BasisMode::Iso).size() == 4096);
  CHECK_THROWS_AS(TrialBasis(4, 2, 4, BasisMode::Aniso), std::invalid_argument);
  CHECK_THROWS_AS(TrialBasis(2, 1, 4, BasisMode::Aniso), std::invalid_argument);
  CHECK_THROWS_AS(TrialBasis(2, 4, 4, BasisMode::Iso), std::invalid_argument);
}

TEST_CASE("iso block enumeration telescopes to 2^(nL)") {
  const TrialBasis basis(2, 2, 3, BasisMode::Iso);
  // 16 scaling + 3 * 16 wavelet-type entries at level 2
  std::size_t scal = 0, typed = 0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto idx = basis.iso_index(j);
    CHECK(basis.iso_flat(idx) == j);
    if (idx.type == 0)
      ++scal;
    else
      ++typed;
  }
  CHECK(scal == 16);
  CHECK(typed == 48);
}

TEST_CASE("h1 weights") {
  const TrialBasis ani(2, 2, 6, BasisMode::Aniso);
  // levels (3, 5) -> 2^-5
  std::size_t j = canonical_position({3, 0}, 2) * 64 + canonical_position({5, 0}, 2);
  CHECK(ani.h1_weight(j) == doctest::Approx(std::exp2(-5)).epsilon(1e-15));
  // all-scaling layer uses the effective scale l0
  CHECK(ani.h1_weight(0) == doctest::Approx(std::exp2(-2)).epsilon(1e-15));

  const TrialBasis iso(2, 2, 6, BasisMode::Iso);
  bool saw_level4 = false;
  for (std::size_t p = 0; p < iso.size(); ++p) {
    const auto idx = iso.iso_index(p);
    if (idx.level == 4 && idx.type == 2) {
      CHECK(iso.h1_weight(p) == doctest::Approx(std::exp2(-4)).epsilon(1e-15));
      saw_level4 = true;
      break;
    }
  }
  CHECK(saw_level4);
}

TEST_CASE("tensor transforms round trip") {
  for (BasisMode mode : {BasisMode::Aniso, BasisMode::Iso}) {
    for (int n : {1, 2, 3}) {
      const int L = n == 3 ? 3 : 4;
      const Eigen::Index size = Eigen::Index{1} << (n * L);
      const CVector x = random_complex(size, 17 * n + (mode == BasisMode::Iso));
      const CVector back = tensor_idwt(tensor_dwt(x, n, 2, L, mode), n, 2, L, mode);
      CHECK((back - x).norm() <= 1e-12 * x.norm());
    }
  }
  CHECK_THROWS_AS(tensor_dwt(CVector::Zero(100), 2, 2, 4, BasisMode::Aniso),
                  std::invalid_argument);
}

TEST_CASE("constant arrays live in the coarsest scaling block") {
  for (BasisMode mode : {BasisMode::Aniso, BasisMode::Iso}) {
    const int n = 2, l0 = 2, L = 4;
    const CVector ones = CVector::Constant(1 << (n * L), 1.0);
    const CVector w = tensor_dwt(ones, n, l0, L, mode);
    const TrialBasis basis(n, l0, L, mode);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      bool all_scaling = true;
      for (int d = 0; d < n; ++d)
        if (basis.factor(j, d).wavelet) all_scaling = false;
      if (!all_scaling) CHECK(std::abs(w[static_cast<Eigen::Index>(j)]) <= 1e-12);
    }
  }
}

TEST_CASE("anisotropic transform of a rank-1 array is the outer product") {
  const int l0 = 2, L = 4;
  const Eigen::Index ext = 1 << L;
  const CVector x = random_complex(ext, 5);
  const CVector y = random_complex(ext, 6);
  CVector arr(ext * ext);
  for (Eigen::Index i = 0; i < ext; ++i)
    for (Eigen::Index j = 0; j < ext; ++j) arr[i * ext + j] = x[i] * y[j];
  const CVector got = tensor_dwt(arr, 2, l0, L, BasisMode::Aniso);
  const CVector wx = dwt_analysis(x, l0);
  const CVector wy = dwt_analysis(y, l0);
  for (Eigen::Index i = 0; i < ext; ++i)
    for (Eigen::Index j = 0; j < ext; ++j)
      CHECK(std::abs(got[i * ext + j] - wx[i] * wy[j]) <= 1e-12);
}

TEST_CASE("h1 weight times the basis function has H1 norm in a fixed band") {
  // 1D exhaustive at L = 9. The mother wavelet has |psi|_H1 = sqrt(16.5)
  // = 4.062..., which the ratio approaches from above at fine levels, so the
  // band is [1/4.25, 4.25].
  const int l0 = 2, L = 9;
  const TrialBasis basis(1, l0, L, BasisMode::Aniso);
  const int J = L + 1;
  const Eigen::Index fine = 1 << J;
  for (std::size_t j = 0; j < basis.size(); j += 7) {
    const TrialFactor f = basis.factor(j, 0);
    Eigen::VectorXd nodal(fine);
    for (Eigen::Index i = 0; i < fine; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(fine);
      nodal[i] = f.wavelet ? oracle::psi_point(f.level, f.shift, x)
                           : oracle::phi_point(f.level, f.shift, x);
    }
    const double h1 = std::sqrt(oracle::pw_linear_l2_normsq(nodal) +
                                oracle::pw_linear_h1_seminormsq(nodal));
    const double ratio = basis.h1_weight(j) * h1;
    CHECK(ratio >= 1.0 / 4.25);
    CHECK(ratio <= 4.25);
  }

  // 2D spot checks via the separable H1 identity; equal-level wavelet pairs
  // reach sqrt(2) |psi|_H1 ||psi||_L2 = 4.98, so the 2D band uses c = 5.5
  const TrialBasis ani(2, l0, 5, BasisMode::Aniso);
  auto norms_1d = [&](const TrialFactor& f) {
    const Eigen::Index nf = 1 << (f.level + 2);
    Eigen::VectorXd nodal(nf);
    for (Eigen::Index i = 0; i < nf; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(nf);
      nodal[i] = f.wavelet ? oracle::psi_point(f.level, f.shift, x)
                           : oracle::phi_point(f.level, f.shift, x);
    }
    return std::pair<double, double>{oracle::pw_linear_l2_normsq(nodal),
                                     oracle::pw_linear_h1_seminormsq(nodal)};
  };
  std::mt19937_64 rng(11);
  for (int c = 0; c < 40; ++c) {
    const std::size_t j = rng() % ani.size();
    const auto [l2a, h1a] = norms_1d(ani.factor(j, 0));
    const auto [l2b, h1b] = norms_1d(ani.factor(j, 1));
    const double h1sq = l2a * l2b + h1a * l2b + l2a * h1b;
    const double ratio = ani.h1_weight(j) * std::sqrt(h1sq);
    CHECK(ratio >= 1.0 / 5.5);
    CHECK(ratio <= 5.5);
  }
}
