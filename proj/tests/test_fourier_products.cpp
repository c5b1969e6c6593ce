#include <doctest.h>

#include <random>

#include "corsing/fourier_products.hpp"
#include "corsing/oracles.hpp"

using namespace corsing;

TEST_CASE("test function H1 norms") {
  const long q0[] = {0};
  CHECK(test_h1_normsq(std::span<const long>(q0, 1)) == doctest::Approx(1.0));
  const long q1[] = {1, 0};
  CHECK(test_h1_normsq(std::span<const long>(q1, 2)) ==
        doctest::Approx(1.0 + 4.0 * M_PI * M_PI).epsilon(1e-14));
  const long q2[] = {3, 4};
  CHECK(test_h1_normsq(std::span<const long>(q2, 2)) ==
        doctest::Approx(1.0 + 25.0 * 4.0 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("scaling-function products: closed-form values") {
  CHECK(phi_fourier(5, 4, 0).real() == doctest::Approx(std::exp2(-2.5)).epsilon(1e-14));
  CHECK(phi_fourier(5, 4, 0).imag() == 0.0);

  // q a nonzero multiple of 2^level vanishes exactly
  CHECK(phi_fourier(3, 0, 8) == Complex(0.0, 0.0));
  CHECK(phi_fourier(3, 5, -16) == Complex(0.0, 0.0));

  // frozen value from the quadrature oracle (level 3, shift 0, q = 1)
  CHECK(phi_fourier(3, 0, 1).real() == doctest::Approx(0.3357486).epsilon(1e-6));
  CHECK(std::abs(phi_fourier(3, 0, 1).imag()) <= 1e-15);
}

TEST_CASE("wavelet products: vanishing moment and refinement expansion") {
  for (int lev : {2, 4, 7})
    for (int k : {0, 3}) CHECK(psi_fourier(lev, k, 0) == Complex(0.0, 0.0));

  // Lemma bound at (level 5, shift 4, q 16), gamma = 2
  const double b_norm2 = std::sqrt(2 * 0.25 * 0.25 + 2 * 0.5 * 0.5 + 1.5 * 1.5);
  const double lhs = std::pow(2.0 * M_PI * 16.0, 2) * std::abs(psi_fourier(5, 4, 16));
  const double rhs = std::exp2(3.0 - 2.0) * b_norm2 * std::sqrt(5.0) *
                     std::exp2((1.5 - 2.0) * 5.0) * std::pow(M_PI * 16.0, 2.0);
  CHECK(lhs <= rhs);

  // quadrature oracle match at (3, 0, 1)
  const Complex quad = oracle::factor_fourier_quadrature(true, 3, 0, 1);
  CHECK(std::abs(psi_fourier(3, 0, 1) - quad) <= 1e-10);
}

TEST_CASE("closed forms match the quadrature oracle on random cases") {
  std::mt19937_64 rng(424242);
  double worst = 0.0;
  for (int c = 0; c < 200; ++c) {
    const int lev = 2 + static_cast<int>(rng() % 7);
    const bool wav = (rng() % 2) == 0;
    const int k = static_cast<int>(rng() % (1u << lev));
    const long q = static_cast<long>(rng() % 513) - 256;
    const Complex closed = wav ? psi_fourier(lev, k, q) : phi_fourier(lev, k, q);
    const Complex quad = oracle::factor_fourier_quadrature(wav, lev, k, q);
    worst = std::max(worst, std::abs(closed - quad));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("integration-by-parts consistency") {
  // (2 pi q)^2 (phi, xi_q) equals the directly computed (phi', xi_q')
  for (int lev : {2, 5, 8})
    for (long q : {1L, 3L, 17L, -41L, 255L}) {
      const Complex lhs = std::pow(2.0 * M_PI * q, 2) * phi_fourier(lev, 3, q);
      const double t = static_cast<double>(q) * std::exp2(-lev);
      const Complex rhs = 4.0 * std::exp2(1.5 * lev) *
                          std::polar(1.0, -2.0 * M_PI * t * 3.0) *
                          std::sin(M_PI * t) * std::sin(M_PI * t);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("auxiliary inequality sweep") {
  const double b_norm2 = std::sqrt(2 * 0.25 * 0.25 + 2 * 0.5 * 0.5 + 1.5 * 1.5);
  for (double gamma : {0.0, 0.5, 1.0, 2.0})
    for (int a1 = 0; a1 <= 1; ++a1)
      for (int a2 = 0; a2 <= 1; ++a2)
        for (int lev = 2; lev <= 8; ++lev)
          for (long q = 1; q <= 256; q += 3) {
            const double deriv = std::pow(2.0 * M_PI * q, a1 + a2);
            const double common = std::exp2((1.5 - gamma) * lev) *
                                  std::pow(M_PI * q, gamma - 2.0 + a1 + a2);
            CHECK(deriv * std::abs(phi_fourier(lev, 0, q)) <=
                  std::exp2(a1 + a2) * common * (1.0 + 1e-12));
            CHECK(deriv * std::abs(psi_fourier(lev, 0, q)) <=
                  std::exp2(a1 + a2 + 1 - gamma) * b_norm2 * std::sqrt(5.0) * common *
                      (1.0 + 1e-12));
          }
}

TEST_CASE("tensor product zero patterns") {
  const TrialBasis ani(2, 2, 4, BasisMode::Aniso);
  const TrialBasis iso(2, 2, 4, BasisMode::Iso);

  // wavelet factor on an axis with q = 0 there kills the product exactly
  for (const TrialBasis* basis : {&ani, &iso})
    for (std::size_t j = 0; j < basis->size(); j += 5)
      for (long q0 = -3; q0 <= 3; ++q0)
        for (long q1 = -3; q1 <= 3; ++q1) {
          const std::array<long, 2> q = {q0, q1};
          bool must_vanish = false;
          for (int d = 0; d < 2; ++d)
            if (q[d] == 0 && basis->factor(j, d).wavelet) must_vanish = true;
          if (must_vanish)
            CHECK(tensor_product_coeff(*basis, j,
                                       std::span<const long>(q.data(), 2)) ==
                  Complex(0.0, 0.0));
        }

  // all-scaling layer at q = 0 gives 2^{-n l0 / 2}
  const std::array<long, 2> zero = {0, 0};
  CHECK(tensor_product_coeff(ani, 0, std::span<const long>(zero.data(), 2)).real() ==
        doctest::Approx(std::exp2(-2.0)).epsilon(1e-14));
  CHECK(tensor_product_coeff(iso, 0, std::span<const long>(zero.data(), 2)).real() ==
        doctest::Approx(std::exp2(-2.0)).epsilon(1e-14));
}
