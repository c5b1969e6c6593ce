#include "corsing/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef CORSINGWF_HAVE_LAPACKE
#include <complex>
#define lapack_complex_double std::complex<double>
#define lapack_complex_float std::complex<float>
#include <lapacke.h>
#else
#include <Eigen/SVD>
#endif

namespace corsing {

std::vector<double> singular_values(const Eigen::MatrixXcd& A) {
  const auto m = A.rows(), n = A.cols();
  if (m == 0 || n == 0) return {};
#ifdef CORSINGWF_HAVE_LAPACKE
  Eigen::MatrixXcd work = A;  // zgesdd overwrites its input
  std::vector<double> s(static_cast<std::size_t>(std::min(m, n)));
  const lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(m), static_cast<lapack_int>(n),
      work.data(), static_cast<lapack_int>(m), s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("zgesdd failed");
  return s;
#else
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
#endif
}

double condition_number(const Eigen::MatrixXcd& A) {
  const auto s = singular_values(A);
  if (s.empty() || s.back() == 0.0)
    throw std::runtime_error("singular matrix has no finite condition number");
  return s.front() / s.back();
}

}  // namespace corsing
