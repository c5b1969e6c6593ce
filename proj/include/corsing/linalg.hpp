#pragma once

#include <Eigen/Core>
#include <vector>

namespace corsing {

/// Singular values of a dense complex matrix, descending. Uses LAPACK's
/// divide-and-conquer SVD when available, Eigen otherwise.
std::vector<double> singular_values(const Eigen::MatrixXcd& A);

/// 2-norm condition number sigma_max / sigma_min.
double condition_number(const Eigen::MatrixXcd& A);

}  // namespace corsing
