#include "corsing/tensor_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace corsing {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

inline Eigen::Index wrap(Eigen::Index a, Eigen::Index n) {
  Eigen::Index r = a % n;
  return r < 0 ? r + n : r;
}

void check_params(int n, int l0, int L) {
  if (n < 1 || n > 3) throw std::invalid_argument("dimension n must be 1, 2, or 3");
  if (l0 < 2) throw std::invalid_argument("coarsest level l0 must be >= 2");
  if (L <= l0) throw std::invalid_argument("finest level L must exceed l0");
}

// One analysis step along a strided line of even length n2, periodic.
void analysis_step(Complex* v, Eigen::Index stride, Eigen::Index n2, CVector& tmp) {
  const Eigen::Index n = n2 / 2;
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex lo = 0.0, hi = 0.0;
    for (int t = 0; t < 5; ++t)
      lo += FilterBank::a_dual[t] * v[stride * wrap(2 * k + FilterBank::a_dual_min + t, n2)];
    for (int t = 0; t < 3; ++t)
      hi += FilterBank::b_dual[t] * v[stride * wrap(2 * k + FilterBank::b_dual_min + t, n2)];
    tmp[k] = kInvSqrt2 * lo;
    tmp[n + k] = kInvSqrt2 * hi;
  }
  for (Eigen::Index i = 0; i < n2; ++i) v[stride * i] = tmp[i];
}

void synthesis_step(Complex* v, Eigen::Index stride, Eigen::Index n2, CVector& tmp) {
  const Eigen::Index n = n2 / 2;
  tmp.head(n2).setZero();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex lo = kInvSqrt2 * v[stride * k];
    const Complex hi = kInvSqrt2 * v[stride * (n + k)];
    for (int t = 0; t < 3; ++t)
      tmp[wrap(2 * k + FilterBank::a_min + t, n2)] += FilterBank::a[t] * lo;
    for (int t = 0; t < 5; ++t)
      tmp[wrap(2 * k + FilterBank::b_min + t, n2)] += FilterBank::b[t] * hi;
  }
  for (Eigen::Index i = 0; i < n2; ++i) v[stride * i] = tmp[i];
}

// Applies fn to every axis-d line of the corner block of extent `block` inside
// a (2^L)^n row-major array.
template <typename Fn>
void for_each_line(int n, int L, int axis, Eigen::Index block, Fn&& fn) {
  const Eigen::Index ext = Eigen::Index{1} << L;
  std::array<Eigen::Index, 3> stride = {0, 0, 0};
  Eigen::Index s = 1;
  for (int d = n - 1; d >= 0; --d) {
    stride[d] = s;
    s *= ext;
  }
  std::array<Eigen::Index, 3> c = {0, 0, 0};
  while (true) {
    Eigen::Index base = 0;
    for (int d = 0; d < n; ++d)
      if (d != axis) base += c[d] * stride[d];
    fn(base, stride[axis]);
    int d = n - 1;
    for (; d >= 0; --d) {
      if (d == axis) continue;
      if (++c[d] < block) break;
      c[d] = 0;
    }
    if (d < 0) break;
  }
}

}  // namespace

BasisMode basis_mode_from_string(const std::string& name) {
  if (name == "ani" || name == "aniso" || name == "anisotropic" || name == "1d")
    return BasisMode::Aniso;
  if (name == "iso" || name == "isotropic") return BasisMode::Iso;
  throw std::invalid_argument("unknown basis mode: " + name);
}

std::string to_string(BasisMode mode) {
  return mode == BasisMode::Aniso ? "ani" : "iso";
}

TrialBasis::TrialBasis(int n, int l0, int L, BasisMode mode)
    : n_(n), l0_(l0), L_(L), mode_(mode) {
  check_params(n, l0, L);
  one_d_size_ = std::size_t{1} << L;
  size_ = std::size_t{1} << (n * L);
}

std::array<std::size_t, 3> TrialBasis::axis_positions(std::size_t j) const {
  std::array<std::size_t, 3> p = {0, 0, 0};
  for (int d = n_ - 1; d >= 0; --d) {
    p[d] = j % one_d_size_;
    j /= one_d_size_;
  }
  return p;
}

TrialBasis::IsoIndex TrialBasis::iso_index(std::size_t j) const {
  IsoIndex idx{l0_, 0, {0, 0, 0}};
  std::size_t block = std::size_t{1} << (n_ * l0_);
  if (j >= block) {
    j -= block;
    for (int lev = l0_; lev < L_; ++lev) {
      const std::size_t per_type = std::size_t{1} << (n_ * lev);
      const std::size_t level_block = ((std::size_t{1} << n_) - 1) * per_type;
      if (j < level_block) {
        idx.level = lev;
        idx.type = static_cast<unsigned>(j / per_type) + 1;
        j %= per_type;
        break;
      }
      j -= level_block;
    }
  }
  const std::size_t ext = std::size_t{1} << idx.level;
  for (int d = n_ - 1; d >= 0; --d) {
    idx.shifts[d] = static_cast<int>(j % ext);
    j /= ext;
  }
  return idx;
}

std::size_t TrialBasis::iso_flat(const IsoIndex& idx) const {
  std::size_t base = 0;
  if (idx.type != 0) {
    base = std::size_t{1} << (n_ * l0_);
    for (int lev = l0_; lev < idx.level; ++lev)
      base += ((std::size_t{1} << n_) - 1) * (std::size_t{1} << (n_ * lev));
    base += (idx.type - 1) * (std::size_t{1} << (n_ * idx.level));
  }
  std::size_t flat = 0;
  for (int d = 0; d < n_; ++d)
    flat = flat * (std::size_t{1} << idx.level) + static_cast<std::size_t>(idx.shifts[d]);
  return base + flat;
}

double TrialBasis::h1_weight(std::size_t j) const {
  if (mode_ == BasisMode::Aniso) {
    const auto p = axis_positions(j);
    int eff_max = l0_;
    for (int d = 0; d < n_; ++d) {
      const WaveletIndex w = index_at(p[d], l0_);
      eff_max = std::max(eff_max, w.effective_level(l0_));
    }
    return std::exp2(-eff_max);
  }
  return std::exp2(-iso_index(j).level);
}

TrialFactor TrialBasis::factor(std::size_t j, int axis) const {
  if (mode_ == BasisMode::Aniso) {
    const WaveletIndex w = index_at(axis_positions(j)[axis], l0_);
    return {!w.is_scaling(l0_), w.effective_level(l0_), w.shift};
  }
  const IsoIndex idx = iso_index(j);
  const bool wav = ((idx.type >> (n_ - 1 - axis)) & 1u) != 0;
  return {wav, idx.level, idx.shifts[axis]};
}

CVector tensor_dwt(const CVector& fine, int n, int l0, int L, BasisMode mode) {
  check_params(n, l0, L);
  const std::size_t size = std::size_t{1} << (n * L);
  if (static_cast<std::size_t>(fine.size()) != size)
    throw std::invalid_argument("array size must be 2^(n L)");

  if (mode == BasisMode::Aniso) {
    CVector arr = fine;
    const Eigen::Index ext = Eigen::Index{1} << L;
    CVector line(ext);
    for (int axis = 0; axis < n; ++axis) {
      for_each_line(n, L, axis, ext, [&](Eigen::Index base, Eigen::Index stride) {
        for (Eigen::Index i = 0; i < ext; ++i) line[i] = arr[base + i * stride];
        CVector w = dwt_analysis(line, l0);
        for (Eigen::Index i = 0; i < ext; ++i) arr[base + i * stride] = w[i];
      });
    }
    return arr;
  }

  CVector arr = fine;
  CVector tmp(Eigen::Index{1} << L);
  for (int lev = L - 1; lev >= l0; --lev) {
    const Eigen::Index n2 = Eigen::Index{1} << (lev + 1);
    for (int axis = 0; axis < n; ++axis)
      for_each_line(n, L, axis, n2, [&](Eigen::Index base, Eigen::Index stride) {
        analysis_step(arr.data() + base, stride, n2, tmp);
      });
  }

  // Gather the nested-block layout into the canonical iso order.
  TrialBasis basis(n, l0, L, BasisMode::Iso);
  const Eigen::Index ext = Eigen::Index{1} << L;
  CVector out(arr.size());
  for (std::size_t j = 0; j < size; ++j) {
    const auto idx = basis.iso_index(j);
    const Eigen::Index half = Eigen::Index{1} << idx.level;
    Eigen::Index pos = 0;
    for (int d = 0; d < n; ++d) {
      const Eigen::Index e_d = (idx.type >> (n - 1 - d)) & 1u;
      pos = pos * ext + (idx.shifts[d] + e_d * half);
    }
    out[static_cast<Eigen::Index>(j)] = arr[pos];
  }
  return out;
}

CVector tensor_idwt(const CVector& coeffs, int n, int l0, int L, BasisMode mode) {
  check_params(n, l0, L);
  const std::size_t size = std::size_t{1} << (n * L);
  if (static_cast<std::size_t>(coeffs.size()) != size)
    throw std::invalid_argument("coefficient size must be 2^(n L)");

  if (mode == BasisMode::Aniso) {
    CVector arr = coeffs;
    const Eigen::Index ext = Eigen::Index{1} << L;
    CVector line(ext);
    for (int axis = 0; axis < n; ++axis) {
      for_each_line(n, L, axis, ext, [&](Eigen::Index base, Eigen::Index stride) {
        for (Eigen::Index i = 0; i < ext; ++i) line[i] = arr[base + i * stride];
        CVector w = dwt_synthesis(line, l0);
        for (Eigen::Index i = 0; i < ext; ++i) arr[base + i * stride] = w[i];
      });
    }
    return arr;
  }

  TrialBasis basis(n, l0, L, BasisMode::Iso);
  const Eigen::Index ext = Eigen::Index{1} << L;
  CVector arr(coeffs.size());
  for (std::size_t j = 0; j < size; ++j) {
    const auto idx = basis.iso_index(j);
    const Eigen::Index half = Eigen::Index{1} << idx.level;
    Eigen::Index pos = 0;
    for (int d = 0; d < n; ++d) {
      const Eigen::Index e_d = (idx.type >> (n - 1 - d)) & 1u;
      pos = pos * ext + (idx.shifts[d] + e_d * half);
    }
    arr[pos] = coeffs[static_cast<Eigen::Index>(j)];
  }

  CVector tmp(Eigen::Index{1} << L);
  for (int lev = l0; lev < L; ++lev) {
    const Eigen::Index n2 = Eigen::Index{1} << (lev + 1);
    for (int axis = 0; axis < n; ++axis)
      for_each_line(n, L, axis, n2, [&](Eigen::Index base, Eigen::Index stride) {
        synthesis_step(arr.data() + base, stride, n2, tmp);
      });
  }
  return arr;
}

}  // namespace corsing
