#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "corsing/wavelet1d.hpp"

namespace corsing {

/// Tensorization of the 1D basis: Aniso mixes all dyadic levels per axis,
/// Iso synchronizes one level across axes with type bits selecting scaling or
/// wavelet factors. For n = 1 the two coincide with the plain 1D basis.
enum class BasisMode { Aniso, Iso };

BasisMode basis_mode_from_string(const std::string& name);
std::string to_string(BasisMode mode);

/// One axis factor of a tensor-product trial function: either phi_{level,shift}
/// (wavelet == false) or psi_{level,shift}, always with level >= l0.
struct TrialFactor {
  bool wavelet;
  int level;
  int shift;
};

/// Index set of the n-dimensional trial basis with the canonical flat order.
///
/// Aniso order: lexicographic over per-axis canonical 1D positions, axis 0
/// major (row-major Kronecker layout). Iso order: the all-scaling layer at l0
/// first (shifts row-major), then levels l0..L-1 ascending; inside a level the
/// type masks e = 1..2^n-1 ascending, where bit (n-1-d) of e flags a wavelet
/// factor on axis d; inside a type, shifts row-major.
class TrialBasis {
 public:
  TrialBasis(int n, int l0, int L, BasisMode mode);

  int dim() const { return n_; }
  int coarsest_level() const { return l0_; }
  int finest_level() const { return L_; }
  BasisMode mode() const { return mode_; }
  std::size_t size() const { return size_; }

  /// H^1 normalization weight of trial function j: 2^{-max_d eff(l_d)} for
  /// Aniso (eff = l0 on scaling layers), 2^{-level} for Iso.
  double h1_weight(std::size_t j) const;

  /// Axis factor of trial function j.
  TrialFactor factor(std::size_t j, int axis) const;

  /// Aniso only: per-axis canonical 1D positions of flat index j.
  std::array<std::size_t, 3> axis_positions(std::size_t j) const;

  /// Iso only: (level, type mask, per-axis shifts) of flat index j.
  struct IsoIndex {
    int level;
    unsigned type;
    std::array<int, 3> shifts;
  };
  IsoIndex iso_index(std::size_t j) const;
  std::size_t iso_flat(const IsoIndex& idx) const;

 private:
  int n_, l0_, L_;
  BasisMode mode_;
  std::size_t size_;
  std::size_t one_d_size_;
};

/// Separable wavelet decomposition of a (2^L)^n array of level-L scaling
/// coefficients (row-major, axis 0 major) into the canonical coefficient
/// vector of the requested basis; tensor_idwt is its exact inverse.
CVector tensor_dwt(const CVector& fine, int n, int l0, int L, BasisMode mode);
CVector tensor_idwt(const CVector& coeffs, int n, int l0, int L, BasisMode mode);

}  // namespace corsing
