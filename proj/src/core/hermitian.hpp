// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <complex>
#include <vector>

#include "core/common.hpp"

namespace gptmint {

// One element of an orthonormal Hermitian matrix basis, stored sparsely.
// conj_sign records whether the entrywise conjugate equals +B or -B; the
// canonical basis and all Kronecker products of it have this property.
struct HermBasisElem {
  struct Entry {
    int row;
    int col;
    std::complex<double> val;
  };
  std::vector<Entry> entries;
  double conj_sign = 1.0;
};

// Orthonormal basis of d x d Hermitian matrices under the trace inner
// product, so coordinate inner products equal trace inner products and the
// PSD cone is self-dual in coordinates.
class HermBasis {
 public:
  HermBasis() = default;

  // Diagonal units first, then (E_jk + E_kj)/sqrt2 and i(E_jk - E_kj)/sqrt2
  // for each pair j < k in lexicographic order.
  static HermBasis canonical(int d);

  // Basis of the composite space: elementwise Kronecker products, first
  // factor major. Matches the index convention used for composite systems.
  static HermBasis kron(const HermBasis& a, const HermBasis& b);

  int matrix_dim() const { return d_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const HermBasisElem& elem(int k) const { return elems_[k]; }

  CMat matrix(const Vec& coords) const;
  Vec coords(const CMat& m) const;

  // Euclidean projection of coords onto the PSD cone (eigenvalue clamp).
  Vec project_psd(const Vec& coords) const;
  double min_eigenvalue(const Vec& coords) const;
  // l2 norm of the clamped negative eigenvalues = distance to the PSD cone.
  double psd_distance(const Vec& coords) const;

  // Coordinates of a finite spanning set of rank-one PSD elements built from
  // the standard C^d basis vectors. Spanning, not extremal-complete.
  std::vector<Vec> rank_one_spanning() const;

 private:
  int d_ = 0;
  std::vector<HermBasisElem> elems_;
};

}  // namespace gptmint
