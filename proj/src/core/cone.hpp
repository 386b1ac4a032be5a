// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "core/common.hpp"
#include "core/hermitian.hpp"

namespace gptmint {

enum class ConeKind {
  Orthant,
  Psd,        // Hermitian PSD embedded via an orthonormal matrix basis
  PolyV,      // conic hull of a finite generator list
  PolyH,      // intersection of halfspaces {x : <n_j, x> >= 0}
  Product,
  TensorMin,  // conic hull of pairwise tensor products of factor generators
  TensorMax,  // dual of the TensorMin of the duals
  DualOf,
};

// Complete means the conic hull of the columns equals the cone; a
// spanning-only set (PSD rank-ones) has complete == false.
struct GeneratorSet {
  Mat cols;
  bool complete = false;
};

struct ConeBlock;

/// Closed convex cone in R^n. Immutable value type; copies share the node.
class Cone {
 public:
  Cone() = default;

  static Cone orthant(int n);
  static Cone psd(int d);
  static Cone psd(HermBasis basis);
  static Cone polyhedral_v(Mat generators, int dim = -1);  // columns
  static Cone polyhedral_h(Mat normals, int dim = -1);     // columns
  /// V-cone whose facet normals are also known; its dual is again a
  /// fully-represented V-cone, which keeps tensor composites constructible.
  static Cone polyhedral_vh(Mat generators, Mat normals);
  static Cone zero(int dim);   // PolyV with no generators
  static Cone freespace(int dim);  // PolyH with no normals
  static Cone product(std::vector<Cone> factors);
  static Cone tensor_min(const Cone& a, const Cone& b);
  static Cone tensor_max(const Cone& a, const Cone& b);
  static Cone dual_of(const Cone& inner);

  ConeKind kind() const;
  int dim() const;

  /// Euclidean distance decision: dist(x, K) <= tol.
  bool contains(const Vec& x, double tol = kDefaultTol) const;
  double distance(const Vec& x) const;

  /// Interior with clearance. Semantics per representation: PolyH and
  /// Orthant require inequality values >= margin*||x|| against unit normals;
  /// Psd requires min eigenvalue >= margin; DualOf and TensorMax require
  /// <x, g> >= margin on unit-normalised generators of the pre-dual; V-form
  /// cones are decided by membership of the coordinate perturbations
  /// x +- margin*e_j.
  bool strictly_contains(const Vec& x, double margin) const;

  /// Analytic dual where known (all built-in variants), DualOf otherwise.
  Cone dual() const;

  Vec project(const Vec& x) const;

  bool has_complete_generators() const;
  std::optional<GeneratorSet> maybe_generators() const;
  /// Complete generators; throws Error(Unsupported) when unavailable
  /// (PolyH, TensorMax, DualOf: dualise first).
  Mat generators() const;
  /// Complete generators if available, else a finite spanning sample
  /// (PSD: rank-one elements from basis vectors). For sampling and sanity
  /// checks, not for exact membership.
  Mat sample_generators() const;

  const HermBasis& herm() const;           // Psd
  const Mat& vectors() const;              // PolyV generators / PolyH normals
  const std::vector<Cone>& factors() const;  // Product, TensorMin/Max
  const Cone& inner() const;               // DualOf

  /// Flatten nested products into primitive blocks (offset, cone).
  std::vector<ConeBlock> primitive_blocks() const;

  bool is_polyhedral() const;

  /// Structural equality of representations (not set equality).
  bool equal_rep(const Cone& other, double tol = 1e-12) const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
  explicit Cone(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

struct ConeBlock {
  int offset;
  Cone cone;
};

/// Dense linear map with explicit adjoint (the transpose).
struct LinearOperator {
  Mat A;
  LinearOperator() = default;
  explicit LinearOperator(Mat a) : A(std::move(a)) {}
  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }
  Vec apply(const Vec& x) const { return A * x; }
  Vec apply_adjoint(const Vec& y) const { return A.transpose() * y; }
};

}  // namespace gptmint
