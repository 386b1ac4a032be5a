// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/cone.hpp"

namespace gptmint {

enum class TheoryKind { Classical, Quantum, Polyhedral, Hybrid };

enum class CompositeRule { None, Native, MinMax, Custom };

/// A system: ambient dimension, state cone, effect cone and the discarding
/// (unit) effect. Composites carry their factor list; all cones and bases of
/// a composite are laid out first-factor-major (Kronecker convention).
struct System {
  std::string label;
  TheoryKind kind = TheoryKind::Polyhedral;
  int dim = 0;
  Cone state_cone;
  Cone effect_cone;
  Vec unit_effect;
  // Finite generating samples. Complete for classical/polyhedral systems,
  // spanning rank-one sets for quantum.
  Mat state_generators;
  // Generators of the mathematical dual of the state cone (atomic systems);
  // for polyhedral composites, the pairwise tensors of factor dual
  // generators, i.e. the dual of the max-tensor composite.
  Mat dual_state_generators;
  // Effect elements usable for sampling; set explicitly for composites whose
  // effect cone has no finite generating sample of its own.
  Mat effect_samples;
  std::optional<HermBasis> herm;  // quantum systems
  bool restricted = false;        // effect cone strictly below the dual
  CompositeRule rule = CompositeRule::None;
  std::vector<System> factor_list;
  double unit_margin = 0.0;  // interior clearance of the unit effect

  bool is_composite() const { return !factor_list.empty(); }
};

Vec kron_vec(const Vec& a, const Vec& b);
Mat pairwise_kron(const Mat& a, const Mat& b);

/// Checks the system invariants (unit effect interior, cones inside each
/// other's duals on generators, existence of a causal state) and fills in
/// unit_margin. Throws Error(Validation) on failure.
void validate_system(System& s, double tol = kDefaultTol);

/// Composite of the factors. Classical and quantum factors compose natively;
/// polyhedral factors use the min tensor for states and the max tensor for
/// effects (min tensor when a factor has restricted effects); a classical
/// factor followed by a quantum factor composes as a block product.
System compose_systems(const std::vector<System>& factors);

bool is_causal_state(const System& s, const Vec& v, double tol = kDefaultTol);
bool is_subcausal_state(const System& s, const Vec& v, double tol = kDefaultTol);

/// Apply the unit effect to every factor except keep_index.
Vec marginalise(const System& composite, const Vec& state, int keep_index);

enum class Ordering { EffectCone, DualStateCone };

/// The cone of linear maps from one system to another, over fixed process
/// coordinates. Classical and polyhedral theories use raw map entries
/// (row-major, output index major); quantum uses coordinates of the Choi
/// element in the product Hermitian basis, where the process cone is the PSD
/// cone itself.
struct ProcessCone {
  System in;
  System out;
  Cone cone;
  bool choi_coords = false;
  Vec in_conj_signs;  // quantum: conjugation signs of the input basis

  int pdim() const { return cone.dim(); }

  /// Riesz coordinates of a functional given as a matrix F (out.dim rows,
  /// in.dim cols): <coords_of_map(F), x> equals <F, M(x)> entrywise.
  /// The same transform converts a map matrix to process coordinates.
  Vec coords_of_map(const Mat& f) const;
  Mat to_map_matrix(const Vec& x) const;

  Vec apply(const Vec& x, const Vec& state) const;
  Vec pullback(const Vec& x, const Vec& effect) const;

  /// Matrix of x -> pullback(x, u_out), the discard-composition map.
  Mat subcausal_phi() const;

  /// Elements usable for sampling from the cone (complete generators where
  /// they exist, PSD rank-one spanning otherwise).
  Mat sample_elements() const;
};

/// Theory-default process cone between systems of the same kind:
/// classical - entrywise nonnegative map matrices; quantum - completely
/// positive maps via the Choi element; polyhedral - maps sending state
/// generators into the max-tensor state cone of the output (the maximal
/// choice), except that restricted theories get the cone generated by
/// measure-and-prepare elements built from their physical effects.
ProcessCone make_process_cone(const System& in, const System& out);

/// Process cone for maps from a system to `copies` parallel copies of it.
ProcessCone counterfeit_cone(const System& a, int copies = 2);

/// Causal: discarding the output equals discarding the input.
/// Both predicates require f inside the process cone (within tol).
bool is_causal_process(const ProcessCone& pc, const Vec& f,
                       double tol = kDefaultTol);
bool is_subcausal_process(const ProcessCone& pc, const Vec& f,
                          Ordering ordering = Ordering::EffectCone,
                          double tol = kDefaultTol);

/// Rank of the evaluation map on (input state generator, output separating
/// functional) pairs; equals pdim exactly when such pairs are tomographically
/// complete for the process cone's ambient space.
int tomography_rank(const ProcessCone& pc);

}  // namespace gptmint
