// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <random>

#include "core/money.hpp"

namespace gptmint {

struct TheoryDescriptor {
  std::string name;
  System system;
  bool no_restriction = false;  // effect cone equals the dual of the state cone
};

/// Simplex state cone over n outcomes; unit effect is all ones.
TheoryDescriptor classical(int n);

/// d-level quantum system in the orthonormal Hermitian basis; unit effect is
/// the identity. PSD cones are self-dual in these coordinates.
TheoryDescriptor quantum(int d);

/// Square state space (four extremal causal states) with the full dual
/// effect cone.
TheoryDescriptor gbit();

/// Regular n-gon state cone at the self-dualising radius sqrt(sec(pi/n)).
/// With restricted_effects the effect cone is the conic hull of the
/// exposing effects, their complements and the unit effect, which breaks
/// the duality between state and effect cones.
TheoryDescriptor polygon(int n, bool restricted_effects = false);

/// Parse "classical:3", "quantum:2", "gbit", "polygon:5",
/// "polygon:6:restricted".
TheoryDescriptor theory_from_ref(const std::string& ref);

/// Canonical note ensemble per theory: four conjugate-basis qubit states
/// with rank-one projective verification for quantum(2); vertices with
/// indicator effects for classical; extremal states with their exposing
/// effects for gbit and even polygons.
BankStrategy wiesner_strategy(const TheoryDescriptor& t);

/// Seeded random valid strategy whose effects sharply expose the states
/// (vertex subsets with indicators / exposing effects; random pure states
/// with projectors for quantum).
BankStrategy random_strategy(const TheoryDescriptor& t, std::mt19937_64& rng,
                             int max_items = 0);

/// A causal state basis spanning the system's vector space.
std::vector<Vec> causal_state_basis(const TheoryDescriptor& t);

}  // namespace gptmint
