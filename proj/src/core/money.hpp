// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <vector>

#include "core/solver.hpp"
#include "core/system.hpp"

namespace gptmint {

/// A bank strategy: an ensemble of causal note states with perfectly
/// accepting, subcausal verification effects.
struct BankStrategy {
  System system;
  struct Item {
    double p;
    Vec state;
    Vec effect;
  };
  std::vector<Item> items;
};

/// Checks all strategy invariants: p_i > 0 and sum to one (1e-12), states
/// causal, u - e_i in the effect cone, <e_i, s_i> = 1. Throws
/// Error(Validation) naming the violated invariant.
void validate_strategy(const BankStrategy& s, double tol = kDefaultTol);

/// Process coordinates of the functional chi -> sum_i p_i <e_i x e_i, chi(s_i)>.
Vec verification_functional(const BankStrategy& s, const ProcessCone& pc);

/// The counterfeiting program in standard form. relaxed == false orders the
/// subcausality slack against the effect cone (physical machines); true
/// orders it against the dual of the state cone (the relaxation).
ConicProgram counterfeit_program(const BankStrategy& s, const ProcessCone& pc,
                                 bool relaxed);

struct AlphaResult {
  double value = 0.0;
  Vec chi;     // optimal process vector
  Vec y_cert;  // dual certificate, an element of K1
  double dual_value = 0.0;
  double gap = 0.0;
  Solution raw;
};

AlphaResult alpha(const BankStrategy& s, const ProcessCone& pc,
                  const SolverConfig& cfg = {});
AlphaResult alpha_tilde(const BankStrategy& s, const ProcessCone& pc,
                        const SolverConfig& cfg = {});

struct SecurityReport {
  double alpha = 0.0;
  double alpha_tilde = 0.0;
  Vec chi_opt;
  Vec y_cert;
  double gap = 0.0;
  SlaterReport slater;
  double lower_bound = 0.0;
};

/// alpha, alpha_tilde, the trivial lower bound and the Slater report, with
/// the sandwich lower_bound <= alpha <= alpha_tilde <= 1 enforced.
SecurityReport analyze(const BankStrategy& s, const ProcessCone& pc,
                       const SolverConfig& cfg = {});

struct NormalisedY {
  Vec state;        // y / alpha_tilde, a causal state
  Vec functional;   // process coords of (1/alpha_tilde) (feed y, discard)
  Vec prepare_map;  // causal map: discard input, prepare state x state
};

/// Builds the normalised dual object Y from a certificate. Asserts that the
/// rescaled certificate state is causal and that the prepare map is a causal
/// process.
NormalisedY normalised_Y(const BankStrategy& s, const ProcessCone& pc,
                         const Vec& y_cert, double alpha_tilde_value,
                         double tol = 1e-6);

struct TrivialBound {
  double value;  // max_i p_i
  Vec chi;       // discard input, prepare s_i x s_i for the argmax i
  int index;     // lowest index among maximal p_i
};

TrivialBound trivial_lower_bound(const BankStrategy& s, const ProcessCone& pc);

/// Verification sharpness, one flag per item: the face
/// {s in state cone : <u,s> <= 1, <e_i,s> >= 1} contains only s_i, decided
/// by optimising every coordinate functional over the face.
std::vector<bool> check_VS(const BankStrategy& s, double tol = 1e-5,
                           const SolverConfig& cfg = {});

struct BroadcastReport {
  bool feasible = false;
  Vec map_B;        // when feasible
  Vec certificate;  // separating dual functional when infeasible
  Solution raw;
};

/// Feasibility of a subcausal map whose two marginals reproduce every state.
BroadcastReport check_broadcastable(const std::vector<Vec>& states,
                                    const ProcessCone& pc,
                                    const SolverConfig& cfg = {});

struct EquivalenceVerdict {
  double alpha = 0.0;
  bool broadcast_feasible = false;
  bool consistent = false;  // (alpha >= 1 - tol) <=> feasible
};

/// Requires check_VS to pass on every item, then checks that perfect
/// counterfeiting coincides with broadcastability of the ensemble.
EquivalenceVerdict wnc_broadcast_equivalence(const BankStrategy& s,
                                             const ProcessCone& pc,
                                             const SolverConfig& cfg = {},
                                             double tol = 1e-4);

/// Uniform mixture of s with the always-accepting strategy over a causal
/// basis; the result is spanning.
BankStrategy make_spanning(const BankStrategy& s,
                           const std::vector<Vec>& causal_basis);

bool is_spanning(const BankStrategy& s);

/// Independent sampling from both strategies: items are all pairs.
BankStrategy product_strategy(const BankStrategy& a, const BankStrategy& b);

struct ProductBoundReport {
  double alpha_ab = 0.0;
  double alpha_tilde_a = 0.0;
  double alpha_tilde_b = 0.0;
  bool bound_holds = false;
  bool composition_subcausal = false;  // composed maps land back in the
                                       // physical set on the first system
};

ProductBoundReport verify_product_bound(const BankStrategy& a,
                                        const BankStrategy& b,
                                        const SolverConfig& cfg = {},
                                        double tol = 1e-3,
                                        int dim_cap = 8192);

struct RepetitionResult {
  int n;
  double alpha_tilde;
  double bound;  // alpha_tilde^n
};

/// Smallest n with alpha_tilde^n <= delta. Throws Error(Validation)
/// "no security amplification possible" when alpha_tilde is not bounded
/// away from one.
RepetitionResult repetition_security(const BankStrategy& s, double delta,
                                     const SolverConfig& cfg = {});
RepetitionResult repetition_from_alpha_tilde(double alpha_tilde_value,
                                             double delta,
                                             double gap_tol = 1e-6);

}  // namespace gptmint
