// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>

#include "core/program.hpp"

namespace gptmint {

/// Solve the cone program. Method Auto picks the direct LP path when every
/// cone side has the polyhedral representations it needs, and the
/// homogeneous self-dual splitting iteration otherwise.
Solution solve(const ConicProgram& p, const SolverConfig& cfg = {});

/// Re-check a solution independently of the solver loop: cone residuals,
/// value consistency, duality gap, and weak duality for feasible pairs.
/// For infeasible/unbounded statuses the certificate ray is validated.
bool verify_solution(const ConicProgram& p, const Solution& s,
                     double tol = 1e-6, std::string* why = nullptr);

struct SlaterReport {
  bool primal_strict = false;
  bool dual_strict = false;
  std::optional<Vec> primal_witness;  // X in int(K2), b - phi(X) in int(K1*)
  std::optional<Vec> dual_witness;    // y in int(K1), phi*(y) - C in int(K2*)
};

/// Attempt strictly feasible witnesses by scaling interior candidates
/// (generator averages or caller-supplied points). Absence of a witness is
/// a negative report, not an error.
SlaterReport check_slater(const ConicProgram& p, double margin,
                          std::optional<Vec> primal_candidate = std::nullopt,
                          std::optional<Vec> dual_candidate = std::nullopt);

/// Independent oracle for small fully-polyhedral programs: enumerate basic
/// feasible points and improving rays of the feasible region. Requires
/// complete generators for K2 and K1 and total dimension <= 8.
/// Returns +inf for unbounded, -inf for infeasible.
double brute_force_polyhedral(const ConicProgram& p);

}  // namespace gptmint
