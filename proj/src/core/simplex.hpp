// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>

#include "core/program.hpp"

namespace gptmint {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec z;        // primal solution (standard form variables)
  Vec row_dual; // multipliers for the equality rows
  double value = 0.0;
};

/// Dense two-phase primal simplex for min c'z s.t. Az = b, z >= 0.
/// Bland's rule throughout, so the pivot sequence is deterministic.
LpResult simplex_solve(const Mat& A, const Vec& b, const Vec& c);

/// True when the program has the polyhedral representations the direct
/// path needs (complete generators or normals for K2, complete generators
/// for K1 or for K1*).
bool lp_path_applicable(const ConicProgram& p);

/// Solve via reduction to standard form and the simplex method.
Solution solve_direct_lp(const ConicProgram& p);

}  // namespace gptmint
