// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include "core/common.hpp"

namespace gptmint {

struct NnlsResult {
  Vec x;            // nonnegative weights
  double residual;  // ||A x - b||
  int iterations;
  bool converged;
};

/// Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
/// Deterministic: ties in the pivot choice break toward the lowest index.
/// Throws Error(SolverFailure) when the iteration cap is hit, which signals
/// ill-conditioned columns.
NnlsResult nnls(const Mat& A, const Vec& b, int max_iter = 0);

}  // namespace gptmint
