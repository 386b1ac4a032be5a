// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "core/cone.hpp"

namespace gptmint {

/// Standard-form cone program
///   maximise <C, X>  subject to  b - phi(X) in K1*,  X in K2.
struct ConicProgram {
  Vec C;
  Vec b;
  LinearOperator phi;
  Cone K1;
  Cone K2;

  void validate() const {
    require(phi.cols() == C.size() && C.size() == K2.dim(),
            ErrorCode::InvalidArgument,
            "conic program: dim(C), input dim of phi and dim(K2) must agree");
    require(phi.rows() == b.size() && b.size() == K1.dim(),
            ErrorCode::InvalidArgument,
            "conic program: dim(b), output dim of phi and dim(K1) must agree");
  }
};

enum class SolveStatus { Optimal, PrimalInfeasible, Unbounded, IterationLimit };

std::string to_string(SolveStatus s);

struct IterateSample {
  int iter;
  double primal_value;
  double dual_value;
  double primal_residual;
  double dual_residual;
};

struct Solution {
  Vec X;
  Vec y;
  double primal_value = std::numeric_limits<double>::quiet_NaN();
  double dual_value = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  SolveStatus status = SolveStatus::IterationLimit;
  int iterations = 0;
  double primal_residual = std::numeric_limits<double>::quiet_NaN();
  double dual_residual = std::numeric_limits<double>::quiet_NaN();
  std::vector<IterateSample> history;  // sampled every check interval
  std::string method;                  // "splitting" or "direct_lp"
};

enum class SolveMethod { Auto, Splitting, DirectLp };

struct SolverConfig {
  double eps_abs = 1e-8;
  double eps_rel = 1e-8;
  int max_iter = 200000;
  bool scaling = true;
  std::uint64_t seed = 0;
  SolveMethod method = SolveMethod::Auto;
  double relaxation = 1.5;  // over-relaxation for the splitting iteration
  int check_every = 25;
  double infeas_tol = 1e-7;  // threshold on the homogenising variable

  void validate() const {
    require(eps_abs > 0.0 && eps_rel > 0.0, ErrorCode::InvalidArgument,
            "solver config: eps_abs and eps_rel must be > 0");
    require(max_iter >= 1, ErrorCode::InvalidArgument,
            "solver config: max_iter must be >= 1");
  }
};

}  // namespace gptmint
