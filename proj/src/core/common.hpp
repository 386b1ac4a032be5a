// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gptmint {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

// Library-wide default fuzz for geometric predicates.
inline constexpr double kDefaultTol = 1e-7;

enum class ErrorCode {
  InvalidArgument,
  Validation,   // user input violates a documented invariant
  Unsupported,  // operation not defined for this representation
  SolverFailure,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace gptmint
