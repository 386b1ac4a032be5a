// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "core/nnls.hpp"

#include <limits>
#include <vector>

namespace gptmint {

namespace {

// Least squares restricted to the passive columns.
Vec solve_passive(const Mat& A, const Vec& b, const std::vector<int>& passive) {
  Mat Ap(A.rows(), static_cast<Eigen::Index>(passive.size()));
  for (size_t k = 0; k < passive.size(); ++k) Ap.col(k) = A.col(passive[k]);
  return Ap.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const Mat& A, const Vec& b, int max_iter) {
  const int n = static_cast<int>(A.cols());
  if (n == 0) {
    return {Vec::Zero(0), b.norm(), 0, true};
  }
  if (max_iter <= 0) max_iter = 10 * n + 100;

  Vec x = Vec::Zero(n);
  std::vector<bool> in_passive(n, false);
  std::vector<int> passive;

  const double scale = std::max(1.0, b.norm());
  const double grad_tol = 1e-12 * scale * std::max(1.0, A.cwiseAbs().maxCoeff());

  int iters = 0;
  Vec w = A.transpose() * b;
  while (iters < max_iter) {
    // Most-violating gradient among active (zero) coordinates.
    int j = -1;
    double best = grad_tol;
    for (int i = 0; i < n; ++i) {
      if (!in_passive[i] && w[i] > best) {
        best = w[i];
        j = i;
      }
    }
    if (j < 0) break;  // KKT satisfied
    in_passive[j] = true;
    passive.push_back(j);

    while (true) {
      ++iters;
      if (iters > max_iter) {
        fail(ErrorCode::SolverFailure,
             "nnls: active-set iteration cap reached (ill-conditioned generators)");
      }
      Vec z = solve_passive(A, b, passive);
      bool all_pos = true;
      for (size_t k = 0; k < passive.size(); ++k) {
        if (z[static_cast<Eigen::Index>(k)] <= 0.0) {
          all_pos = false;
          break;
        }
      }
      if (all_pos) {
        for (int i = 0; i < n; ++i) x[i] = 0.0;
        for (size_t k = 0; k < passive.size(); ++k)
          x[passive[k]] = z[static_cast<Eigen::Index>(k)];
        break;
      }
      // Step toward z until the first passive coordinate hits zero.
      double alpha = std::numeric_limits<double>::infinity();
      for (size_t k = 0; k < passive.size(); ++k) {
        double zk = z[static_cast<Eigen::Index>(k)];
        if (zk <= 0.0) {
          double xk = x[passive[k]];
          double a = xk / (xk - zk);
          if (a < alpha) alpha = a;
        }
      }
      if (!std::isfinite(alpha)) alpha = 0.0;
      for (size_t k = 0; k < passive.size(); ++k) {
        int i = passive[k];
        x[i] += alpha * (z[static_cast<Eigen::Index>(k)] - x[i]);
      }
      std::vector<int> next;
      for (int i : passive) {
        if (x[i] > 1e-14 * scale) {
          next.push_back(i);
        } else {
          x[i] = 0.0;
          in_passive[i] = false;
        }
      }
      passive.swap(next);
      if (passive.empty()) break;
    }
    w = A.transpose() * (b - A * x);
  }

  NnlsResult r;
  r.x = x;
  r.residual = (A * x - b).norm();
  r.iterations = iters;
  r.converged = true;
  return r;
}

}  // namespace gptmint
