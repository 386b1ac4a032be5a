// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "core/simplex.hpp"

#include <Eigen/LU>
#include <cmath>
#include <vector>

namespace gptmint {

namespace {

constexpr double kPivotTol = 1e-9;

struct Tableau {
  Mat A;
  Vec b;
  Vec c;
  std::vector<int> basis;
  Mat binv;  // maintained inverse of the basis matrix
  bool binv_ok = false;

  void refactor() {
    const int m = static_cast<int>(A.rows());
    Mat bm(m, m);
    for (int i = 0; i < m; ++i) bm.col(i) = A.col(basis[i]);
    binv = bm.partialPivLu().inverse();
    Vec probe = Vec::Ones(m);
    binv_ok = binv.allFinite() &&
              (bm * (binv * probe) - probe).cwiseAbs().maxCoeff() < 1e-5;
  }

  // One simplex phase with a product-form inverse. Pricing is steepest
  // reduced cost; after a run of degenerate pivots it falls back to Bland's
  // rule, which guarantees termination. Returns false on unboundedness.
  bool run(double* value, const std::vector<bool>& allowed) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    std::vector<bool> in_basis(n, false);
    for (int i = 0; i < m; ++i) in_basis[basis[i]] = true;
    refactor();
    require(binv_ok, ErrorCode::SolverFailure,
            "simplex: singular starting basis");
    bool fresh = true;
    int stalled = 0;
    double last_obj = std::numeric_limits<double>::infinity();
    for (int pivots = 0; pivots < 50 * (m + n) + 1000; ++pivots) {
      if (pivots > 0 && pivots % 32 == 0) {
        refactor();
        fresh = true;
      }
      Vec xb = binv * b;
      Vec cb(m);
      for (int i = 0; i < m; ++i) cb[i] = c[basis[i]];
      double obj = cb.dot(xb);
      if (obj < last_obj - 1e-12) {
        stalled = 0;
        last_obj = obj;
      } else {
        ++stalled;
      }
      const bool bland = stalled > 40;
      Vec y = binv.transpose() * cb;
      int enter = -1;
      double most = -kPivotTol;
      for (int j = 0; j < n; ++j) {
        if (!allowed[j] || in_basis[j]) continue;
        double red = c[j] - y.dot(A.col(j));
        if (red < most) {
          most = red;
          enter = j;
          if (bland) break;  // first eligible index
        }
      }
      if (enter < 0) {
        if (!fresh) {  // confirm on a fresh factorisation
          refactor();
          fresh = true;
          --pivots;
          continue;
        }
        *value = obj;
        return true;  // optimal
      }
      Vec d = binv * A.col(enter);
      // leaving row: min ratio; among near-ties take the largest pivot
      // magnitude, which keeps the basis well conditioned
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        if (d[i] > kPivotTol) {
          double ratio = std::max(xb[i], 0.0) / d[i];
          if (leave < 0 || ratio < best - 1e-9) {
            best = ratio;
            leave = i;
          } else if (ratio < best + 1e-9 && d[i] > d[leave]) {
            leave = i;
          }
        }
      }
      if (leave < 0) {
        if (!fresh) {  // confirm unboundedness on a fresh factorisation
          refactor();
          fresh = true;
          --pivots;
          continue;
        }
        return false;  // unbounded
      }
      double dr = d[leave];
      if (std::abs(dr) < 1e-10 && !fresh) {
        refactor();
        fresh = true;
        --pivots;
        continue;
      }
      fresh = false;
      in_basis[basis[leave]] = false;
      in_basis[enter] = true;
      basis[leave] = enter;
      // rank-one update of the inverse
      Vec row = binv.row(leave);
      for (int i = 0; i < m; ++i) {
        if (i == leave) continue;
        binv.row(i) -= (d[i] / dr) * row.transpose();
      }
      binv.row(leave) = row.transpose() / dr;
      require(binv.allFinite(), ErrorCode::SolverFailure,
              "simplex: basis inverse update failed");
    }
    fail(ErrorCode::SolverFailure, "simplex: pivot cap reached");
  }
};

}  // namespace

LpResult simplex_solve(const Mat& A_in, const Vec& b_in, const Vec& c_in) {
  const int m = static_cast<int>(A_in.rows());
  const int n = static_cast<int>(A_in.cols());
  Mat A = A_in;
  Vec b = b_in;
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      b[i] = -b[i];
      A.row(i) = -A.row(i);
    }
  }

  // Phase 1 with artificial variables.
  Tableau t;
  t.A = Mat::Zero(m, n + m);
  t.A.leftCols(n) = A;
  t.A.rightCols(m) = Mat::Identity(m, m);
  t.b = b;
  t.c = Vec::Zero(n + m);
  for (int i = 0; i < m; ++i) t.c[n + i] = 1.0;
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) t.basis[i] = n + i;

  std::vector<bool> allowed(n + m, true);
  double value = 0.0;
  if (!t.run(&value, allowed)) {
    fail(ErrorCode::SolverFailure, "simplex: phase 1 unbounded");
  }
  LpResult res;
  if (value > 1e-7 * std::max(1.0, b.norm())) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  // Drive remaining artificials out where possible, then forbid them.
  // Redundant rows keep their artificial basic at level zero.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] >= n) {
      t.refactor();
      if (!t.binv_ok) {
        fail(ErrorCode::SolverFailure, "simplex: basis lost between phases");
      }
      int best_j = -1;
      double best_d = 1e-7;
      for (int j = 0; j < n; ++j) {
        bool basic = false;
        for (int r = 0; r < m; ++r)
          if (t.basis[r] == j) basic = true;
        if (basic) continue;
        double dij = std::abs(t.binv.row(i).dot(t.A.col(j)));
        if (dij > best_d) {
          best_d = dij;
          best_j = j;
        }
      }
      if (best_j >= 0) {
        int keep = t.basis[i];
        t.basis[i] = best_j;
        t.refactor();
        if (!t.binv_ok) t.basis[i] = keep;  // revert a bad swap
      }
    }
  }
  for (int j = n; j < n + m; ++j) allowed[j] = false;

  // Phase 2.
  t.c.setZero();
  t.c.head(n) = c_in;
  if (!t.run(&value, allowed)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  Mat B(m, m);
  for (int i = 0; i < m; ++i) B.col(i) = t.A.col(t.basis[i]);
  Eigen::PartialPivLU<Mat> lu(B);
  Vec xb = lu.solve(b);
  res.z = Vec::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) res.z[t.basis[i]] = xb[i];
  }
  Vec cb(m);
  for (int i = 0; i < m; ++i) cb[i] = t.c[t.basis[i]];
  Vec y = lu.transpose().solve(cb);
  // undo the phase-0 row sign flips
  res.row_dual = Vec(m);
  for (int i = 0; i < m; ++i) res.row_dual[i] = (b_in[i] < 0.0) ? -y[i] : y[i];
  res.value = value;
  res.status = LpStatus::Optimal;
  return res;
}

namespace {

struct LpReps {
  // exactly one of g2/n2 is set, likewise g1/h1
  std::optional<Mat> g2;  // complete generators of K2
  std::optional<Mat> n2;  // complete normals of K2 (= generators of K2*)
  std::optional<Mat> g1;  // complete generators of K1
  std::optional<Mat> h1;  // complete generators of K1*
};

std::optional<Mat> complete_normals(const Cone& k) {
  auto g = k.dual().maybe_generators();
  if (g && g->complete) return g->cols;
  return std::nullopt;
}

std::optional<LpReps> lp_reps(const ConicProgram& p) {
  if (!p.K1.is_polyhedral() || !p.K2.is_polyhedral()) return std::nullopt;
  LpReps r;
  auto g2 = p.K2.maybe_generators();
  if (g2 && g2->complete) {
    r.g2 = g2->cols;
  } else {
    auto n2 = complete_normals(p.K2);
    if (!n2) return std::nullopt;
    r.n2 = n2;
  }
  auto g1 = p.K1.maybe_generators();
  if (g1 && g1->complete) {
    r.g1 = g1->cols;
  } else {
    auto h1 = p.K1.dual().maybe_generators();
    if (h1 && h1->complete) {
      r.h1 = h1->cols;
    } else {
      return std::nullopt;
    }
  }
  return r;
}

}  // namespace

bool lp_path_applicable(const ConicProgram& p) {
  return lp_reps(p).has_value();
}

Solution solve_direct_lp(const ConicProgram& p) {
  p.validate();
  auto reps = lp_reps(p);
  require(reps.has_value(), ErrorCode::Unsupported,
          "direct LP path: missing polyhedral representations");

  const int n = p.K2.dim();
  // variable layout: [lambda | x+ x-] [surplus rho | mu]
  int base_cols = reps->g2 ? static_cast<int>(reps->g2->cols()) : 2 * n;
  int n2_rows = reps->n2 ? static_cast<int>(reps->n2->cols()) : 0;
  int cons_rows = reps->g1 ? static_cast<int>(reps->g1->cols())
                           : static_cast<int>(p.b.size());
  int extra_cols = n2_rows;  // slack t for N2'X - t = 0
  int cons_cols = reps->g1 ? cons_rows : static_cast<int>(reps->h1->cols());

  const int rows = n2_rows + cons_rows;
  const int cols = base_cols + extra_cols + cons_cols;
  Mat A = Mat::Zero(rows, cols);
  Vec b = Vec::Zero(rows);
  Vec c = Vec::Zero(cols);

  // X as a linear image of the standard-form variables
  Mat Xmap(n, cols);
  Xmap.setZero();
  if (reps->g2) {
    Xmap.leftCols(base_cols) = *reps->g2;
  } else {
    Xmap.block(0, 0, n, n) = Mat::Identity(n, n);
    Xmap.block(0, n, n, n) = -Mat::Identity(n, n);
  }
  c.head(base_cols) = -(Xmap.leftCols(base_cols).transpose() * p.C);

  int row = 0;
  if (reps->n2) {
    // N2' X - t = 0
    A.block(row, 0, n2_rows, cols) = reps->n2->transpose() * Xmap;
    A.block(row, base_cols, n2_rows, n2_rows) -=
        Mat::Identity(n2_rows, n2_rows);
    row += n2_rows;
  }
  const Mat phiX = p.phi.A * Xmap;
  if (reps->g1) {
    // <g_i, b - phi X> >= 0  ->  G1' phi X + rho = G1' b
    A.block(row, 0, cons_rows, cols) = reps->g1->transpose() * phiX;
    A.block(row, base_cols + extra_cols, cons_rows, cons_rows) =
        Mat::Identity(cons_rows, cons_rows);
    b.segment(row, cons_rows) = reps->g1->transpose() * p.b;
  } else {
    // b - phi X = H1 mu  ->  phi X + H1 mu = b
    A.block(row, 0, cons_rows, cols) = phiX;
    A.block(row, base_cols + extra_cols, cons_rows, cons_cols) = *reps->h1;
    b.segment(row, cons_rows) = p.b;
  }

  LpResult lp = simplex_solve(A, b, c);
  Solution s;
  s.method = "direct_lp";
  s.iterations = 0;
  switch (lp.status) {
    case LpStatus::Infeasible:
      s.status = SolveStatus::PrimalInfeasible;
      return s;
    case LpStatus::Unbounded:
      s.status = SolveStatus::Unbounded;
      return s;
    case LpStatus::Optimal:
      break;
  }
  s.status = SolveStatus::Optimal;
  s.X = Xmap * lp.z;
  s.primal_value = p.C.dot(s.X);
  Vec pi = lp.row_dual.segment(row, cons_rows);
  s.y = reps->g1 ? Vec(-(*reps->g1) * pi) : Vec(-pi);
  s.dual_value = p.b.dot(s.y);
  s.gap = std::abs(s.primal_value - s.dual_value);
  s.primal_residual = 0.0;
  s.dual_residual = 0.0;
  s.history.push_back({0, s.primal_value, s.dual_value, 0.0, 0.0});
  return s;
}

}  // namespace gptmint
