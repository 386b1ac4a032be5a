// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "core/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>
#include <sstream>
#include <vector>

#include "core/simplex.hpp"

namespace gptmint {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalInfeasible: return "primal_infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

// Scaling must keep every slack block inside its cone: orthant-like blocks
// scale per coordinate, everything else uniformly per block.
bool separable_block(const Cone& c) {
  if (c.kind() == ConeKind::Orthant) return true;
  if (c.kind() == ConeKind::PolyV && c.vectors().cols() == 0) return true;  // zero cone
  if (c.kind() == ConeKind::PolyH && c.vectors().cols() == 0) return true;  // free cone
  return false;
}

struct SlackCones {
  // blocks of the slack cone  K = K1* x K2  and of its dual  K1 x K2*
  std::vector<ConeBlock> kdual_blocks;  // cones to project the dual variable on
  int m1 = 0;
  int m = 0;
};

// Homogeneous self-dual embedding solved by the splitting iteration, using
// only the cone projection oracles.
Solution solve_splitting(const ConicProgram& p, const SolverConfig& cfg) {
  const int n = p.K2.dim();
  const int m1 = p.K1.dim();
  const int m = m1 + n;

  const Cone K1star = p.K1.dual();
  const Cone K2star = p.K2.dual();

  // dual-variable cone blocks: K1 on the first m1 rows, K2* below
  std::vector<ConeBlock> ydual;
  for (auto& b : p.K1.primitive_blocks()) ydual.push_back(b);
  for (auto& b : K2star.primitive_blocks())
    ydual.push_back({m1 + b.offset, b.cone});
  // slack cone blocks (for scaling decisions)
  std::vector<ConeBlock> slack;
  for (auto& b : K1star.primitive_blocks()) slack.push_back(b);
  for (auto& b : p.K2.primitive_blocks()) slack.push_back({m1 + b.offset, b.cone});

  // --- scaling -----------------------------------------------------------
  Vec d_row = Vec::Ones(m);   // D
  Vec e_col = Vec::Ones(n);   // E
  Mat A1 = p.phi.A;           // top block D1 * phi * E
  Vec a2 = -Vec::Ones(n);     // bottom block is diagonal: -(D2 E)
  if (cfg.scaling) {
    for (int round = 0; round < 10; ++round) {
      // row scaling, uniform over non-separable blocks
      Vec rnorm = Vec::Zero(m);
      for (int i = 0; i < m1; ++i) rnorm[i] = A1.row(i).cwiseAbs().maxCoeff();
      for (int j = 0; j < n; ++j) rnorm[m1 + j] = std::abs(a2[j]);
      for (const auto& blk : slack) {
        if (!separable_block(blk.cone) && blk.cone.dim() > 0) {
          double mx = 0.0;
          for (int i = 0; i < blk.cone.dim(); ++i)
            mx = std::max(mx, rnorm[blk.offset + i]);
          for (int i = 0; i < blk.cone.dim(); ++i) rnorm[blk.offset + i] = mx;
        }
      }
      Vec dr(m);
      for (int i = 0; i < m; ++i)
        dr[i] = (rnorm[i] > 1e-12) ? 1.0 / std::sqrt(rnorm[i]) : 1.0;
      for (int i = 0; i < m1; ++i) A1.row(i) *= dr[i];
      for (int j = 0; j < n; ++j) a2[j] *= dr[m1 + j];
      d_row = d_row.cwiseProduct(dr);
      // column scaling
      Vec cnorm(n);
      for (int j = 0; j < n; ++j)
        cnorm[j] = std::max(A1.col(j).cwiseAbs().maxCoeff(), std::abs(a2[j]));
      Vec dc(n);
      for (int j = 0; j < n; ++j)
        dc[j] = (cnorm[j] > 1e-12) ? 1.0 / std::sqrt(cnorm[j]) : 1.0;
      for (int j = 0; j < n; ++j) {
        A1.col(j) *= dc[j];
        a2[j] *= dc[j];
      }
      e_col = e_col.cwiseProduct(dc);
    }
  }
  Vec bh(m);
  bh.head(m1) = d_row.head(m1).cwiseProduct(p.b);
  bh.tail(n).setZero();
  Vec ch = -e_col.cwiseProduct(p.C);
  double sc_b = 1.0, sc_c = 1.0;
  if (cfg.scaling) {
    if (bh.norm() > 1e-12) sc_b = 1.0 / bh.norm();
    if (ch.norm() > 1e-12) sc_c = 1.0 / ch.norm();
    bh *= sc_b;
    ch *= sc_c;
  }

  // --- (I + Q)^{-1} factorisation ---------------------------------------
  // N = I + A'A = (I + a2^2) + A1'A1, inverted by Woodbury on the m1 block.
  Vec diag_inv = (Vec::Ones(n) + a2.cwiseProduct(a2)).cwiseInverse();
  Mat S = Mat::Identity(m1, m1) + A1 * diag_inv.asDiagonal() * A1.transpose();
  Eigen::LLT<Mat> Sllt(S);
  require(Sllt.info() == Eigen::Success, ErrorCode::SolverFailure,
          "splitting: factorisation failed");

  auto n_solve = [&](const Vec& r) -> Vec {
    Vec t = diag_inv.cwiseProduct(r);
    Vec u = Sllt.solve(A1 * t);
    return t - diag_inv.cwiseProduct(A1.transpose() * u);
  };
  auto a_mul = [&](const Vec& x) -> Vec {
    Vec out(m);
    out.head(m1) = A1 * x;
    out.tail(n) = a2.cwiseProduct(x);
    return out;
  };
  auto at_mul = [&](const Vec& y) -> Vec {
    return A1.transpose() * y.head(m1) + a2.cwiseProduct(y.tail(n));
  };
  auto m_solve = [&](const Vec& rx, const Vec& ry, Vec* zx, Vec* zy) {
    *zx = n_solve(rx - at_mul(ry));
    *zy = ry + a_mul(*zx);
  };

  Vec hx, hy;
  m_solve(ch, bh, &hx, &hy);
  const double h_corr = 1.0 + ch.dot(hx) + bh.dot(hy);

  // --- iteration ---------------------------------------------------------
  Vec ux = Vec::Zero(n), uy = Vec::Zero(m);
  double ut = 1.0;
  Vec vx = Vec::Zero(n), vy = Vec::Zero(m);
  double vt = 1.0;

  Solution sol;
  sol.method = "splitting";
  const double rho = cfg.relaxation;
  const Vec c_orig = -p.C;

  auto record = [&](int it, double pv, double dv, double pr, double dr) {
    if (sol.history.size() < 4000) sol.history.push_back({it, pv, dv, pr, dr});
  };

  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    // z = (I+Q)^{-1} (u + v)
    Vec wx = ux + vx, wy = uy + vy;
    double wt = ut + vt;
    Vec zx0, zy0;
    m_solve(wx, wy, &zx0, &zy0);
    double zt = (wt + ch.dot(zx0) + bh.dot(zy0)) / h_corr;
    Vec zx = zx0 - zt * hx;
    Vec zy = zy0 - zt * hy;

    // relaxed reflection, then projection onto R^n x K* x R+
    Vec px = rho * zx + (1.0 - rho) * ux - vx;
    Vec py = rho * zy + (1.0 - rho) * uy - vy;
    double pt = rho * zt + (1.0 - rho) * ut - vt;

    Vec nuy(m);
    for (const auto& blk : ydual) {
      if (blk.cone.dim() == 0) continue;
      nuy.segment(blk.offset, blk.cone.dim()) =
          blk.cone.project(py.segment(blk.offset, blk.cone.dim()));
    }
    Vec nux = px;  // free block
    double nut = std::max(pt, 0.0);

    vx = vx - rho * zx - (1.0 - rho) * ux + nux;
    vy = vy - rho * zy - (1.0 - rho) * uy + nuy;
    vt = vt - rho * zt - (1.0 - rho) * ut + nut;
    ux = nux;
    uy = nuy;
    ut = nut;

    if ((it + 1) % cfg.check_every != 0 && it + 1 != cfg.max_iter) continue;

    // unscaled candidate solution
    if (ut > 1e-12) {
      Vec X = e_col.cwiseProduct(ux) / (sc_b * ut);
      Vec y1 = d_row.head(m1).cwiseProduct(uy.head(m1)) / (sc_c * ut);
      Vec s_full(m);
      s_full.head(m1) =
          d_row.head(m1).cwiseInverse().cwiseProduct(vy.head(m1)) / (sc_b * ut);
      s_full.tail(n) =
          d_row.tail(n).cwiseInverse().cwiseProduct(vy.tail(n)) / (sc_b * ut);
      double pval = p.C.dot(X);
      double dval = p.b.dot(y1);
      double pres = std::sqrt(
          (p.phi.A * X + s_full.head(m1) - p.b).squaredNorm() +
          (s_full.tail(n) - X).squaredNorm());
      // full dual residual includes the K2* slack implied by y2
      Vec y2 = d_row.tail(n).cwiseProduct(uy.tail(n)) / (sc_c * ut);
      double dres = (p.phi.A.transpose() * y1 - y2 + c_orig).norm();
      // history samples use the cone-exact pair: the K2 slack copy and the
      // projected dual block, so weak duality degrades only with these
      // residuals
      {
        const Vec& x_cone = s_full.tail(n);
        double hp = (p.phi.A * x_cone + s_full.head(m1) - p.b).norm();
        double hd = dres;
        record(it + 1, p.C.dot(x_cone), dval, hp * (1.0 + y1.norm()),
               hd * (1.0 + x_cone.norm()));
      }
      double thresh = cfg.eps_abs + cfg.eps_rel * (1.0 + std::abs(pval));
      if (pres <= thresh && dres <= thresh &&
          std::abs(pval - dval) <= thresh) {
        sol.X = X;
        sol.y = y1;
        sol.primal_value = pval;
        sol.dual_value = dval;
        sol.gap = std::abs(pval - dval);
        sol.status = SolveStatus::Optimal;
        sol.iterations = it + 1;
        sol.primal_residual = pres;
        sol.dual_residual = dres;
        return sol;
      }
    }
    // certificate rays
    if (ut <= cfg.infeas_tol * std::max(1.0, vt)) {
      Vec y_u(m);
      y_u.head(m1) = d_row.head(m1).cwiseProduct(uy.head(m1));
      y_u.tail(n) = d_row.tail(n).cwiseProduct(uy.tail(n));
      double bty = p.b.dot(y_u.head(m1));
      if (bty < -1e-12) {
        Vec yn = y_u / (-bty);
        double res = (p.phi.A.transpose() * yn.head(m1) - yn.tail(n)).norm();
        if (res <= 1e-6) {
          sol.status = SolveStatus::PrimalInfeasible;
          sol.y = yn.head(m1);
          sol.X = Vec::Zero(n);
          sol.iterations = it + 1;
          sol.primal_residual = res;
          sol.dual_residual = res;
          return sol;
        }
      }
      Vec x_u = e_col.cwiseProduct(ux);
      double ctx = c_orig.dot(x_u);
      if (ctx < -1e-12) {
        Vec xn = x_u / (-ctx);
        Vec s1 = p.K1.dual().project(-p.phi.A * xn);
        double res = std::sqrt((p.phi.A * xn + s1).squaredNorm() +
                               (xn - p.K2.project(xn)).squaredNorm());
        if (res <= 1e-6) {
          sol.status = SolveStatus::Unbounded;
          sol.X = xn;
          sol.y = Vec::Zero(m1);
          sol.iterations = it + 1;
          sol.primal_residual = res;
          sol.dual_residual = res;
          return sol;
        }
      }
    }
  }

  // iteration cap: report the last candidate with residuals
  sol.status = SolveStatus::IterationLimit;
  sol.iterations = it;
  if (ut > 1e-12) {
    sol.X = e_col.cwiseProduct(ux) / (sc_b * ut);
    sol.y = d_row.head(m1).cwiseProduct(uy.head(m1)) / (sc_c * ut);
    sol.primal_value = p.C.dot(sol.X);
    sol.dual_value = p.b.dot(sol.y);
    sol.gap = std::abs(sol.primal_value - sol.dual_value);
    Vec slack = p.b - p.phi.A * sol.X;
    sol.primal_residual = p.K1.dual().distance(slack) + p.K2.distance(sol.X);
    sol.dual_residual =
        p.K2.dual().distance(p.phi.A.transpose() * sol.y - p.C);
  } else {
    sol.X = Vec::Zero(n);
    sol.y = Vec::Zero(m1);
  }
  return sol;
}

}  // namespace

Solution solve(const ConicProgram& p, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  switch (cfg.method) {
    case SolveMethod::DirectLp:
      return solve_direct_lp(p);
    case SolveMethod::Splitting:
      return solve_splitting(p, cfg);
    case SolveMethod::Auto:
      if (lp_path_applicable(p)) return solve_direct_lp(p);
      return solve_splitting(p, cfg);
  }
  fail(ErrorCode::Internal, "unreachable");
}

bool verify_solution(const ConicProgram& p, const Solution& s, double tol,
                     std::string* why) {
  p.validate();
  std::ostringstream oss;
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const Cone K1star = p.K1.dual();
  const Cone K2star = p.K2.dual();

  switch (s.status) {
    case SolveStatus::Optimal: {
      if (s.X.size() != p.K2.dim() || s.y.size() != p.K1.dim())
        return reject("dimension mismatch");
      double dX = p.K2.distance(s.X);
      if (dX > tol * (1.0 + s.X.norm())) return reject("X outside K2");
      Vec slack = p.b - p.phi.apply(s.X);
      double dS = K1star.distance(slack);
      if (dS > tol * (1.0 + slack.norm()))
        return reject("b - phi(X) outside K1*");
      double dY = p.K1.distance(s.y);
      if (dY > tol * (1.0 + s.y.norm())) return reject("y outside K1");
      Vec dslack = p.phi.apply_adjoint(s.y) - p.C;
      double dD = K2star.distance(dslack);
      if (dD > tol * (1.0 + dslack.norm()))
        return reject("phi*(y) - C outside K2*");
      double pv = p.C.dot(s.X), dv = p.b.dot(s.y);
      double scale = 1.0 + std::abs(pv);
      if (std::abs(pv - s.primal_value) > tol * scale)
        return reject("primal value mismatch");
      if (std::abs(dv - s.dual_value) > tol * scale)
        return reject("dual value mismatch");
      if (std::abs(pv - dv) > tol * scale) return reject("duality gap too large");
      if (pv > dv + tol * scale) return reject("weak duality violated");
      return true;
    }
    case SolveStatus::PrimalInfeasible: {
      if (s.y.size() != p.K1.dim()) return reject("certificate dimension");
      double bty = p.b.dot(s.y);
      if (bty >= -tol) return reject("certificate has <b,y> >= 0");
      Vec yn = s.y / (-bty);
      if (p.K1.distance(yn) > tol * (1.0 + yn.norm()))
        return reject("certificate y outside K1");
      Vec im = p.phi.apply_adjoint(yn);
      if (K2star.distance(im) > tol * (1.0 + im.norm()))
        return reject("phi*(y) outside K2*");
      return true;
    }
    case SolveStatus::Unbounded: {
      if (s.X.size() != p.K2.dim()) return reject("ray dimension");
      double cx = p.C.dot(s.X);
      if (cx <= tol) return reject("ray does not improve the objective");
      Vec xn = s.X / cx;
      if (p.K2.distance(xn) > tol * (1.0 + xn.norm()))
        return reject("ray outside K2");
      Vec im = -p.phi.apply(xn);
      if (K1star.distance(im) > tol * (1.0 + im.norm()))
        return reject("-phi(ray) outside K1*");
      return true;
    }
    case SolveStatus::IterationLimit:
      return reject("iteration limit is not a certified status");
  }
  (void)oss;
  return false;
}

namespace {

std::optional<Vec> analytic_interior(const Cone& c) {
  switch (c.kind()) {
    case ConeKind::Orthant:
      return Vec::Ones(c.dim());
    case ConeKind::Psd: {
      CMat id = CMat::Identity(c.herm().matrix_dim(), c.herm().matrix_dim());
      return c.herm().coords(id);
    }
    case ConeKind::PolyV:
    case ConeKind::TensorMin: {
      auto g = c.maybe_generators();
      if (!g || g->cols.cols() == 0) return std::nullopt;
      Vec acc = Vec::Zero(c.dim());
      for (Eigen::Index j = 0; j < g->cols.cols(); ++j) {
        double nn = g->cols.col(j).norm();
        if (nn > 0) acc += g->cols.col(j) / nn;
      }
      return acc;
    }
    case ConeKind::PolyH: {
      const Mat& nm = c.vectors();
      if (nm.cols() == 0) return Vec::Ones(c.dim());  // free cone
      Vec acc = Vec::Zero(c.dim());
      for (Eigen::Index j = 0; j < nm.cols(); ++j) {
        double nn = nm.col(j).norm();
        if (nn > 0) acc += nm.col(j) / nn;
      }
      return acc;
    }
    case ConeKind::TensorMax:
    case ConeKind::DualOf: {
      Cone pre = c.dual();
      auto g = pre.maybe_generators();
      if (!g || g->cols.cols() == 0) return std::nullopt;
      Vec acc = Vec::Zero(c.dim());
      for (Eigen::Index j = 0; j < g->cols.cols(); ++j) {
        double nn = g->cols.col(j).norm();
        if (nn > 0) acc += g->cols.col(j) / nn;
      }
      return acc;
    }
    case ConeKind::Product: {
      Vec out(c.dim());
      int off = 0;
      for (const auto& f : c.factors()) {
        auto part = analytic_interior(f);
        if (!part) return std::nullopt;
        out.segment(off, f.dim()) = *part;
        off += f.dim();
      }
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

SlaterReport check_slater(const ConicProgram& p, double margin,
                          std::optional<Vec> primal_candidate,
                          std::optional<Vec> dual_candidate) {
  p.validate();
  require(margin > 0.0, ErrorCode::InvalidArgument,
          "check_slater: margin must be > 0");
  SlaterReport rep;
  const Cone K1star = p.K1.dual();
  const Cone K2star = p.K2.dual();

  std::vector<Vec> pcands;
  if (primal_candidate) pcands.push_back(*primal_candidate);
  if (auto a = analytic_interior(p.K2)) pcands.push_back(*a);
  for (const Vec& x0 : pcands) {
    if (x0.size() != p.K2.dim()) continue;
    for (int k = -4; k <= 48 && !rep.primal_strict; ++k) {
      double lam = std::pow(2.0, -k);
      Vec x = lam * x0;
      if (!p.K2.strictly_contains(x, margin)) continue;
      Vec w = p.b - p.phi.apply(x);
      if (K1star.strictly_contains(w, margin)) {
        rep.primal_strict = true;
        rep.primal_witness = x;
      }
    }
    if (rep.primal_strict) break;
  }

  std::vector<Vec> dcands;
  if (dual_candidate) dcands.push_back(*dual_candidate);
  if (auto a = analytic_interior(p.K1)) dcands.push_back(*a);
  for (const Vec& y0 : dcands) {
    if (y0.size() != p.K1.dim()) continue;
    for (int k = -4; k <= 60 && !rep.dual_strict; ++k) {
      double lam = std::pow(2.0, k);
      Vec y = lam * y0;
      if (!p.K1.strictly_contains(y, margin)) continue;
      Vec w = p.phi.apply_adjoint(y) - p.C;
      if (K2star.strictly_contains(w, margin)) {
        rep.dual_strict = true;
        rep.dual_witness = y;
      }
    }
    if (rep.dual_strict) break;
  }
  return rep;
}

double brute_force_polyhedral(const ConicProgram& p) {
  p.validate();
  require(p.K1.dim() + p.K2.dim() <= 16, ErrorCode::InvalidArgument,
          "brute_force_polyhedral: dimension cap exceeded");
  Mat G2 = p.K2.generators();
  Mat G1 = p.K1.generators();
  const int g = static_cast<int>(G2.cols());
  const int k = static_cast<int>(G1.cols());

  const Vec ct = G2.transpose() * p.C;
  const Mat At = G1.transpose() * p.phi.A * G2;  // k x g
  const Vec rt = G1.transpose() * p.b;

  const double ftol = 1e-9 * std::max(1.0, rt.cwiseAbs().maxCoeff());

  if (g == 0) {
    return p.K1.dual().contains(p.b, 1e-9)
               ? 0.0
               : -std::numeric_limits<double>::infinity();
  }

  auto feasible = [&](const Vec& lam) {
    if (lam.minCoeff() < -ftol) return false;
    Vec viol = At * lam - rt;
    return viol.maxCoeff() <= ftol;
  };

  bool any_feasible = false;
  double best = -std::numeric_limits<double>::infinity();
  if (feasible(Vec::Zero(g))) {
    any_feasible = true;
    best = 0.0;
  }

  const int items = k + g;  // first k are rows, rest are lambda bounds
  // enumerate bases: choose g active constraints
  std::vector<int> idx(g);
  for (int i = 0; i < g; ++i) idx[i] = i;
  auto advance = [&](int size) {
    int i = size - 1;
    while (i >= 0 && idx[i] == items - size + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    return true;
  };

  double combos = 1.0;
  for (int i = 0; i < g; ++i) combos *= double(items - i) / double(i + 1);
  require(combos <= 2e6, ErrorCode::InvalidArgument,
          "brute_force_polyhedral: too many bases to enumerate");

  if (g <= items) {
    do {
      Mat M(g, g);
      Vec r(g);
      for (int i = 0; i < g; ++i) {
        if (idx[i] < k) {
          M.row(i) = At.row(idx[i]);
          r[i] = rt[idx[i]];
        } else {
          M.row(i).setZero();
          M(i, idx[i] - k) = 1.0;
          r[i] = 0.0;
        }
      }
      Eigen::FullPivLU<Mat> lu(M);
      if (!lu.isInvertible()) continue;
      Vec lam = lu.solve(r);
      if (feasible(lam)) {
        any_feasible = true;
        best = std::max(best, ct.dot(lam));
      }
    } while (advance(g));
  }

  if (!any_feasible) return -std::numeric_limits<double>::infinity();

  // improving rays of the recession cone {d >= 0, At d <= 0}
  if (g >= 1) {
    const int rsize = g - 1;
    std::vector<int> ridx(rsize);
    for (int i = 0; i < rsize; ++i) ridx[i] = i;
    auto radvance = [&]() {
      int i = rsize - 1;
      while (i >= 0 && ridx[i] == items - rsize + i) --i;
      if (i < 0) return false;
      ++ridx[i];
      for (int j = i + 1; j < rsize; ++j) ridx[j] = ridx[j - 1] + 1;
      return true;
    };
    auto ray_improves = [&](const Vec& d) {
      if (d.norm() < 1e-12) return false;
      Vec dn = d / d.norm();
      if (dn.minCoeff() < -ftol) return false;
      if ((At * dn).maxCoeff() > ftol) return false;
      return ct.dot(dn) > 1e-9;
    };
    bool more = rsize > 0;
    bool first = true;
    while (first || (rsize > 0 && more)) {
      first = false;
      Mat M = Mat::Zero(std::max(rsize, 1), g);
      if (rsize > 0) {
        for (int i = 0; i < rsize; ++i) {
          if (ridx[i] < k) {
            M.row(i) = At.row(ridx[i]);
          } else {
            M(i, ridx[i] - k) = 1.0;
          }
        }
      }
      Eigen::FullPivLU<Mat> lu(M);
      Mat kernel = lu.kernel();
      for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
        if (ray_improves(kernel.col(c)) || ray_improves(-kernel.col(c)))
          return std::numeric_limits<double>::infinity();
      }
      if (rsize == 0) break;
      more = radvance();
    }
  }
  return best;
}

}  // namespace gptmint
