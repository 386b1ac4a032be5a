// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "core/money.hpp"

#include <Eigen/QR>
#include <cmath>
#include <sstream>

namespace gptmint {

void validate_strategy(const BankStrategy& s, double tol) {
  require(!s.items.empty(), ErrorCode::Validation,
          "strategy: needs at least one item");
  double psum = 0.0;
  for (size_t i = 0; i < s.items.size(); ++i) {
    const auto& it = s.items[i];
    std::ostringstream tag;
    tag << "strategy item " << i;
    require(it.p > 0.0, ErrorCode::Validation,
            tag.str() + ": probabilities must satisfy p_i > 0");
    psum += it.p;
    require(it.state.size() == s.system.dim && it.effect.size() == s.system.dim,
            ErrorCode::Validation, tag.str() + ": dimension mismatch");
    require(s.system.state_cone.contains(it.state, tol), ErrorCode::Validation,
            tag.str() + ": state lies outside the state cone");
    require(std::abs(s.system.unit_effect.dot(it.state) - 1.0) <= tol,
            ErrorCode::Validation,
            tag.str() + ": state is not causal (<u, s_i> must equal 1)");
    require(s.system.effect_cone.contains(it.effect, tol),
            ErrorCode::Validation,
            tag.str() + ": effect lies outside the effect cone");
    require(s.system.effect_cone.contains(s.system.unit_effect - it.effect, tol),
            ErrorCode::Validation,
            tag.str() +
                ": effect is not subcausal (u - e_i must lie in the effect cone)");
    require(std::abs(it.effect.dot(it.state) - 1.0) <= tol,
            ErrorCode::Validation,
            tag.str() +
                ": verification must always pass on the honest state "
                "(<e_i, s_i> must equal 1)");
  }
  require(std::abs(psum - 1.0) <= 1e-12, ErrorCode::Validation,
          "strategy: probabilities must satisfy p_1, ..., p_n > 0 and sum to 1");
}

namespace {

void check_pc_matches(const BankStrategy& s, const ProcessCone& pc) {
  require(pc.in.dim == s.system.dim, ErrorCode::InvalidArgument,
          "process cone input does not match the strategy's system");
  require(pc.out.dim == s.system.dim * s.system.dim, ErrorCode::InvalidArgument,
          "process cone output must be two copies of the strategy's system");
}

}  // namespace

Vec verification_functional(const BankStrategy& s, const ProcessCone& pc) {
  validate_strategy(s);
  check_pc_matches(s, pc);
  Mat f = Mat::Zero(pc.out.dim, pc.in.dim);
  for (const auto& it : s.items) {
    Vec ee = kron_vec(it.effect, it.effect);
    f += it.p * ee * it.state.transpose();
  }
  return pc.coords_of_map(f);
}

ConicProgram counterfeit_program(const BankStrategy& s, const ProcessCone& pc,
                                 bool relaxed) {
  ConicProgram p;
  p.C = verification_functional(s, pc);
  p.b = s.system.unit_effect;
  p.phi = LinearOperator(pc.subcausal_phi());
  p.K1 = relaxed ? s.system.state_cone : s.system.effect_cone.dual();
  p.K2 = pc.cone;
  p.validate();
  return p;
}

namespace {

// Interior candidates mirroring the scaling construction in the duality
// argument: prepare an interior output state, discard the input (primal);
// the unit effect pulled into the state cone (dual).
Vec prepare_interior_candidate(const ProcessCone& pc) {
  Mat gens = pc.out.state_generators;
  Vec sigma = Vec::Zero(pc.out.dim);
  for (Eigen::Index j = 0; j < gens.cols(); ++j) {
    double nn = gens.col(j).norm();
    if (nn > 0) sigma += gens.col(j) / nn;
  }
  Mat f = sigma * pc.in.unit_effect.transpose();
  return pc.coords_of_map(f);
}

Vec state_interior_candidate(const System& sys) {
  Mat gens = sys.state_generators;
  Vec acc = Vec::Zero(sys.dim);
  for (Eigen::Index j = 0; j < gens.cols(); ++j) {
    double nn = gens.col(j).norm();
    if (nn > 0) acc += gens.col(j) / nn;
  }
  return acc;
}

AlphaResult run_alpha(const BankStrategy& s, const ProcessCone& pc,
                      const SolverConfig& cfg, bool relaxed) {
  ConicProgram p = counterfeit_program(s, pc, relaxed);
  Solution sol = solve(p, cfg);
  if (sol.status != SolveStatus::Optimal) {
    fail(ErrorCode::SolverFailure,
         "counterfeiting program did not reach an optimal solution (status " +
             to_string(sol.status) + ")");
  }
  std::string why;
  if (!verify_solution(p, sol, 1e-5, &why)) {
    fail(ErrorCode::SolverFailure,
         "counterfeiting optimum failed certificate verification: " + why);
  }
  AlphaResult r;
  r.value = sol.primal_value;
  r.chi = sol.X;
  r.y_cert = sol.y;
  r.dual_value = sol.dual_value;
  r.gap = sol.gap;
  r.raw = std::move(sol);
  return r;
}

}  // namespace

AlphaResult alpha(const BankStrategy& s, const ProcessCone& pc,
                  const SolverConfig& cfg) {
  return run_alpha(s, pc, cfg, false);
}

AlphaResult alpha_tilde(const BankStrategy& s, const ProcessCone& pc,
                        const SolverConfig& cfg) {
  AlphaResult r = run_alpha(s, pc, cfg, true);
  // the certificate must be a state-cone element with matching value
  require(s.system.state_cone.contains(r.y_cert, 1e-5 * (1.0 + r.y_cert.norm())),
          ErrorCode::SolverFailure,
          "alpha_tilde: dual certificate is not a state-cone element");
  return r;
}

SecurityReport analyze(const BankStrategy& s, const ProcessCone& pc,
                       const SolverConfig& cfg) {
  SecurityReport rep;
  TrivialBound tb = trivial_lower_bound(s, pc);
  AlphaResult a = alpha(s, pc, cfg);
  AlphaResult at = alpha_tilde(s, pc, cfg);
  rep.alpha = a.value;
  rep.alpha_tilde = at.value;
  rep.chi_opt = a.chi;
  rep.y_cert = at.y_cert;
  rep.gap = std::max(a.gap, at.gap);
  rep.lower_bound = tb.value;

  ConicProgram p = counterfeit_program(s, pc, false);
  rep.slater = check_slater(p, 1e-6, prepare_interior_candidate(pc),
                            state_interior_candidate(s.system));

  const double tol = 1e-5;
  require(rep.lower_bound <= rep.alpha + tol, ErrorCode::SolverFailure,
          "analyze: trivial lower bound exceeds alpha");
  require(rep.alpha <= rep.alpha_tilde + 2 * tol, ErrorCode::SolverFailure,
          "analyze: alpha exceeds alpha_tilde");
  require(rep.alpha_tilde <= 1.0 + 3 * tol, ErrorCode::SolverFailure,
          "analyze: alpha_tilde exceeds one");
  return rep;
}

NormalisedY normalised_Y(const BankStrategy& s, const ProcessCone& pc,
                         const Vec& y_cert, double alpha_tilde_value,
                         double tol) {
  require(alpha_tilde_value > 0.0, ErrorCode::InvalidArgument,
          "normalised_Y: alpha_tilde must be positive");
  check_pc_matches(s, pc);
  NormalisedY y;
  y.state = y_cert / alpha_tilde_value;
  require(std::abs(s.system.unit_effect.dot(y.state) - 1.0) <= tol,
          ErrorCode::Validation,
          "normalised_Y: certificate does not normalise to a causal state");
  Mat functional = pc.out.unit_effect * y.state.transpose();
  y.functional = pc.coords_of_map(functional);
  Mat prep = kron_vec(y.state, y.state) * s.system.unit_effect.transpose();
  y.prepare_map = pc.coords_of_map(prep);
  require(is_causal_process(pc, y.prepare_map, std::max(tol, 1e-6)),
          ErrorCode::Validation,
          "normalised_Y: the prepare map built from the certificate is not causal");
  return y;
}

TrivialBound trivial_lower_bound(const BankStrategy& s, const ProcessCone& pc) {
  validate_strategy(s);
  check_pc_matches(s, pc);
  TrivialBound tb;
  tb.index = 0;
  for (size_t i = 1; i < s.items.size(); ++i)
    if (s.items[i].p > s.items[tb.index].p) tb.index = static_cast<int>(i);
  tb.value = s.items[tb.index].p;
  const Vec& si = s.items[tb.index].state;
  Mat f = kron_vec(si, si) * s.system.unit_effect.transpose();
  tb.chi = pc.coords_of_map(f);
  Vec c = verification_functional(s, pc);
  require(c.dot(tb.chi) >= tb.value - 1e-9, ErrorCode::Internal,
          "trivial counterfeiter scores below max_i p_i");
  return tb;
}

namespace {

// Exact optimum of a linear functional over the acceptance face
// {S psd : tr(S) <= 1, tr(E S) >= 1} through its dual, which reduces to the
// one-dimensional convex minimisation of lmax(tE + G) - t over t >= 0.
// Any sample point certifies an upper bound; dual strict feasibility makes
// the infimum exact. Used for PSD state cones, where the generic splitting
// iteration loses its linear rate on these flat degenerate faces.
double psd_face_max(const HermBasis& herm, const Vec& effect, const Vec& dir) {
  CMat e = herm.matrix(effect);
  CMat g = herm.matrix(dir);
  auto f = [&](double t) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(t * e + g, Eigen::EigenvaluesOnly);
    double lmax = eig.eigenvalues()[herm.matrix_dim() - 1];
    return std::max(0.0, lmax) - t;
  };
  // bracket the minimum of the convex function on a doubling grid
  double best_t = 0.0, best_f = f(0.0);
  double lo = 0.0, hi = 0.0;
  double prev_t = 0.0;
  for (double t = 1e-6; t <= 1e12; t *= 2.0) {
    double ft = f(t);
    if (ft < best_f) {
      best_f = ft;
      lo = prev_t;
      best_t = t;
      hi = 2.0 * t;
    }
    prev_t = t;
  }
  if (hi > lo) {
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int iter = 0; iter < 200 && b - a > 1e-12 * (1.0 + b); ++iter) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - golden * (b - a);
        f1 = f(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + golden * (b - a);
        f2 = f(x2);
      }
    }
    best_f = std::min(best_f, std::min(f1, f2));
  }
  (void)best_t;
  return best_f;
}

}  // namespace

std::vector<bool> check_VS(const BankStrategy& s, double tol,
                           const SolverConfig& cfg) {
  validate_strategy(s);
  const System& sys = s.system;
  const bool psd_path = sys.kind == TheoryKind::Quantum && !sys.is_composite();
  std::vector<bool> out;
  out.reserve(s.items.size());
  for (const auto& it : s.items) {
    ConicProgram p;
    p.b = Vec(2);
    p.b << 1.0, -1.0;
    Mat phi(2, sys.dim);
    phi.row(0) = sys.unit_effect.transpose();
    phi.row(1) = -it.effect.transpose();
    p.phi = LinearOperator(phi);
    p.K1 = Cone::orthant(2);
    p.K2 = sys.state_cone;

    bool sharp = true;
    for (int k = 0; k < sys.dim && sharp; ++k) {
      for (int sign : {+1, -1}) {
        double opt;
        if (psd_path) {
          Vec dir = Vec::Zero(sys.dim);
          dir[k] = sign;
          opt = sign * psd_face_max(*sys.herm, it.effect, dir);
        } else {
          p.C = Vec::Zero(sys.dim);
          p.C[k] = sign;
          Solution sol = solve(p, cfg);
          if (sol.status == SolveStatus::PrimalInfeasible) {
            fail(ErrorCode::Validation,
                 "check_VS: the acceptance face is empty, the strategy is "
                 "corrupted (verification cannot pass on the honest state)");
          }
          if (sol.status != SolveStatus::Optimal) {
            fail(ErrorCode::SolverFailure,
                 "check_VS: face optimisation failed with status " +
                     to_string(sol.status));
          }
          opt = sign * sol.primal_value;
        }
        if (std::abs(opt - it.state[k]) > tol) {
          sharp = false;
          break;
        }
      }
    }
    out.push_back(sharp);
  }
  return out;
}

BroadcastReport check_broadcastable(const std::vector<Vec>& states,
                                    const ProcessCone& pc,
                                    const SolverConfig& cfg) {
  require(!states.empty(), ErrorCode::InvalidArgument,
          "check_broadcastable: needs at least one state");
  const System& in = pc.in;
  for (const auto& st : states) {
    require(is_causal_state(in, st, 1e-6), ErrorCode::Validation,
            "check_broadcastable: all states must be causal");
  }
  require(pc.out.factor_list.size() == 2, ErrorCode::InvalidArgument,
          "check_broadcastable: output must be a two-factor composite");
  const int d = in.dim;
  const int n = static_cast<int>(states.size());

  ConicProgram p;
  p.C = Vec::Zero(pc.pdim());
  const int rows = d + 2 * n * d;
  Mat phi(rows, pc.pdim());
  Vec b(rows);
  phi.topRows(d) = pc.subcausal_phi();
  b.head(d) = in.unit_effect;
  int r = d;
  const Vec& u1 = pc.out.factor_list[0].unit_effect;
  const Vec& u2 = pc.out.factor_list[1].unit_effect;
  for (int i = 0; i < n; ++i) {
    for (int keep = 0; keep < 2; ++keep) {
      for (int j = 0; j < d; ++j, ++r) {
        Vec ej = Vec::Zero(d);
        ej[j] = 1.0;
        Vec eff = (keep == 0) ? kron_vec(ej, u2) : kron_vec(u1, ej);
        Mat f = eff * states[i].transpose();
        phi.row(r) = pc.coords_of_map(f).transpose();
        b[r] = states[i][j];
      }
    }
  }
  p.phi = LinearOperator(std::move(phi));
  p.b = std::move(b);
  std::vector<Cone> k1_factors;
  k1_factors.push_back(in.effect_cone.dual());
  for (int i = 0; i < 2 * n; ++i) k1_factors.push_back(Cone::freespace(d));
  p.K1 = Cone::product(std::move(k1_factors));
  p.K2 = pc.cone;
  p.validate();

  Solution sol = solve(p, cfg);
  BroadcastReport rep;
  switch (sol.status) {
    case SolveStatus::Optimal:
      rep.feasible = true;
      rep.map_B = sol.X;
      break;
    case SolveStatus::PrimalInfeasible: {
      rep.feasible = false;
      rep.certificate = sol.y;
      std::string why;
      require(verify_solution(p, sol, 1e-5, &why), ErrorCode::SolverFailure,
              "check_broadcastable: infeasibility certificate failed "
              "verification: " + why);
      break;
    }
    default:
      fail(ErrorCode::SolverFailure,
           "check_broadcastable: solver returned " + to_string(sol.status));
  }
  rep.raw = std::move(sol);
  return rep;
}

EquivalenceVerdict wnc_broadcast_equivalence(const BankStrategy& s,
                                             const ProcessCone& pc,
                                             const SolverConfig& cfg,
                                             double tol) {
  auto vs = check_VS(s, 1e-5, cfg);
  for (bool v : vs)
    require(v, ErrorCode::Validation,
            "wnc_broadcast_equivalence: hypothesis violated, the strategy "
            "does not satisfy verification sharpness");
  EquivalenceVerdict verdict;
  AlphaResult a = alpha(s, pc, cfg);
  verdict.alpha = a.value;
  std::vector<Vec> states;
  for (const auto& it : s.items) states.push_back(it.state);
  BroadcastReport br = check_broadcastable(states, pc, cfg);
  verdict.broadcast_feasible = br.feasible;
  verdict.consistent = ((a.value >= 1.0 - tol) == br.feasible);

  if (br.feasible && a.value >= 1.0 - tol) {
    // the discard splits as e_i plus a complement that never fires on the
    // broadcast marginal
    for (size_t i = 0; i < s.items.size(); ++i) {
      Vec marg = marginalise(pc.out, pc.apply(br.map_B, s.items[i].state), 0);
      double leak = (s.system.unit_effect - s.items[i].effect).dot(marg);
      require(leak <= 10 * tol, ErrorCode::Internal,
              "wnc_broadcast_equivalence: broadcast marginal leaks past the "
              "verification effect");
    }
  }
  return verdict;
}

bool is_spanning(const BankStrategy& s) {
  Mat m(s.system.dim, static_cast<Eigen::Index>(s.items.size()));
  for (size_t i = 0; i < s.items.size(); ++i)
    m.col(static_cast<Eigen::Index>(i)) = s.items[i].state;
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(1e-10);
  return qr.rank() == s.system.dim;
}

BankStrategy make_spanning(const BankStrategy& s,
                           const std::vector<Vec>& causal_basis) {
  validate_strategy(s);
  require(!causal_basis.empty(), ErrorCode::InvalidArgument,
          "make_spanning: empty basis");
  Mat bm(s.system.dim, static_cast<Eigen::Index>(causal_basis.size()));
  for (size_t j = 0; j < causal_basis.size(); ++j) {
    require(is_causal_state(s.system, causal_basis[j], 1e-6),
            ErrorCode::Validation, "make_spanning: basis states must be causal");
    bm.col(static_cast<Eigen::Index>(j)) = causal_basis[j];
  }
  Eigen::ColPivHouseholderQR<Mat> qr(bm);
  qr.setThreshold(1e-10);
  require(qr.rank() == s.system.dim, ErrorCode::Validation,
          "make_spanning: basis does not span the state space");

  BankStrategy mixed;
  mixed.system = s.system;
  for (const auto& it : s.items)
    mixed.items.push_back({0.5 * it.p, it.state, it.effect});
  const double q = 0.5 / static_cast<double>(causal_basis.size());
  for (const auto& bstate : causal_basis)
    mixed.items.push_back({q, bstate, s.system.unit_effect});
  validate_strategy(mixed);
  require(is_spanning(mixed), ErrorCode::Internal,
          "make_spanning: mixture failed the spanning rank check");
  return mixed;
}

BankStrategy product_strategy(const BankStrategy& a, const BankStrategy& b) {
  validate_strategy(a);
  validate_strategy(b);
  BankStrategy prod;
  prod.system = compose_systems({a.system, b.system});
  for (const auto& ia : a.items)
    for (const auto& ib : b.items)
      prod.items.push_back({ia.p * ib.p, kron_vec(ia.state, ib.state),
                            kron_vec(ia.effect, ib.effect)});
  validate_strategy(prod);
  return prod;
}

namespace {

// Plug terms (q, t_B, f_B) into the B side of chi_AB : AB -> (AB)(AB),
// yielding the effective map A -> A A.
Vec plug_second_system(const ProcessCone& pc_ab, const Vec& chi,
                       const System& a, const System& b,
                       const std::vector<std::tuple<double, Vec, Vec>>& terms,
                       const ProcessCone& pc_a) {
  const int da = a.dim, db = b.dim;
  Mat m = pc_ab.to_map_matrix(chi);  // ((da db)^2) x (da db)
  Mat n = Mat::Zero(da * da, da);
  const int dab = da * db;
  for (const auto& [q, t, f] : terms) {
    for (int a1 = 0; a1 < da; ++a1)
      for (int a2 = 0; a2 < da; ++a2)
        for (int ain = 0; ain < da; ++ain) {
          double acc = 0.0;
          for (int b1 = 0; b1 < db; ++b1)
            for (int b2 = 0; b2 < db; ++b2) {
              double fb = f[b1] * f[b2];
              if (fb == 0.0) continue;
              int orow = (a1 * db + b1) * dab + (a2 * db + b2);
              for (int bin = 0; bin < db; ++bin) {
                if (t[bin] == 0.0) continue;
                acc += fb * t[bin] * m(orow, ain * db + bin);
              }
            }
          n(a1 * da + a2, ain) += q * acc;
        }
  }
  return pc_a.coords_of_map(n);
}

}  // namespace

ProductBoundReport verify_product_bound(const BankStrategy& a,
                                        const BankStrategy& b,
                                        const SolverConfig& cfg, double tol,
                                        int dim_cap) {
  ProcessCone pc_a = counterfeit_cone(a.system);
  ProcessCone pc_b = counterfeit_cone(b.system);
  BankStrategy ab = product_strategy(a, b);
  ProcessCone pc_ab = counterfeit_cone(ab.system);
  require(pc_ab.pdim() <= dim_cap, ErrorCode::InvalidArgument,
          "verify_product_bound: composite program dimension exceeds the cap");

  ProductBoundReport rep;
  AlphaResult r_ab = alpha(ab, pc_ab, cfg);
  AlphaResult r_a = alpha_tilde(a, pc_a, cfg);
  AlphaResult r_b = alpha_tilde(b, pc_b, cfg);
  rep.alpha_ab = r_ab.value;
  rep.alpha_tilde_a = r_a.value;
  rep.alpha_tilde_b = r_b.value;
  rep.bound_holds = rep.alpha_ab <= rep.alpha_tilde_a * rep.alpha_tilde_b + tol;

  // composing the optimal machine with the second bank's strategy, or with
  // the normalised dual object, stays physical on the first system
  std::vector<std::tuple<double, Vec, Vec>> c_terms;
  for (const auto& it : b.items) c_terms.push_back({it.p, it.state, it.effect});
  Vec xi_c = plug_second_system(pc_ab, r_ab.chi, a.system, b.system, c_terms, pc_a);

  NormalisedY yb = normalised_Y(b, pc_b, r_b.y_cert, r_b.value, 1e-4);
  std::vector<std::tuple<double, Vec, Vec>> y_terms;
  y_terms.push_back({1.0, yb.state, b.system.unit_effect});
  Vec xi_y = plug_second_system(pc_ab, r_ab.chi, a.system, b.system, y_terms, pc_a);

  rep.composition_subcausal =
      is_subcausal_process(pc_a, xi_c, Ordering::EffectCone, 1e-5) &&
      is_subcausal_process(pc_a, xi_y, Ordering::EffectCone, 1e-5);
  return rep;
}

RepetitionResult repetition_from_alpha_tilde(double alpha_tilde_value,
                                             double delta, double gap_tol) {
  require(delta > 0.0 && delta < 1.0, ErrorCode::InvalidArgument,
          "repetition: delta must lie strictly between 0 and 1");
  require(alpha_tilde_value > 0.0, ErrorCode::InvalidArgument,
          "repetition: alpha_tilde must be positive");
  if (alpha_tilde_value >= 1.0 - 10 * gap_tol) {
    fail(ErrorCode::Validation,
         "no security amplification possible: alpha_tilde is not bounded "
         "away from one (perfect counterfeiting regime)");
  }
  double r = std::log(delta) / std::log(alpha_tilde_value);
  int n = std::max(1, static_cast<int>(std::ceil(r - 1e-9)));
  while (std::pow(alpha_tilde_value, n) > delta && n < 1 << 30) ++n;
  while (n > 1 && std::pow(alpha_tilde_value, n - 1) <= delta) --n;
  RepetitionResult res;
  res.n = n;
  res.alpha_tilde = alpha_tilde_value;
  res.bound = std::pow(alpha_tilde_value, n);
  return res;
}

RepetitionResult repetition_security(const BankStrategy& s, double delta,
                                     const SolverConfig& cfg) {
  ProcessCone pc = counterfeit_cone(s.system);
  AlphaResult at = alpha_tilde(s, pc, cfg);
  double gap_tol = std::max(at.gap, cfg.eps_abs);
  return repetition_from_alpha_tilde(at.value, delta, gap_tol);
}

}  // namespace gptmint
