// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "core/system.hpp"

#include <Eigen/QR>
#include <cmath>

namespace gptmint {

Vec kron_vec(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

Mat pairwise_kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j, ++c) {
      Vec col = kron_vec(a.col(i), b.col(j));
      out.col(c) = col;
    }
  return out;
}

void validate_system(System& s, double tol) {
  require(s.dim >= 1, ErrorCode::Validation, "system: dimension must be >= 1");
  require(s.state_cone.dim() == s.dim && s.effect_cone.dim() == s.dim &&
              s.unit_effect.size() == s.dim,
          ErrorCode::Validation, "system: cone and unit dimensions must agree");

  // unit effect strictly interior to the effect cone
  double margin = 0.0;
  for (double m : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    if (s.effect_cone.strictly_contains(s.unit_effect, m)) {
      margin = m;
      break;
    }
  }
  require(margin > 0.0, ErrorCode::Validation,
          "system: the discarding effect must lie in the interior of the "
          "effect cone");
  s.unit_margin = margin;

  // cones embed in each other's duals, sampled on generators
  if (s.effect_samples.cols() == 0)
    s.effect_samples = s.effect_cone.sample_generators();
  const Mat& eff = s.effect_samples;
  for (Eigen::Index i = 0; i < s.state_generators.cols(); ++i)
    for (Eigen::Index j = 0; j < eff.cols(); ++j)
      require(s.state_generators.col(i).dot(eff.col(j)) >= -tol,
              ErrorCode::Validation,
              "system: effect and state cones must pair nonnegatively");

  // a causal state exists
  bool found = false;
  for (Eigen::Index i = 0; i < s.state_generators.cols() && !found; ++i) {
    if (s.unit_effect.dot(s.state_generators.col(i)) > tol) found = true;
  }
  require(found, ErrorCode::Validation,
          "system: no state with <u, s> > 0, cannot normalise a causal state");
}

namespace {

System compose_pair(const System& a, const System& b) {
  System c;
  c.label = a.label + (a.label.empty() || b.label.empty() ? "" : "*") + b.label;
  c.dim = a.dim * b.dim;
  c.unit_effect = kron_vec(a.unit_effect, b.unit_effect);
  c.state_generators = pairwise_kron(a.state_generators, b.state_generators);
  c.dual_state_generators =
      pairwise_kron(a.dual_state_generators, b.dual_state_generators);
  Mat ea = a.effect_samples.cols() > 0 ? a.effect_samples
                                       : a.effect_cone.sample_generators();
  Mat eb = b.effect_samples.cols() > 0 ? b.effect_samples
                                       : b.effect_cone.sample_generators();
  c.effect_samples = pairwise_kron(ea, eb);
  c.restricted = a.restricted || b.restricted;

  auto both = [&](TheoryKind k) { return a.kind == k && b.kind == k; };
  if (both(TheoryKind::Classical)) {
    c.kind = TheoryKind::Classical;
    c.rule = CompositeRule::Native;
    c.state_cone = Cone::orthant(c.dim);
    c.effect_cone = Cone::orthant(c.dim);
  } else if (both(TheoryKind::Quantum)) {
    c.kind = TheoryKind::Quantum;
    c.rule = CompositeRule::Native;
    c.herm = HermBasis::kron(*a.herm, *b.herm);
    c.state_cone = Cone::psd(*c.herm);
    c.effect_cone = c.state_cone;
  } else if ((a.kind == TheoryKind::Classical || a.kind == TheoryKind::Polyhedral) &&
             (b.kind == TheoryKind::Classical || b.kind == TheoryKind::Polyhedral)) {
    c.kind = TheoryKind::Polyhedral;
    c.rule = CompositeRule::MinMax;
    c.state_cone = Cone::tensor_min(a.state_cone, b.state_cone);
    c.effect_cone = c.restricted
                        ? Cone::tensor_min(a.effect_cone, b.effect_cone)
                        : Cone::tensor_max(a.effect_cone, b.effect_cone);
  } else if (a.kind == TheoryKind::Classical && b.kind == TheoryKind::Quantum) {
    // block product: one quantum system per classical outcome
    c.kind = TheoryKind::Hybrid;
    c.rule = CompositeRule::Native;
    std::vector<Cone> sblocks(a.dim, b.state_cone);
    std::vector<Cone> eblocks(a.dim, b.effect_cone);
    c.state_cone = Cone::product(std::move(sblocks));
    c.effect_cone = Cone::product(std::move(eblocks));
  } else {
    fail(ErrorCode::Unsupported,
         "compose_systems: unsupported factor combination (compose a "
         "classical factor before a quantum one)");
  }
  return c;
}

}  // namespace

System compose_systems(const std::vector<System>& factors) {
  require(!factors.empty(), ErrorCode::InvalidArgument,
          "compose_systems: needs at least one factor");
  System acc = factors[0];
  std::vector<System> flat_factors = {factors[0]};
  for (size_t i = 1; i < factors.size(); ++i) {
    acc = compose_pair(acc, factors[i]);
    flat_factors.push_back(factors[i]);
  }
  acc.factor_list = std::move(flat_factors);
  if (factors.size() > 1) validate_system(acc);
  return acc;
}

bool is_causal_state(const System& s, const Vec& v, double tol) {
  require(v.size() == s.dim, ErrorCode::InvalidArgument,
          "is_causal_state: dimension mismatch");
  require(s.state_cone.contains(v, tol), ErrorCode::Validation,
          "is_causal_state: vector lies outside the state cone");
  return std::abs(s.unit_effect.dot(v) - 1.0) <= tol;
}

bool is_subcausal_state(const System& s, const Vec& v, double tol) {
  require(v.size() == s.dim, ErrorCode::InvalidArgument,
          "is_subcausal_state: dimension mismatch");
  require(s.state_cone.contains(v, tol), ErrorCode::Validation,
          "is_subcausal_state: vector lies outside the state cone");
  return s.unit_effect.dot(v) <= 1.0 + tol;
}

Vec marginalise(const System& composite, const Vec& state, int keep_index) {
  require(composite.is_composite(), ErrorCode::InvalidArgument,
          "marginalise: system is not composite");
  const auto& fs = composite.factor_list;
  require(keep_index >= 0 && keep_index < static_cast<int>(fs.size()),
          ErrorCode::InvalidArgument, "marginalise: keep index out of range");
  require(state.size() == composite.dim, ErrorCode::InvalidArgument,
          "marginalise: state dimension mismatch");

  // fold factors from the right: contract trailing factors with their units,
  // then leading ones.
  Vec cur = state;
  int left_dim = composite.dim;
  // contract factors after keep_index
  for (int f = static_cast<int>(fs.size()) - 1; f > keep_index; --f) {
    const Vec& u = fs[f].unit_effect;
    int nd = fs[f].dim;
    int rows = left_dim / nd;
    Vec next(rows);
    for (int r = 0; r < rows; ++r)
      next[r] = cur.segment(static_cast<Eigen::Index>(r) * nd, nd).dot(u);
    cur = next;
    left_dim = rows;
  }
  // contract factors before keep_index
  for (int f = 0; f < keep_index; ++f) {
    const Vec& u = fs[f].unit_effect;
    int nd = fs[f].dim;
    int cols = left_dim / nd;
    Vec next = Vec::Zero(cols);
    for (int i = 0; i < nd; ++i)
      next += u[i] * cur.segment(static_cast<Eigen::Index>(i) * cols, cols);
    cur = next;
    left_dim = cols;
  }
  return cur;
}

Vec ProcessCone::coords_of_map(const Mat& f) const {
  require(f.rows() == out.dim && f.cols() == in.dim, ErrorCode::InvalidArgument,
          "coords_of_map: matrix shape mismatch");
  Vec x(pdim());
  if (!choi_coords) {
    for (int b = 0; b < out.dim; ++b)
      for (int a = 0; a < in.dim; ++a) x[b * in.dim + a] = f(b, a);
  } else {
    for (int a = 0; a < in.dim; ++a)
      for (int b = 0; b < out.dim; ++b)
        x[a * out.dim + b] = in_conj_signs[a] * f(b, a);
  }
  return x;
}

Mat ProcessCone::to_map_matrix(const Vec& x) const {
  require(x.size() == pdim(), ErrorCode::InvalidArgument,
          "to_map_matrix: coordinate dimension mismatch");
  Mat f(out.dim, in.dim);
  if (!choi_coords) {
    for (int b = 0; b < out.dim; ++b)
      for (int a = 0; a < in.dim; ++a) f(b, a) = x[b * in.dim + a];
  } else {
    for (int a = 0; a < in.dim; ++a)
      for (int b = 0; b < out.dim; ++b)
        f(b, a) = in_conj_signs[a] * x[a * out.dim + b];
  }
  return f;
}

Vec ProcessCone::apply(const Vec& x, const Vec& state) const {
  return to_map_matrix(x) * state;
}

Vec ProcessCone::pullback(const Vec& x, const Vec& effect) const {
  return to_map_matrix(x).transpose() * effect;
}

Mat ProcessCone::subcausal_phi() const {
  Mat phi(in.dim, pdim());
  for (int a = 0; a < in.dim; ++a) {
    Mat f = Mat::Zero(out.dim, in.dim);
    f.col(a) = out.unit_effect;
    phi.row(a) = coords_of_map(f).transpose();
  }
  return phi;
}

Mat ProcessCone::sample_elements() const {
  if (cone.maybe_generators().has_value()) return cone.sample_generators();
  // measure-and-prepare elements: spanning and always inside the cone
  return pairwise_kron(out.state_generators, in.dual_state_generators);
}

ProcessCone make_process_cone(const System& in, const System& out) {
  require(in.kind == out.kind, ErrorCode::Unsupported,
          "process cone: input and output must belong to the same theory");
  ProcessCone pc;
  pc.in = in;
  pc.out = out;
  switch (in.kind) {
    case TheoryKind::Classical:
      pc.cone = Cone::orthant(out.dim * in.dim);
      return pc;
    case TheoryKind::Quantum: {
      pc.choi_coords = true;
      HermBasis choi = HermBasis::kron(*in.herm, *out.herm);
      pc.cone = Cone::psd(std::move(choi));
      pc.in_conj_signs = Vec(in.dim);
      for (int a = 0; a < in.dim; ++a)
        pc.in_conj_signs[a] = in.herm->elem(a).conj_sign;
      return pc;
    }
    case TheoryKind::Polyhedral: {
      if (in.restricted || out.restricted) {
        // measure-and-prepare with physical effects only
        Mat prep = out.state_generators;
        Mat meas = in.effect_cone.generators();
        pc.cone = Cone::polyhedral_v(pairwise_kron(prep, meas));
      } else {
        // positivity into the max-tensor state cone of the output
        Mat normals =
            pairwise_kron(out.dual_state_generators, in.state_generators);
        pc.cone = Cone::polyhedral_h(std::move(normals));
      }
      return pc;
    }
    case TheoryKind::Hybrid:
      break;
  }
  fail(ErrorCode::Unsupported,
       "process cone: no default process cone for hybrid systems");
}

ProcessCone counterfeit_cone(const System& a, int copies) {
  require(copies >= 1, ErrorCode::InvalidArgument,
          "counterfeit_cone: copies must be >= 1");
  if (copies == 1) return make_process_cone(a, a);
  std::vector<System> fs(static_cast<size_t>(copies), a);
  System out = compose_systems(fs);
  return make_process_cone(a, out);
}

bool is_causal_process(const ProcessCone& pc, const Vec& f, double tol) {
  require(pc.cone.contains(f, tol), ErrorCode::Validation,
          "is_causal_process: element lies outside the process cone");
  Vec pulled = pc.pullback(f, pc.out.unit_effect);
  return (pulled - pc.in.unit_effect).norm() <= tol * (1.0 + f.norm());
}

bool is_subcausal_process(const ProcessCone& pc, const Vec& f,
                          Ordering ordering, double tol) {
  require(pc.cone.contains(f, tol), ErrorCode::Validation,
          "is_subcausal_process: element lies outside the process cone");
  Vec w = pc.in.unit_effect - pc.pullback(f, pc.out.unit_effect);
  if (ordering == Ordering::EffectCone) return pc.in.effect_cone.contains(w, tol);
  return pc.in.state_cone.dual().contains(w, tol);
}

int tomography_rank(const ProcessCone& pc) {
  const Mat& sgen = pc.in.state_generators;
  const Mat& egen = pc.out.dual_state_generators;
  Mat rows(sgen.cols() * egen.cols(), pc.pdim());
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sgen.cols(); ++i)
    for (Eigen::Index j = 0; j < egen.cols(); ++j, ++r) {
      Mat f = egen.col(j) * sgen.col(i).transpose();
      rows.row(r) = pc.coords_of_map(f).transpose();
    }
  Eigen::ColPivHouseholderQR<Mat> qr(rows);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

}  // namespace gptmint
