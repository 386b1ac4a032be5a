// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <random>

#include "core/theories.hpp"

using namespace gptmint;

namespace {

// nonnegative random combination of the cone's sample elements, then scaled
// until the discard-composition is dominated by the unit effect
Vec random_subcausal_element(const ProcessCone& pc, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Mat gens = pc.sample_elements();
  Vec x = Vec::Zero(pc.pdim());
  for (Eigen::Index j = 0; j < gens.cols(); ++j) x += unif(rng) * gens.col(j);
  for (int tries = 0; tries < 60; ++tries) {
    if (is_subcausal_process(pc, x, Ordering::EffectCone, 1e-9)) return x;
    x *= 0.5;
  }
  return Vec::Zero(pc.pdim());
}

// raise a subcausal element to a causal one by adding a prepare map that
// absorbs the slack (valid whenever the slack is a physical effect)
Vec make_causal(const ProcessCone& pc, const Vec& x) {
  Vec w = pc.in.unit_effect - pc.pullback(x, pc.out.unit_effect);
  Vec sigma = pc.out.state_generators.col(0);
  sigma /= pc.out.unit_effect.dot(sigma);
  Mat f = sigma * w.transpose();
  return x + pc.coords_of_map(f);
}

}  // namespace

TEST_CASE("causal and subcausal states") {
  TheoryDescriptor q = quantum(2);
  Vec mixed = q.system.herm->coords(0.5 * CMat::Identity(2, 2));
  CHECK(is_causal_state(q.system, mixed));
  CHECK(is_subcausal_state(q.system, mixed));

  Vec half_zero = Vec::Zero(4);
  half_zero[0] = 0.5;  // 0.5 |0><0|
  CHECK_FALSE(is_causal_state(q.system, half_zero));
  CHECK(is_subcausal_state(q.system, half_zero));

  TheoryDescriptor c = classical(2);
  Vec v(2);
  v << 0.3, 0.3;
  CHECK(is_subcausal_state(c.system, v));
  CHECK_FALSE(is_causal_state(c.system, v));
  CHECK(c.system.unit_effect.dot(v) == doctest::Approx(0.6));

  Vec outside(2);
  outside << -0.2, 0.5;
  CHECK_THROWS_AS(is_causal_state(c.system, outside), Error);
}

TEST_CASE("identity processes are causal, halves are merely subcausal") {
  for (const auto& td : {classical(2), quantum(2), polygon(5, false)}) {
    ProcessCone pc = make_process_cone(td.system, td.system);
    Vec id = pc.coords_of_map(Mat::Identity(td.system.dim, td.system.dim));
    CHECK(is_causal_process(pc, id));
    CHECK(is_subcausal_process(pc, id, Ordering::EffectCone));
    CHECK(is_subcausal_process(pc, id, Ordering::DualStateCone));
    CHECK_FALSE(is_causal_process(pc, 0.5 * id));
    CHECK(is_subcausal_process(pc, 0.5 * id, Ordering::EffectCone));
  }
}

TEST_CASE("discard-and-prepare-the-mixed-state channel is causal") {
  TheoryDescriptor q = quantum(2);
  ProcessCone pc = make_process_cone(q.system, q.system);
  Vec mixed = q.system.herm->coords(0.5 * CMat::Identity(2, 2));
  Mat f = mixed * q.system.unit_effect.transpose();
  Vec depol = pc.coords_of_map(f);
  CHECK(is_causal_process(pc, depol));
  // independent check: the pulled-back unit evaluated on every basis state
  Mat m = pc.to_map_matrix(depol);
  for (int k = 0; k < 4; ++k) {
    Vec basis_state = Vec::Zero(4);
    basis_state[k] = 1.0;
    double lhs = q.system.unit_effect.dot(m * basis_state);
    CHECK(lhs == doctest::Approx(q.system.unit_effect[k]).epsilon(1e-12));
  }
}

TEST_CASE("relaxed ordering accepts a slack outside the physical effects") {
  TheoryDescriptor t = polygon(5, true);
  const System& sys = t.system;
  REQUIRE_FALSE(t.no_restriction);
  ProcessCone pc = make_process_cone(sys, sys);
  Cone dual_state = sys.state_cone.dual();

  // search a physical pullback e* whose complement separates the two cones
  Vec estar;
  bool found = false;
  Mat eff = sys.effect_cone.generators();
  for (Eigen::Index j = 0; j < eff.cols() && !found; ++j) {
    for (Eigen::Index k = 0; k < eff.cols() && !found; ++k) {
      for (double tscale : {0.4, 0.5, 0.6, 0.65}) {
        Vec cand = tscale * (eff.col(j) + eff.col(k));
        Vec w = sys.unit_effect - cand;
        if (dual_state.contains(w, 1e-9) && !sys.effect_cone.contains(w, 1e-7)) {
          estar = cand;
          found = true;
          break;
        }
      }
    }
  }
  REQUIRE(found);
  Vec sigma = sys.state_generators.col(0);
  Mat fmat = sigma * estar.transpose();
  Vec f = pc.coords_of_map(fmat);
  REQUIRE(pc.cone.contains(f, 1e-9));
  CHECK(is_subcausal_process(pc, f, Ordering::DualStateCone));
  CHECK_FALSE(is_subcausal_process(pc, f, Ordering::EffectCone));
}

TEST_CASE("composites, application and marginals") {
  TheoryDescriptor q = quantum(2);
  System qq = compose_systems({q.system, q.system});
  CHECK(qq.dim == 16);
  CHECK((qq.unit_effect -
         kron_vec(q.system.unit_effect, q.system.unit_effect)).norm() == 0.0);

  // product state marginals recover the factors
  Vec zero_state = Vec::Zero(4);
  zero_state[0] = 1.0;
  Vec mixed = q.system.herm->coords(0.5 * CMat::Identity(2, 2));
  Vec prod = kron_vec(zero_state, mixed);
  CHECK((marginalise(qq, prod, 0) - zero_state).norm() < 1e-12);
  CHECK((marginalise(qq, prod, 1) - mixed).norm() < 1e-12);

  // identity process returns its input
  ProcessCone pc = make_process_cone(q.system, q.system);
  Vec id = pc.coords_of_map(Mat::Identity(4, 4));
  CHECK((pc.apply(id, mixed) - mixed).norm() < 1e-12);

  // Bell state marginal is the maximally mixed state
  Eigen::VectorXcd bell(4);
  bell << 1.0, 0.0, 0.0, 1.0;
  bell /= std::sqrt(2.0);
  CMat rho = bell * bell.adjoint();
  Vec bell_vec = qq.herm->coords(rho);
  Vec marg = marginalise(qq, bell_vec, 0);
  // oracle: direct partial trace of the density matrix
  CMat traced = CMat::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) traced(i, j) += rho(i * 2 + k, j * 2 + k);
  CHECK((marg - q.system.herm->coords(traced)).norm() < 1e-12);
  CHECK((marg - mixed).norm() < 1e-12);
}

TEST_CASE("composite rules: min tensor states sit inside max tensor states") {
  TheoryDescriptor t = polygon(5, false);
  System pp = compose_systems({t.system, t.system});
  CHECK(pp.state_cone.kind() == ConeKind::TensorMin);
  CHECK(pp.effect_cone.kind() == ConeKind::TensorMax);
  Cone max_states =
      Cone::tensor_max(t.system.state_cone, t.system.state_cone);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Mat gens = pp.state_cone.generators();
  for (int trial = 0; trial < 50; ++trial) {
    Vec x = Vec::Zero(pp.dim);
    for (Eigen::Index j = 0; j < gens.cols(); ++j) x += unif(rng) * gens.col(j);
    CHECK(max_states.contains(x, 1e-8));
  }
}

TEST_CASE("hybrid composite of a classical and a quantum factor") {
  System cq = compose_systems({classical(2).system, quantum(2).system});
  CHECK(cq.kind == TheoryKind::Hybrid);
  CHECK(cq.dim == 8);
  CHECK(cq.state_cone.kind() == ConeKind::Product);
  CHECK_THROWS_AS(make_process_cone(cq, cq), Error);
  // quantum factor first is not representable as a block product
  CHECK_THROWS_AS(compose_systems({quantum(2).system, classical(2).system}),
                  Error);
}

TEST_CASE("tomography: evaluation on generator pairs has trivial kernel") {
  for (const auto& td : {classical(2), classical(3), quantum(2), gbit(),
                         polygon(5, false), polygon(5, true)}) {
    ProcessCone pc = counterfeit_cone(td.system);
    CHECK(tomography_rank(pc) == pc.pdim());
    ProcessCone single = make_process_cone(td.system, td.system);
    CHECK(tomography_rank(single) == single.pdim());
  }
}

TEST_CASE("causal processes form a convex set") {
  std::mt19937_64 rng(17);
  for (const auto& td : {classical(2), quantum(2), polygon(4, false)}) {
    ProcessCone pc = make_process_cone(td.system, td.system);
    for (int trial = 0; trial < 10; ++trial) {
      Vec f = make_causal(pc, random_subcausal_element(pc, rng));
      Vec g = make_causal(pc, random_subcausal_element(pc, rng));
      REQUIRE(is_causal_process(pc, f, 1e-7));
      REQUIRE(is_causal_process(pc, g, 1e-7));
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      double p = unif(rng);
      CHECK(is_causal_process(pc, p * f + (1.0 - p) * g, 1e-7));
    }
  }
}

TEST_CASE("subcausal processes are closed under composition") {
  std::mt19937_64 rng(23);
  for (const auto& td : {classical(3), quantum(2), polygon(5, false)}) {
    ProcessCone pc = make_process_cone(td.system, td.system);
    for (int trial = 0; trial < 10; ++trial) {
      Vec f = random_subcausal_element(pc, rng);
      Vec g = random_subcausal_element(pc, rng);
      Mat composed = pc.to_map_matrix(f) * pc.to_map_matrix(g);
      Vec h = pc.coords_of_map(composed);
      CHECK(pc.cone.contains(h, 1e-7));
      CHECK(is_subcausal_process(pc, h, Ordering::EffectCone, 1e-7));
    }
  }
}

TEST_CASE("subcausal numbers live in the unit interval") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const auto& td : {classical(3), quantum(2), gbit()}) {
    const System& sys = td.system;
    for (int trial = 0; trial < 100; ++trial) {
      Vec raw(sys.dim);
      for (int i = 0; i < sys.dim; ++i) raw[i] = gauss(rng);
      Vec s = sys.state_cone.project(raw);
      double us = sys.unit_effect.dot(s);
      if (us > 1.0) s /= us;  // subcausal state
      for (int i = 0; i < sys.dim; ++i) raw[i] = gauss(rng);
      Vec e = sys.effect_cone.project(raw);
      for (int k = 0; k < 80; ++k) {
        if (sys.effect_cone.contains(sys.unit_effect - e, 1e-10)) break;
        e *= 0.5;  // subcausal effect
      }
      double val = e.dot(s);
      CHECK(val >= -1e-9);
      CHECK(val <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("process cone members map states to positive outputs") {
  std::mt19937_64 rng(41);
  for (const auto& td : {gbit(), polygon(5, false)}) {
    ProcessCone pc = counterfeit_cone(td.system);
    const Mat out_effects = pc.out.dual_state_generators;
    for (int trial = 0; trial < 10; ++trial) {
      Vec x = random_subcausal_element(pc, rng);
      for (Eigen::Index i = 0; i < pc.in.state_generators.cols(); ++i) {
        Vec image = pc.apply(x, pc.in.state_generators.col(i));
        for (Eigen::Index j = 0; j < out_effects.cols(); ++j) {
          CHECK(out_effects.col(j).dot(image) >= -1e-8);
        }
      }
    }
  }
}
