// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "core/theories.hpp"

using namespace gptmint;

TEST_CASE("classical theory") {
  TheoryDescriptor t = classical(2);
  CHECK(t.no_restriction);
  Vec vertex(2);
  vertex << 1.0, 0.0;
  CHECK(t.system.unit_effect.dot(vertex) == doctest::Approx(1.0));
  CHECK(is_causal_state(t.system, vertex));
  CHECK_THROWS_AS(classical(1), Error);
}

TEST_CASE("quantum theory") {
  TheoryDescriptor t = quantum(2);
  CHECK(t.no_restriction);
  // causal states are exactly the unit-trace psd elements; the maximally
  // mixed state sits in the interior
  Vec mixed = t.system.herm->coords(0.5 * CMat::Identity(2, 2));
  CHECK(is_causal_state(t.system, mixed));
  CHECK(t.system.state_cone.strictly_contains(mixed, 0.4));
  CHECK(t.system.dim == 4);
  CHECK(quantum(3).system.dim == 9);
  CHECK_THROWS_AS(quantum(1), Error);
}

TEST_CASE("polygon and gbit geometry") {
  TheoryDescriptor g = gbit();
  CHECK(g.no_restriction);
  CHECK(g.system.state_generators.cols() == 4);

  TheoryDescriptor p4 = polygon(4);
  CHECK(p4.no_restriction);

  // polygon(4) matches the gbit state space up to the linear isomorphism
  // that rotates the disc coordinates by a quarter step and rescales
  const double scale = std::sqrt(2.0) / std::pow(2.0, 0.25);
  const double c = std::cos(std::numbers::pi / 4);
  const double s = std::sin(std::numbers::pi / 4);
  auto iso = [&](const Vec& v) {
    Vec w(3);
    w << v[0], scale * (c * v[1] - s * v[2]), scale * (s * v[1] + c * v[2]);
    return w;
  };
  for (int i = 0; i < 4; ++i) {
    Vec mapped = iso(p4.system.state_generators.col(i));
    bool hits = false;
    for (int j = 0; j < 4; ++j)
      if ((mapped - g.system.state_generators.col(j)).norm() < 1e-12)
        hits = true;
    CHECK(hits);
  }
  // membership agreement on a grid
  for (double a = -1.5; a <= 1.51; a += 0.5) {
    for (double x = -2.0; x <= 2.01; x += 0.5) {
      for (double y = -2.0; y <= 2.01; y += 0.5) {
        Vec v(3);
        v << a, x, y;
        bool in_poly = p4.system.state_cone.contains(v, 1e-9);
        bool in_gbit = g.system.state_cone.contains(iso(v), 1e-9);
        CHECK(in_poly == in_gbit);
      }
    }
  }
}

TEST_CASE("restricted polygon breaks the duality between the cones") {
  TheoryDescriptor t = polygon(5, true);
  CHECK_FALSE(t.no_restriction);
  CHECK(t.system.restricted);
  // a dual-cone generator stays outside the restricted effect cone
  bool some_outside = false;
  for (Eigen::Index j = 0; j < t.system.dual_state_generators.cols(); ++j)
    if (!t.system.effect_cone.contains(t.system.dual_state_generators.col(j),
                                       1e-7))
      some_outside = true;
  CHECK(some_outside);
  CHECK(polygon(5, false).no_restriction);
}

TEST_CASE("unit effects are interior with a solid margin") {
  for (const auto& td : {classical(2), classical(3), quantum(2), quantum(3),
                         gbit(), polygon(4), polygon(5), polygon(6),
                         polygon(5, true)}) {
    CHECK(td.system.effect_cone.strictly_contains(td.system.unit_effect, 1e-3));
    CHECK(td.system.unit_margin >= 1e-3);
  }
}

TEST_CASE("canonical note ensembles") {
  BankStrategy q = wiesner_strategy(quantum(2));
  CHECK(q.items.size() == 4);
  for (const auto& it : q.items) CHECK(it.p == doctest::Approx(0.25));
  // conjugate-basis overlap pattern: squared overlaps are 1, 0 or 1/2
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      double ov = q.items[i].state.dot(q.items[j].state);
      if (i == j) {
        CHECK(ov == doctest::Approx(1.0));
      } else {
        CHECK((std::abs(ov) < 1e-12 || std::abs(ov - 0.5) < 1e-12));
      }
    }

  BankStrategy c = wiesner_strategy(classical(2));
  CHECK(c.items.size() == 2);

  BankStrategy g = wiesner_strategy(gbit());
  CHECK(g.items.size() == 4);
  for (const auto& it : g.items)
    CHECK(it.effect.dot(it.state) == doctest::Approx(1.0));

  CHECK(wiesner_strategy(polygon(6)).items.size() == 6);
  CHECK_THROWS_AS(wiesner_strategy(polygon(5)), Error);  // odd polygon
}

TEST_CASE("theory references parse") {
  CHECK(theory_from_ref("classical:3").system.dim == 3);
  CHECK(theory_from_ref("quantum:2").system.dim == 4);
  CHECK(theory_from_ref("gbit").name == "gbit");
  CHECK(theory_from_ref("polygon:5").name == "polygon:5");
  CHECK(theory_from_ref("polygon:6:restricted").system.restricted);
  CHECK_THROWS_AS(theory_from_ref("octonion:8"), Error);
  CHECK_THROWS_AS(theory_from_ref("polygon"), Error);
}

TEST_CASE("causal state bases span") {
  for (const auto& td : {classical(3), quantum(2), gbit(), polygon(5)}) {
    auto basis = causal_state_basis(td);
    Mat m(td.system.dim, static_cast<Eigen::Index>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j) {
      CHECK(is_causal_state(td.system, basis[j], 1e-9));
      m.col(static_cast<Eigen::Index>(j)) = basis[j];
    }
    Eigen::ColPivHouseholderQR<Mat> qr(m);
    qr.setThreshold(1e-10);
    CHECK(qr.rank() == td.system.dim);
  }
}

TEST_CASE("random strategies are valid and seeded deterministically") {
  std::mt19937_64 rng(4242);
  for (const auto& td : {classical(3), quantum(2), gbit(), polygon(5)}) {
    for (int k = 0; k < 5; ++k) {
      BankStrategy s = random_strategy(td, rng);
      CHECK(s.items.size() >= 1);
      validate_strategy(s);  // throws on violation
    }
  }
  std::mt19937_64 r1(7), r2(7);
  BankStrategy a = random_strategy(gbit(), r1);
  BankStrategy b = random_strategy(gbit(), r2);
  REQUIRE(a.items.size() == b.items.size());
  for (size_t i = 0; i < a.items.size(); ++i) {
    CHECK(a.items[i].p == b.items[i].p);
    CHECK((a.items[i].state - b.items[i].state).norm() == 0.0);
  }
}
