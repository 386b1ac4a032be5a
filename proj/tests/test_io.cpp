// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <random>

#include "core/serialize.hpp"

using namespace gptmint;

TEST_CASE("decimal text round-trips doubles exactly") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    double v = g(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    std::string s = format_real(v);
    CHECK(parse_real(Json(s)) == v);
  }
  CHECK(format_real(0.75) == "0.75");
  CHECK(parse_real(Json("1e-06")) == 1e-6);
  CHECK(parse_real(Json(0.5)) == 0.5);
  CHECK_THROWS_AS(parse_real(Json("12x")), Error);
  CHECK_THROWS_AS(parse_real(Json(true)), Error);
}

TEST_CASE("cones round-trip through their schema") {
  Mat tri(2, 3);
  tri << 1.0, 1.0, 1.0, -0.8, 0.1, 0.9;
  Mat tri_normals(2, 2);
  tri_normals << 0.8, 0.9, 1.0, -1.0;
  std::vector<Cone> cones = {
      Cone::orthant(4),
      Cone::psd(3),
      Cone::polyhedral_v(tri),
      Cone::polyhedral_vh(tri, tri_normals),
      Cone::polyhedral_h(tri),
      Cone::zero(2),
      Cone::freespace(2),
      Cone::product({Cone::orthant(2), Cone::psd(2)}),
      Cone::tensor_min(Cone::orthant(2), Cone::orthant(3)),
      Cone::tensor_max(Cone::orthant(2), Cone::orthant(3)),
      Cone::dual_of(Cone::polyhedral_h(tri)),
  };
  for (const Cone& c : cones) {
    Json j = cone_to_json(c);
    Cone back = cone_from_json(j);
    CHECK(back.kind() == c.kind());
    CHECK(back.dim() == c.dim());
    // identical representation serialises identically
    CHECK(cone_to_json(back).dump() == j.dump());
  }
  CHECK_THROWS_AS(cone_from_json(Json::parse(R"({"variant":"moebius"})")),
                  Error);
}

TEST_CASE("builtin theories serialise by reference") {
  TheoryDescriptor t = polygon(5, true);
  Json j = theory_to_json(t);
  CHECK(j.contains("builtin"));
  TheoryDescriptor back = theory_from_json(j);
  CHECK(back.name == t.name);
  CHECK(back.system.dim == t.system.dim);
  CHECK_FALSE(back.no_restriction);
}

TEST_CASE("custom polyhedral theories round-trip and validate") {
  TheoryDescriptor src = gbit();
  Json j;
  j["name"] = "custom";
  j["dim"] = 3;
  j["state_cone"] = cone_to_json(src.system.state_cone);
  j["effect_cone"] = cone_to_json(src.system.effect_cone);
  j["unit_effect"] = vec_to_json(src.system.unit_effect);
  j["dual_state_generators"] = mat_to_json(src.system.dual_state_generators);
  TheoryDescriptor t = theory_from_json(j);
  CHECK(t.system.dim == 3);
  CHECK(t.no_restriction);
  CHECK(t.system.unit_margin > 0.0);

  // a unit effect on the boundary is rejected at load time
  j["unit_effect"] = vec_to_json(src.system.dual_state_generators.col(0));
  CHECK_THROWS_AS(theory_from_json(j), Error);
}

TEST_CASE("strategies round-trip bit-exactly") {
  TheoryDescriptor t = quantum(2);
  BankStrategy s = wiesner_strategy(t);
  Json j = strategy_to_json(s);
  BankStrategy back = strategy_from_json(j, t.system);
  REQUIRE(back.items.size() == s.items.size());
  for (size_t i = 0; i < s.items.size(); ++i) {
    CHECK(back.items[i].p == s.items[i].p);
    CHECK((back.items[i].state - s.items[i].state).norm() == 0.0);
    CHECK((back.items[i].effect - s.items[i].effect).norm() == 0.0);
  }
  CHECK(strategy_to_json(back).dump() == j.dump());

  // malformed probabilities are rejected with the normalisation message
  Json bad = j;
  bad["items"][0]["p"] = "0.9";
  CHECK_THROWS_WITH_AS(strategy_from_json(bad, t.system),
                       doctest::Contains("sum to 1"), Error);
}

TEST_CASE("config parsing") {
  SolverConfig c = config_from_json(Json::parse(
      R"({"eps_abs":"1e-9","max_iter":77,"scaling":false,"seed":5,"method":"splitting"})"));
  CHECK(c.eps_abs == 1e-9);
  CHECK(c.max_iter == 77);
  CHECK_FALSE(c.scaling);
  CHECK(c.seed == 5);
  CHECK(c.method == SolveMethod::Splitting);

  SolverConfig tol = config_from_json(Json::parse(R"({"tol":"1e-5"})"));
  CHECK(tol.eps_abs == 1e-5);
  CHECK(tol.eps_rel == 1e-5);

  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"method":"magic"})")), Error);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"eps_abs":"0"})")), Error);
}

TEST_CASE("single-document schema") {
  std::string doc = R"({
    "schema_version": 1,
    "theory": {"builtin": "classical:2"},
    "strategy": {"items": [
      {"p": "0.5", "state": ["1", "0"], "effect": ["1", "0"]},
      {"p": "0.5", "state": ["0", "1"], "effect": ["0", "1"]}
    ]},
    "config": {"max_iter": 123}
  })";
  Document d = parse_document(doc);
  REQUIRE(d.theory.has_value());
  REQUIRE(d.strategy.has_value());
  CHECK(d.has_config);
  CHECK(d.config.max_iter == 123);
  CHECK(d.strategy->items.size() == 2);

  CHECK_THROWS_AS(parse_document("{not json"), Error);
  CHECK_THROWS_AS(parse_document(R"({"schema_version": 99})"), Error);
  // a strategy without a theory context is rejected
  CHECK_THROWS_AS(parse_document(R"({"strategy": {"items": []}})"), Error);
}

TEST_CASE("digests are stable") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("abc") == 0xe71fa2190541574bull);
  CHECK(digest_hex("abc") == "e71fa2190541574b");
  Json a = theory_to_json(quantum(2));
  Json b = theory_to_json(quantum(2));
  CHECK(digest_hex(a.dump()) == digest_hex(b.dump()));
}
