// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <cstring>
#include <json.hpp>
#include <string>

#include "gptmint/gptmint.h"

namespace {

struct TheoryHandle {
  gptm_theory* t = nullptr;
  explicit TheoryHandle(const char* ref) {
    REQUIRE(gptm_theory_create(ref, &t) == GPTM_OK);
  }
  ~TheoryHandle() { gptm_theory_free(t); }
};

struct StrategyHandle {
  gptm_strategy* s = nullptr;
  StrategyHandle(const gptm_theory* t, const char* name) {
    REQUIRE(gptm_strategy_builtin(t, name, &s) == GPTM_OK);
  }
  ~StrategyHandle() { gptm_strategy_free(s); }
};

}  // namespace

TEST_CASE("theory handles") {
  TheoryHandle t("quantum:2");
  CHECK(std::string(gptm_theory_name(t.t)) == "quantum:2");

  gptm_theory* bad = nullptr;
  CHECK(gptm_theory_create("hexagonium", &bad) == GPTM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gptm_last_error()).find("hexagonium") !=
        std::string::npos);
  CHECK(gptm_theory_create(nullptr, &bad) == GPTM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("solve run on a classical ensemble") {
  TheoryHandle t("classical:2");
  StrategyHandle s(t.t, "wiesner");
  size_t items = 0;
  CHECK(gptm_strategy_item_count(s.s, &items) == GPTM_OK);
  CHECK(items == 2);

  gptm_report* rep = nullptr;
  REQUIRE(gptm_run_solve(t.t, s.s, nullptr, 0, &rep) == GPTM_OK);
  double alpha = 0.0;
  CHECK(gptm_report_get_number(rep, "results.alpha.value", &alpha) == GPTM_OK);
  CHECK(alpha == doctest::Approx(1.0).epsilon(1e-6));
  auto j = nlohmann::ordered_json::parse(gptm_report_json(rep));
  CHECK(j["results"].contains("warning"));  // perfect counterfeiting
  CHECK(j["schema_version"] == 1);
  CHECK(j["inputs"].contains("theory_digest"));
  gptm_report_free(rep);
}

TEST_CASE("reports are byte-identical across runs") {
  TheoryHandle t("quantum:2");
  StrategyHandle s(t.t, "wiesner");
  gptm_report *a = nullptr, *b = nullptr;
  const char* cfg = R"({"tol":"1e-8","seed":7})";
  REQUIRE(gptm_run_solve(t.t, s.s, cfg, 0, &a) == GPTM_OK);
  REQUIRE(gptm_run_solve(t.t, s.s, cfg, 0, &b) == GPTM_OK);
  CHECK(std::strcmp(gptm_report_json(a), gptm_report_json(b)) == 0);
  double alpha = 0.0;
  CHECK(gptm_report_get_number(a, "results.alpha.value", &alpha) == GPTM_OK);
  CHECK(alpha == doctest::Approx(0.75).epsilon(1e-4));
  double certified = 0.0;
  CHECK(gptm_report_get_number(a, "results.alpha.certified", &certified) ==
        GPTM_ERR_VALIDATION);  // boolean, not a number
  gptm_report_free(a);
  gptm_report_free(b);
}

TEST_CASE("sharpness, broadcast, repetition and product runs") {
  TheoryHandle q("quantum:2");
  StrategyHandle sq(q.t, "wiesner");

  gptm_report* vs = nullptr;
  REQUIRE(gptm_run_vs(q.t, sq.s, nullptr, &vs) == GPTM_OK);
  auto jv = nlohmann::ordered_json::parse(gptm_report_json(vs));
  CHECK(jv["results"]["all_sharp"] == true);
  gptm_report_free(vs);

  gptm_report* br = nullptr;
  REQUIRE(gptm_run_broadcast(q.t, sq.s, nullptr, &br) == GPTM_OK);
  auto jb = nlohmann::ordered_json::parse(gptm_report_json(br));
  CHECK(jb["results"]["feasible"] == false);
  gptm_report_free(br);

  gptm_report* rp = nullptr;
  REQUIRE(gptm_run_repeat(q.t, sq.s, 1e-6, nullptr, &rp) == GPTM_OK);
  double n = 0.0;
  CHECK(gptm_report_get_number(rp, "results.n", &n) == GPTM_OK);
  CHECK(n == 49.0);
  double bound = 0.0;
  CHECK(gptm_report_get_number(rp, "results.certified_bound", &bound) ==
        GPTM_OK);
  CHECK(bound <= 1e-6);
  gptm_report_free(rp);

  TheoryHandle c("classical:2");
  StrategyHandle sc(c.t, "wiesner");
  gptm_report* pr = nullptr;
  REQUIRE(gptm_run_product(c.t, sc.s, c.t, sc.s, nullptr, &pr) == GPTM_OK);
  auto jp = nlohmann::ordered_json::parse(gptm_report_json(pr));
  CHECK(jp["results"]["bound_holds"] == true);
  gptm_report_free(pr);

  // classical ensembles admit no amplification: solver-level validation error
  gptm_report* bad = nullptr;
  CHECK(gptm_run_repeat(c.t, sc.s, 1e-6, nullptr, &bad) ==
        GPTM_ERR_VALIDATION);
  CHECK(std::string(gptm_last_error()).find("no security amplification") !=
        std::string::npos);
}

TEST_CASE("validation errors carry the violated invariant") {
  TheoryHandle t("classical:2");
  gptm_strategy* s = nullptr;
  const char* doc = R"({"strategy":{"items":[
    {"p":"0.9","state":["1","0"],"effect":["1","0"]},
    {"p":"0.9","state":["0","1"],"effect":["0","1"]}]}})";
  CHECK(gptm_strategy_parse_json(t.t, doc, &s) == GPTM_ERR_VALIDATION);
  CHECK(std::string(gptm_last_error()).find("sum to 1") != std::string::npos);

  const char* cfgbad = R"({"method":"sorcery"})";
  gptm_report* rep = nullptr;
  StrategyHandle ok(t.t, "wiesner");
  CHECK(gptm_run_solve(t.t, ok.s, cfgbad, 0, &rep) == GPTM_ERR_VALIDATION);
}
