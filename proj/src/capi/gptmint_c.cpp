// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "gptmint/gptmint.h"

#include <string>

#include "core/serialize.hpp"

using namespace gptmint;

struct gptm_theory {
  TheoryDescriptor t;
};

struct gptm_strategy {
  BankStrategy s;
  Json canonical;  // serialised form used for digests
};

struct gptm_report {
  Json json;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

gptm_status set_error(const Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case ErrorCode::InvalidArgument: return GPTM_ERR_INVALID_ARGUMENT;
    case ErrorCode::Validation: return GPTM_ERR_VALIDATION;
    case ErrorCode::Unsupported: return GPTM_ERR_UNSUPPORTED;
    case ErrorCode::SolverFailure: return GPTM_ERR_SOLVER;
    case ErrorCode::Internal: return GPTM_ERR_INTERNAL;
  }
  return GPTM_ERR_INTERNAL;
}

template <typename F>
gptm_status guarded(F&& f) {
  try {
    f();
    return GPTM_OK;
  } catch (const Error& e) {
    return set_error(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GPTM_ERR_INTERNAL;
  }
}

SolverConfig parse_config(const char* config_json) {
  if (config_json == nullptr || std::string(config_json).empty())
    return SolverConfig{};
  Json j = Json::parse(config_json, nullptr, false);
  require(!j.is_discarded(), ErrorCode::Validation,
          "config: malformed JSON object");
  return config_from_json(j);
}

Json report_header(const char* cmd, const gptm_theory* t,
                   const gptm_strategy* s, const SolverConfig& cfg) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = {{"name", "gptmint"}, {"version", gptm_version()}};
  j["command"] = cmd;
  Json inputs;
  inputs["theory"] = t->t.name;
  inputs["theory_digest"] = digest_hex(theory_to_json(t->t).dump());
  if (s != nullptr) {
    inputs["strategy_digest"] = digest_hex(s->canonical.dump());
    inputs["items"] = s->s.items.size();
  }
  j["inputs"] = std::move(inputs);
  j["config"] = config_to_json(cfg);
  return j;
}

Json alpha_to_json(const AlphaResult& r, const ConicProgram& p) {
  Json j;
  j["value"] = format_real(r.value);
  j["dual_value"] = format_real(r.dual_value);
  j["gap"] = format_real(r.gap);
  std::string why;
  j["certified"] = verify_solution(p, r.raw, 1e-5, &why);
  j["solver"] = solution_to_json(r.raw);
  return j;
}

gptm_report* finish(Json j) {
  auto* rep = new gptm_report;
  rep->json = std::move(j);
  rep->text = rep->json.dump(2);
  return rep;
}

}  // namespace

extern "C" {

const char* gptm_version(void) { return "0.1.0"; }

const char* gptm_last_error(void) { return g_last_error.c_str(); }

gptm_status gptm_theory_create(const char* ref, gptm_theory** out) {
  if (ref == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto* t = new gptm_theory{theory_from_ref(ref)};
    *out = t;
  });
}

gptm_status gptm_theory_parse_json(const char* json, gptm_theory** out) {
  if (json == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    Document doc = parse_document(json);
    require(doc.theory.has_value(), ErrorCode::Validation,
            "document does not contain a theory");
    *out = new gptm_theory{*doc.theory};
  });
}

const char* gptm_theory_name(const gptm_theory* t) {
  return t ? t->t.name.c_str() : "";
}

void gptm_theory_free(gptm_theory* t) { delete t; }

gptm_status gptm_strategy_builtin(const gptm_theory* t, const char* name,
                                  gptm_strategy** out) {
  if (t == nullptr || name == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::string n(name);
    require(n == "wiesner" || n == "bb84", ErrorCode::InvalidArgument,
            "unknown builtin strategy '" + n + "'");
    auto* s = new gptm_strategy;
    s->s = wiesner_strategy(t->t);
    s->canonical = strategy_to_json(s->s);
    *out = s;
  });
}

gptm_status gptm_strategy_parse_json(const gptm_theory* t, const char* json,
                                     gptm_strategy** out) {
  if (t == nullptr || json == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    Document doc = parse_document(json, &t->t);
    require(doc.strategy.has_value(), ErrorCode::Validation,
            "document does not contain a strategy");
    auto* s = new gptm_strategy;
    s->s = *doc.strategy;
    s->canonical = strategy_to_json(s->s);
    *out = s;
  });
}

gptm_status gptm_strategy_item_count(const gptm_strategy* s, size_t* out) {
  if (s == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  *out = s->s.items.size();
  return GPTM_OK;
}

void gptm_strategy_free(gptm_strategy* s) { delete s; }

gptm_status gptm_run_solve(const gptm_theory* t, const gptm_strategy* s,
                           const char* config_json, int relaxed_only,
                           gptm_report** out) {
  if (t == nullptr || s == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    SolverConfig cfg = parse_config(config_json);
    ProcessCone pc = counterfeit_cone(t->t.system);
    Json j = report_header("solve", t, s, cfg);
    Json results;

    TrivialBound tb = trivial_lower_bound(s->s, pc);
    results["trivial_lower_bound"] = format_real(tb.value);

    AlphaResult at = alpha_tilde(s->s, pc, cfg);
    {
      ConicProgram p = counterfeit_program(s->s, pc, true);
      results["alpha_tilde"] = alpha_to_json(at, p);
    }
    if (!relaxed_only) {
      AlphaResult a = alpha(s->s, pc, cfg);
      ConicProgram p = counterfeit_program(s->s, pc, false);
      results["alpha"] = alpha_to_json(a, p);
      results["slater"] = slater_to_json(check_slater(p, 1e-6));
      if (a.value >= 1.0 - 1e-6)
        results["warning"] = "perfect counterfeiting: alpha equals one";
    } else {
      if (at.value >= 1.0 - 1e-6)
        results["warning"] = "perfect counterfeiting: alpha_tilde equals one";
    }
    j["results"] = std::move(results);
    *out = finish(std::move(j));
  });
}

gptm_status gptm_run_broadcast(const gptm_theory* t, const gptm_strategy* s,
                               const char* config_json, gptm_report** out) {
  if (t == nullptr || s == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    SolverConfig cfg = parse_config(config_json);
    ProcessCone pc = counterfeit_cone(t->t.system);
    std::vector<Vec> states;
    for (const auto& it : s->s.items) states.push_back(it.state);
    BroadcastReport br = check_broadcastable(states, pc, cfg);
    Json j = report_header("broadcast", t, s, cfg);
    Json results;
    results["feasible"] = br.feasible;
    results["solver"] = solution_to_json(br.raw);
    if (!br.feasible) results["certificate"] = vec_to_json(br.certificate);
    j["results"] = std::move(results);
    *out = finish(std::move(j));
  });
}

gptm_status gptm_run_vs(const gptm_theory* t, const gptm_strategy* s,
                        const char* config_json, gptm_report** out) {
  if (t == nullptr || s == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    SolverConfig cfg = parse_config(config_json);
    auto vs = check_VS(s->s, 1e-5, cfg);
    Json j = report_header("vs", t, s, cfg);
    Json results;
    Json table = Json::array();
    bool all = true;
    for (bool v : vs) {
      table.push_back(v);
      all = all && v;
    }
    results["per_effect"] = std::move(table);
    results["all_sharp"] = all;
    j["results"] = std::move(results);
    *out = finish(std::move(j));
  });
}

gptm_status gptm_run_product(const gptm_theory* ta, const gptm_strategy* sa,
                             const gptm_theory* tb, const gptm_strategy* sb,
                             const char* config_json, gptm_report** out) {
  if (ta == nullptr || sa == nullptr || tb == nullptr || sb == nullptr ||
      out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    SolverConfig cfg = parse_config(config_json);
    ProductBoundReport pr = verify_product_bound(sa->s, sb->s, cfg);
    Json j = report_header("product", ta, sa, cfg);
    j["inputs"]["theory_b"] = tb->t.name;
    Json results;
    results["alpha_product"] = format_real(pr.alpha_ab);
    results["alpha_tilde_a"] = format_real(pr.alpha_tilde_a);
    results["alpha_tilde_b"] = format_real(pr.alpha_tilde_b);
    results["bound"] = format_real(pr.alpha_tilde_a * pr.alpha_tilde_b);
    results["bound_holds"] = pr.bound_holds;
    results["composition_subcausal"] = pr.composition_subcausal;
    j["results"] = std::move(results);
    *out = finish(std::move(j));
  });
}

gptm_status gptm_run_repeat(const gptm_theory* t, const gptm_strategy* s,
                            double delta, const char* config_json,
                            gptm_report** out) {
  if (t == nullptr || s == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    SolverConfig cfg = parse_config(config_json);
    RepetitionResult rr = repetition_security(s->s, delta, cfg);
    Json j = report_header("repeat", t, s, cfg);
    Json results;
    results["delta"] = format_real(delta);
    results["n"] = rr.n;
    results["alpha_tilde"] = format_real(rr.alpha_tilde);
    results["certified_bound"] = format_real(rr.bound);
    j["results"] = std::move(results);
    *out = finish(std::move(j));
  });
}

const char* gptm_report_json(const gptm_report* r) {
  return r ? r->text.c_str() : "";
}

gptm_status gptm_report_get_number(const gptm_report* r, const char* path,
                                   double* out) {
  if (r == nullptr || path == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return GPTM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const Json* cur = &r->json;
    std::string p(path), key;
    size_t pos = 0;
    while (pos <= p.size()) {
      size_t dot = p.find('.', pos);
      key = p.substr(pos, dot == std::string::npos ? std::string::npos
                                                   : dot - pos);
      require(cur->is_object() && cur->contains(key), ErrorCode::InvalidArgument,
              "report: no entry at path '" + p + "'");
      cur = &cur->at(key);
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
    *out = parse_real(*cur);
  });
}

void gptm_report_free(gptm_report* r) { delete r; }

}  // extern "C"
