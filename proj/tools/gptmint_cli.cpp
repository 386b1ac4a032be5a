// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "gptmint/gptmint.h"

namespace {

using nlohmann::ordered_json;

int g_log_level = 0;

void log_progress(const std::string& msg) {
  if (g_log_level >= 1) std::cerr << "gptmint: " << msg << "\n";
}

[[noreturn]] void die(gptm_status st) {
  std::cerr << "gptmint: error: " << gptm_last_error() << "\n";
  // 2 for input problems, 3 for solver problems
  int code = (st == GPTM_ERR_SOLVER || st == GPTM_ERR_INTERNAL) ? 3 : 2;
  std::exit(code);
}

void check(gptm_status st) {
  if (st != GPTM_OK) die(st);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "gptmint: error: cannot open '" << path << "'\n";
    std::exit(2);
  }
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

bool looks_like_file(const std::string& ref) {
  if (ref.find(".json") != std::string::npos) return true;
  std::ifstream probe(ref);
  return probe.good();
}

gptm_theory* load_theory(const std::string& ref) {
  gptm_theory* t = nullptr;
  if (looks_like_file(ref)) {
    log_progress("loading theory file " + ref);
    check(gptm_theory_parse_json(read_file(ref).c_str(), &t));
  } else {
    log_progress("constructing builtin theory " + ref);
    check(gptm_theory_create(ref.c_str(), &t));
  }
  return t;
}

gptm_strategy* load_strategy(const gptm_theory* t, const std::string& ref) {
  gptm_strategy* s = nullptr;
  if (ref.rfind("builtin:", 0) == 0) {
    check(gptm_strategy_builtin(t, ref.substr(8).c_str(), &s));
  } else if (ref == "bb84" || ref == "wiesner") {
    check(gptm_strategy_builtin(t, "wiesner", &s));
  } else {
    log_progress("loading strategy file " + ref);
    check(gptm_strategy_parse_json(t, read_file(ref).c_str(), &s));
  }
  return s;
}

std::string build_config(double tol, int max_iter, long long seed,
                         const std::string& method) {
  ordered_json j;
  if (tol > 0) j["tol"] = tol;
  if (max_iter > 0) j["max_iter"] = max_iter;
  if (seed >= 0) j["seed"] = seed;
  if (!method.empty()) j["method"] = method;
  return j.dump();
}

void render_text(const ordered_json& j, double wall_sec, std::ostream& os) {
  os << "command: " << j.value("command", "?") << "\n";
  os << "theory:  " << j["inputs"].value("theory", "?") << "\n";
  if (j.contains("results")) {
    const auto& r = j["results"];
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (it.value().is_object()) {
        os << it.key() << ":\n";
        for (auto f = it.value().begin(); f != it.value().end(); ++f) {
          if (f.value().is_object() || f.value().is_array()) continue;
          os << "  " << f.key() << " = " << f.value().dump() << "\n";
        }
      } else {
        os << it.key() << " = " << it.value().dump() << "\n";
      }
    }
  }
  os << "wall_time_sec = " << wall_sec << "\n";
}

int emit(gptm_report* rep, const std::string& out_path,
         const std::string& format, double wall_sec) {
  std::string text = gptm_report_json(rep);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "gptmint: error: cannot write '" << out_path << "'\n";
      return 2;
    }
    out << text << "\n";
  }
  if (format == "json") {
    std::cout << text << "\n";
  } else {
    render_text(ordered_json::parse(text), wall_sec, std::cout);
  }
  gptm_report_free(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* lvl = std::getenv("GPTMINT_LOG")) {
    g_log_level = std::atoi(lvl);
  }

  CLI::App app{"certified counterfeiting bounds for money schemes in "
               "operational theories"};
  app.require_subcommand(1);

  std::string theory_ref = "quantum:2";
  std::string theory_b_ref;
  std::string strategy_ref = "builtin:wiesner";
  std::string strategy_b_ref = "builtin:wiesner";
  std::string states_ref;
  std::string out_path;
  std::string format = "text";
  std::string method;
  double tol = 0.0;
  int max_iter = 0;
  long long seed = -1;
  bool relaxed = false;
  double delta = 1e-6;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "solver tolerance (eps_abs = eps_rel)");
    cmd->add_option("--max-iter", max_iter, "iteration cap");
    cmd->add_option("--seed", seed, "deterministic seed recorded in reports");
    cmd->add_option("--method", method, "auto|splitting|direct_lp");
    cmd->add_option("--out", out_path, "write the JSON report to this path");
    cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
  };

  auto* solve = app.add_subcommand("solve", "alpha, alpha_tilde, lower bound "
                                            "and duality diagnostics");
  solve->add_option("--theory", theory_ref, "builtin ref or theory file");
  solve->add_option("--strategy", strategy_ref, "builtin:wiesner or file");
  solve->add_flag("--relaxed", relaxed, "compute the relaxed value only");
  add_common(solve);

  auto* broadcast = app.add_subcommand(
      "broadcast", "feasibility of broadcasting the strategy's states");
  broadcast->add_option("--theory", theory_ref, "builtin ref or theory file");
  broadcast->add_option("--states", states_ref,
                        "bb84, builtin:wiesner or strategy file");
  broadcast->add_option("--strategy", strategy_ref, "alias for --states");
  add_common(broadcast);

  auto* vs = app.add_subcommand("vs", "verification sharpness per effect");
  vs->add_option("--theory", theory_ref, "builtin ref or theory file");
  vs->add_option("--strategy", strategy_ref, "builtin:wiesner or file");
  add_common(vs);

  auto* product = app.add_subcommand(
      "product", "two-note product strategy and its certified bound");
  product->add_option("--a", strategy_ref, "first strategy");
  product->add_option("--b", strategy_b_ref, "second strategy");
  product->add_option("--theory-a", theory_ref, "theory of the first");
  product->add_option("--theory-b", theory_b_ref, "theory of the second");
  add_common(product);

  auto* repeat = app.add_subcommand(
      "repeat", "repetitions needed to reach a target security level");
  repeat->add_option("--theory", theory_ref, "builtin ref or theory file");
  repeat->add_option("--strategy", strategy_ref, "builtin:wiesner or file");
  repeat->add_option("--delta", delta, "target counterfeiting probability");
  add_common(repeat);

  CLI11_PARSE(app, argc, argv);

  const std::string cfg = build_config(tol, max_iter, seed, method);
  const auto t0 = std::chrono::steady_clock::now();
  gptm_report* rep = nullptr;

  if (solve->parsed()) {
    gptm_theory* t = load_theory(theory_ref);
    gptm_strategy* s = load_strategy(t, strategy_ref);
    check(gptm_run_solve(t, s, cfg.c_str(), relaxed ? 1 : 0, &rep));
    gptm_strategy_free(s);
    gptm_theory_free(t);
  } else if (broadcast->parsed()) {
    gptm_theory* t = load_theory(theory_ref);
    const std::string ref = states_ref.empty() ? strategy_ref : states_ref;
    gptm_strategy* s = load_strategy(t, ref);
    check(gptm_run_broadcast(t, s, cfg.c_str(), &rep));
    gptm_strategy_free(s);
    gptm_theory_free(t);
  } else if (vs->parsed()) {
    gptm_theory* t = load_theory(theory_ref);
    gptm_strategy* s = load_strategy(t, strategy_ref);
    check(gptm_run_vs(t, s, cfg.c_str(), &rep));
    gptm_strategy_free(s);
    gptm_theory_free(t);
  } else if (product->parsed()) {
    gptm_theory* ta = load_theory(theory_ref);
    gptm_theory* tb =
        load_theory(theory_b_ref.empty() ? theory_ref : theory_b_ref);
    gptm_strategy* sa = load_strategy(ta, strategy_ref);
    gptm_strategy* sb = load_strategy(tb, strategy_b_ref);
    check(gptm_run_product(ta, sa, tb, sb, cfg.c_str(), &rep));
    gptm_strategy_free(sa);
    gptm_strategy_free(sb);
    gptm_theory_free(ta);
    gptm_theory_free(tb);
  } else if (repeat->parsed()) {
    gptm_theory* t = load_theory(theory_ref);
    gptm_strategy* s = load_strategy(t, strategy_ref);
    check(gptm_run_repeat(t, s, delta, cfg.c_str(), &rep));
    gptm_strategy_free(s);
    gptm_theory_free(t);
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  log_progress("done");
  return emit(rep, out_path, format, wall);
}
