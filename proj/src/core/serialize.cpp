// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#include "core/serialize.hpp"

#include <cstdio>

namespace gptmint {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_real(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      size_t pos = 0;
      double v = std::stod(s, &pos);
      require(pos == s.size(), ErrorCode::Validation,
              "malformed real number '" + s + "'");
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::Validation, "malformed real number '" + s + "'");
    }
  }
  fail(ErrorCode::Validation, "expected a real number");
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_real(v[i]));
  return out;
}

Vec vec_from_json(const Json& j) {
  require(j.is_array(), ErrorCode::Validation, "expected a vector array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& e : j) v[i++] = parse_real(e);
  return v;
}

Json mat_to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(vec_to_json(m.col(c)));
  return out;
}

Mat mat_from_json(const Json& j, int rows) {
  require(j.is_array(), ErrorCode::Validation, "expected a list of columns");
  Mat m(rows, static_cast<Eigen::Index>(j.size()));
  Eigen::Index c = 0;
  for (const auto& col : j) {
    Vec v = vec_from_json(col);
    require(v.size() == rows, ErrorCode::Validation,
            "column dimension mismatch");
    m.col(c++) = v;
  }
  return m;
}

Json cone_to_json(const Cone& c) {
  Json j;
  switch (c.kind()) {
    case ConeKind::Orthant:
      j["variant"] = "orthant";
      j["dim"] = c.dim();
      return j;
    case ConeKind::Psd: {
      j["variant"] = "psd";
      j["d"] = c.herm().matrix_dim();
      return j;
    }
    case ConeKind::PolyV: {
      j["variant"] = "polyhedral_v";
      j["dim"] = c.dim();
      j["generators"] = mat_to_json(c.vectors());
      Cone d = c.dual();
      if (d.kind() == ConeKind::PolyV)  // dual-aware representation
        j["normals"] = mat_to_json(d.vectors());
      return j;
    }
    case ConeKind::PolyH:
      j["variant"] = "polyhedral_h";
      j["dim"] = c.dim();
      j["normals"] = mat_to_json(c.vectors());
      return j;
    case ConeKind::Product: {
      j["variant"] = "product";
      Json fs = Json::array();
      for (const auto& f : c.factors()) fs.push_back(cone_to_json(f));
      j["factors"] = std::move(fs);
      return j;
    }
    case ConeKind::TensorMin:
    case ConeKind::TensorMax:
      j["variant"] = c.kind() == ConeKind::TensorMin ? "tensor_min" : "tensor_max";
      j["a"] = cone_to_json(c.factors()[0]);
      j["b"] = cone_to_json(c.factors()[1]);
      return j;
    case ConeKind::DualOf:
      j["variant"] = "dual_of";
      j["inner"] = cone_to_json(c.inner());
      return j;
  }
  fail(ErrorCode::Internal, "unreachable");
}

Cone cone_from_json(const Json& j) {
  require(j.is_object() && j.contains("variant"), ErrorCode::Validation,
          "cone: missing variant tag");
  const std::string v = j.at("variant").get<std::string>();
  if (v == "orthant") return Cone::orthant(j.at("dim").get<int>());
  if (v == "psd") return Cone::psd(j.at("d").get<int>());
  if (v == "polyhedral_v") {
    int dim = j.at("dim").get<int>();
    Mat gens = mat_from_json(j.at("generators"), dim);
    if (j.contains("normals"))
      return Cone::polyhedral_vh(std::move(gens),
                                 mat_from_json(j.at("normals"), dim));
    return Cone::polyhedral_v(std::move(gens), dim);
  }
  if (v == "polyhedral_h") {
    int dim = j.at("dim").get<int>();
    return Cone::polyhedral_h(mat_from_json(j.at("normals"), dim), dim);
  }
  if (v == "product") {
    std::vector<Cone> fs;
    for (const auto& f : j.at("factors")) fs.push_back(cone_from_json(f));
    return Cone::product(std::move(fs));
  }
  if (v == "tensor_min")
    return Cone::tensor_min(cone_from_json(j.at("a")), cone_from_json(j.at("b")));
  if (v == "tensor_max")
    return Cone::tensor_max(cone_from_json(j.at("a")), cone_from_json(j.at("b")));
  if (v == "dual_of") return Cone::dual_of(cone_from_json(j.at("inner")));
  fail(ErrorCode::Validation, "cone: unknown variant '" + v + "'");
}

Json theory_to_json(const TheoryDescriptor& t) {
  Json j;
  if (t.name.rfind("custom", 0) != 0) {
    j["builtin"] = t.name;
    return j;
  }
  j["name"] = "custom";
  j["dim"] = t.system.dim;
  j["state_cone"] = cone_to_json(t.system.state_cone);
  j["effect_cone"] = cone_to_json(t.system.effect_cone);
  j["unit_effect"] = vec_to_json(t.system.unit_effect);
  j["dual_state_generators"] = mat_to_json(t.system.dual_state_generators);
  j["restricted"] = t.system.restricted;
  return j;
}

TheoryDescriptor theory_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::Validation, "theory: expected an object");
  if (j.contains("builtin"))
    return theory_from_ref(j.at("builtin").get<std::string>());
  require(j.contains("name") && j.at("name") == "custom", ErrorCode::Validation,
          "theory: expected 'builtin' reference or a custom definition");
  TheoryDescriptor t;
  t.name = "custom";
  System& s = t.system;
  s.label = "custom";
  s.kind = TheoryKind::Polyhedral;
  s.dim = j.at("dim").get<int>();
  s.state_cone = cone_from_json(j.at("state_cone"));
  s.effect_cone = cone_from_json(j.at("effect_cone"));
  s.unit_effect = vec_from_json(j.at("unit_effect"));
  require(s.state_cone.has_complete_generators(), ErrorCode::Validation,
          "custom theory: the state cone needs complete generators");
  s.state_generators = s.state_cone.generators();
  s.dual_state_generators = mat_from_json(j.at("dual_state_generators"), s.dim);
  s.restricted = j.value("restricted", false);
  validate_system(s);
  try {
    t.no_restriction = true;
    for (Eigen::Index c = 0; c < s.dual_state_generators.cols(); ++c)
      if (!s.effect_cone.contains(s.dual_state_generators.col(c), 1e-9))
        t.no_restriction = false;
  } catch (const Error&) {
    t.no_restriction = false;
  }
  return t;
}

Json strategy_to_json(const BankStrategy& s) {
  Json j;
  Json items = Json::array();
  for (const auto& it : s.items) {
    Json item;
    item["p"] = format_real(it.p);
    item["state"] = vec_to_json(it.state);
    item["effect"] = vec_to_json(it.effect);
    items.push_back(std::move(item));
  }
  j["items"] = std::move(items);
  return j;
}

BankStrategy strategy_from_json(const Json& j, const System& sys) {
  require(j.is_object() && j.contains("items"), ErrorCode::Validation,
          "strategy: missing items list");
  BankStrategy s;
  s.system = sys;
  for (const auto& item : j.at("items")) {
    BankStrategy::Item it;
    it.p = parse_real(item.at("p"));
    it.state = vec_from_json(item.at("state"));
    it.effect = vec_from_json(item.at("effect"));
    s.items.push_back(std::move(it));
  }
  validate_strategy(s);
  return s;
}

Json config_to_json(const SolverConfig& c) {
  Json j;
  j["eps_abs"] = format_real(c.eps_abs);
  j["eps_rel"] = format_real(c.eps_rel);
  j["max_iter"] = c.max_iter;
  j["scaling"] = c.scaling;
  j["seed"] = c.seed;
  switch (c.method) {
    case SolveMethod::Auto: j["method"] = "auto"; break;
    case SolveMethod::Splitting: j["method"] = "splitting"; break;
    case SolveMethod::DirectLp: j["method"] = "direct_lp"; break;
  }
  return j;
}

SolverConfig config_from_json(const Json& j) {
  SolverConfig c;
  if (!j.is_object()) return c;
  if (j.contains("eps_abs")) c.eps_abs = parse_real(j.at("eps_abs"));
  if (j.contains("eps_rel")) c.eps_rel = parse_real(j.at("eps_rel"));
  if (j.contains("tol")) {
    c.eps_abs = parse_real(j.at("tol"));
    c.eps_rel = c.eps_abs;
  }
  if (j.contains("max_iter")) c.max_iter = j.at("max_iter").get<int>();
  if (j.contains("scaling")) c.scaling = j.at("scaling").get<bool>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("method")) {
    const std::string m = j.at("method").get<std::string>();
    if (m == "auto") c.method = SolveMethod::Auto;
    else if (m == "splitting") c.method = SolveMethod::Splitting;
    else if (m == "direct_lp") c.method = SolveMethod::DirectLp;
    else fail(ErrorCode::Validation, "config: unknown method '" + m + "'");
  }
  c.validate();
  return c;
}

Document parse_document(const std::string& text,
                        const TheoryDescriptor* theory_ctx) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::Validation, std::string("malformed JSON document: ") + e.what());
  }
  require(j.is_object(), ErrorCode::Validation, "document: expected an object");
  if (j.contains("schema_version")) {
    require(j.at("schema_version").get<int>() == kSchemaVersion,
            ErrorCode::Validation, "document: unsupported schema_version");
  }
  Document doc;
  if (j.contains("theory")) doc.theory = theory_from_json(j.at("theory"));
  const TheoryDescriptor* ctx = doc.theory ? &*doc.theory : theory_ctx;
  if (j.contains("strategy")) {
    require(ctx != nullptr, ErrorCode::Validation,
            "document: a strategy needs a theory (same document or context)");
    doc.strategy = strategy_from_json(j.at("strategy"), ctx->system);
  }
  if (j.contains("config")) {
    doc.config = config_from_json(j.at("config"));
    doc.has_config = true;
  }
  return doc;
}

Json solution_to_json(const Solution& s, bool include_vectors) {
  Json j;
  j["status"] = to_string(s.status);
  j["primal_value"] = format_real(s.primal_value);
  j["dual_value"] = format_real(s.dual_value);
  j["gap"] = format_real(s.gap);
  j["iterations"] = s.iterations;
  j["primal_residual"] = format_real(s.primal_residual);
  j["dual_residual"] = format_real(s.dual_residual);
  j["method"] = s.method;
  if (include_vectors) {
    j["X"] = vec_to_json(s.X);
    j["y"] = vec_to_json(s.y);
  }
  return j;
}

Json slater_to_json(const SlaterReport& r) {
  Json j;
  j["primal_strict"] = r.primal_strict;
  j["dual_strict"] = r.dual_strict;
  if (r.primal_witness) j["primal_witness"] = vec_to_json(*r.primal_witness);
  if (r.dual_witness) j["dual_witness"] = vec_to_json(*r.dual_witness);
  return j;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(const std::string& s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

}  // namespace gptmint
