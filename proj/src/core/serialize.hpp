// gptmint - counterfeiting bounds for operational theories
// Copyright 2026 gptmint contributors
// Licensed under Apache 2.0

#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "core/theories.hpp"

namespace gptmint {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Decimal text with enough significant digits for exact double round-trips.
std::string format_real(double v);
double parse_real(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);
Json mat_to_json(const Mat& m);  // list of columns
Mat mat_from_json(const Json& j, int rows);

Json cone_to_json(const Cone& c);
Cone cone_from_json(const Json& j);

Json theory_to_json(const TheoryDescriptor& t);
TheoryDescriptor theory_from_json(const Json& j);

Json strategy_to_json(const BankStrategy& s);
BankStrategy strategy_from_json(const Json& j, const System& sys);

Json config_to_json(const SolverConfig& c);
SolverConfig config_from_json(const Json& j);  // partial override of defaults

/// Single-document schema: top-level keys `theory`, `strategy`, `config`
/// under a `schema_version`.
struct Document {
  std::optional<TheoryDescriptor> theory;
  std::optional<BankStrategy> strategy;
  SolverConfig config;
  bool has_config = false;
};

Document parse_document(const std::string& text,
                        const TheoryDescriptor* theory_ctx = nullptr);

Json solution_to_json(const Solution& s, bool include_vectors = false);
Json slater_to_json(const SlaterReport& r);

std::uint64_t fnv1a64(const std::string& s);
std::string digest_hex(const std::string& s);

}  // namespace gptmint
