#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tclfuzz/api_model.hpp"
#include "tclfuzz/request_plan.hpp"

namespace tclfuzz {

// One mutable parameter of a request. `value` holds raw bytes: the text of a
// string, or the JSON text of any other kind. Mutators may leave it non-UTF-8.
struct ParamSlot {
  std::string name;
  ParamLocation location = ParamLocation::Query;
  SchemaKind kind = SchemaKind::String;
  std::string value;
  bool present = true;
  bool required = false;

  friend bool operator==(const ParamSlot&, const ParamSlot&) = default;
};

struct RequestNode {
  std::string path;
  HttpMethod method = HttpMethod::Get;
  // Send count: the number of documented response status codes.
  std::uint32_t repeat = 1;
  // Path/query/header parameters in declaration order, then body fields.
  std::vector<ParamSlot> slots;

  OperationRef ref() const { return {path, method}; }
  ParamSlot* find(std::string_view name, ParamLocation loc);
  const ParamSlot* find(std::string_view name, ParamLocation loc) const;
  // First slot with this name in any location except BodyField, then body fields.
  const ParamSlot* find_any(std::string_view name) const;
  ParamSlot* find_any(std::string_view name);

  friend bool operator==(const RequestNode&, const RequestNode&) = default;
};

struct Provenance {
  enum class Kind : std::uint8_t { Initial, Mutated };
  Kind kind = Kind::Initial;
  std::string parent_digest;  // Mutated only
  std::uint64_t round = 0;    // Mutated only

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct SeedGrammar {
  std::vector<RequestNode> nodes;
  Provenance provenance;

  friend bool operator==(const SeedGrammar&, const SeedGrammar&) = default;
};

// Slot bytes for a JSON literal: strings unwrap, everything else is dumped.
std::string slot_bytes(const nlohmann::json& literal);

RequestNode build_initial_node(const OperationRef& op, const ApiModel& model);
SeedGrammar build_initial_grammar(const RequestPlan& plan, const ApiModel& model);

// Versioned, length-prefixed binary encoding. Equal grammars encode to equal
// bytes, and any byte value survives the round trip.
std::string serialize_seed(const SeedGrammar& grammar);

// Throws CorruptSeed on an unknown version, bad magic, truncation or
// trailing bytes.
SeedGrammar deserialize_seed(std::string_view blob);

// Hex SHA-256 over each node's path, method and its slots sorted by
// (location, name), including value, kind and presence. Provenance and
// repeat counts are excluded.
std::string grammar_digest(const SeedGrammar& grammar);

}  // namespace tclfuzz
