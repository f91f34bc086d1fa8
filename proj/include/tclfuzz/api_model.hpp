#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tclfuzz/http_method.hpp"

namespace tclfuzz {

enum class SchemaKind : std::uint8_t { String, Integer, Number, Boolean, Array, Object };

std::string_view to_string(SchemaKind k);
std::optional<SchemaKind> parse_schema_kind(std::string_view text);

struct SchemaProperty;

// A fully inlined schema. No SchemaDesc reachable from an ApiModel carries a
// $ref; references are resolved (or truncated) at parse time.
struct SchemaDesc {
  SchemaKind kind = SchemaKind::Object;
  std::string format;                        // empty when absent
  std::vector<SchemaProperty> properties;    // kind == Object
  std::vector<std::string> required;         // property names
  std::shared_ptr<const SchemaDesc> items;   // kind == Array
  std::vector<nlohmann::json> enum_values;
  std::optional<nlohmann::json> example;
  // minimum/maximum/pattern/... kept verbatim; recorded, never enforced.
  nlohmann::json constraints = nlohmann::json::object();

  bool is_required(std::string_view property) const;
  const SchemaDesc* property(std::string_view name) const;
};

struct SchemaProperty {
  std::string name;
  SchemaDesc schema;
};

bool operator==(const SchemaDesc& a, const SchemaDesc& b);
bool operator==(const SchemaProperty& a, const SchemaProperty& b);

enum class ParamLocation : std::uint8_t { Path, Query, Header, BodyField };

std::string_view to_string(ParamLocation l);

struct ParamDesc {
  std::string name;  // dotted field path for BodyField ("article.title")
  ParamLocation location = ParamLocation::Query;
  SchemaDesc schema;
  bool required = false;
  std::optional<nlohmann::json> example;

  friend bool operator==(const ParamDesc&, const ParamDesc&) = default;
};

struct RequestBodyDesc {
  std::vector<std::string> content_types;
  SchemaDesc schema;
  bool required = false;

  friend bool operator==(const RequestBodyDesc&, const RequestBodyDesc&) = default;
};

struct ResponseDesc {
  int status_code = 200;
  std::vector<std::string> content_types;
  std::optional<SchemaDesc> body_schema;

  friend bool operator==(const ResponseDesc&, const ResponseDesc&) = default;
};

struct OperationDesc {
  HttpMethod method = HttpMethod::Get;
  std::string operation_id;
  // Path/query/header parameters first, then request-body leaves flattened
  // to dotted field paths (location BodyField).
  std::vector<ParamDesc> parameters;
  std::optional<RequestBodyDesc> request_body;
  std::vector<ResponseDesc> responses;
  bool requires_auth = false;

  const ParamDesc* find_param(std::string_view name) const;

  friend bool operator==(const OperationDesc&, const OperationDesc&) = default;
};

struct PathItem {
  std::string path_template;
  std::vector<OperationDesc> operations;   // document order
  std::vector<std::string> unresolved_symbols;

  const OperationDesc* find(HttpMethod m) const;

  friend bool operator==(const PathItem&, const PathItem&) = default;
};

struct ApiModel {
  std::string title;
  std::string base_url;
  std::vector<PathItem> paths;   // document order
  std::vector<std::string> warnings;

  const PathItem* find_path(std::string_view path_template) const;
  const OperationDesc* find_operation(std::string_view path_template, HttpMethod m) const;
  const OperationDesc* find_operation(const OperationRef& ref) const {
    return find_operation(ref.path, ref.method);
  }

  // Structural equality; warnings are diagnostics and do not participate.
  friend bool operator==(const ApiModel& a, const ApiModel& b) {
    return a.title == b.title && a.base_url == b.base_url && a.paths == b.paths;
  }
};

enum class DocumentFormat { Auto, Yaml, Json };

// Parses an OpenAPI 3.0/3.1 document. Unsupported constructs (external refs,
// callbacks, links, schema unions) become entries in ApiModel::warnings.
ApiModel parse_spec(std::string_view document, DocumentFormat hint = DocumentFormat::Auto);
ApiModel parse_spec_file(const std::string& path);

// Resolves `node` (possibly a "#/components/..." $ref) against the document
// root. A schema that refers to itself is expanded three levels deep, the
// fourth becomes an empty object. Any other cycle throws CyclicRef.
SchemaDesc resolve_local_ref(const nlohmann::ordered_json& node,
                             const nlohmann::ordered_json& document_root,
                             std::vector<std::string>* warnings = nullptr);

struct OperationEntry {
  std::string path;
  HttpMethod method;
  const OperationDesc* op;

  OperationRef ref() const { return {path, method}; }
};

// Document path order, then POST, GET, PUT, PATCH, DELETE, others.
std::vector<OperationEntry> list_operations(const ApiModel& model);

// Brace-delimited variable names in order of appearance.
std::vector<std::string> template_variables(std::string_view path_template);

// Re-emits the model as an OpenAPI 3.0 JSON document with every schema inlined.
nlohmann::ordered_json to_openapi_json(const ApiModel& model);

}  // namespace tclfuzz
