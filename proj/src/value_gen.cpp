#include "tclfuzz/value_gen.hpp"

namespace tclfuzz {

FormatDefaults::FormatDefaults()
    : table_{
          {"date", "2021-05-28"},
          {"date-time", "2021-05-28T10:00:00+08:00"},
          {"time", "10:00:00+08:00"},
          {"email", "user@example.com"},
          {"hostname", "localhost"},
          {"ipv4", "127.0.0.1"},
          {"ipv6", "0:0:0:0:0:0:0:1"},
          {"uri", "https://tools.ietf.org/html/rfc3986"},
          {"uuid", "5bcafcb2-a669-11eb-bcbc-0242ac130002"},
      } {}

const FormatDefaults& FormatDefaults::standard() {
  static const FormatDefaults instance;
  return instance;
}

std::optional<std::string_view> FormatDefaults::lookup(std::string_view format) const {
  for (const auto& [name, value] : table_) {
    if (name == format) return value;
  }
  return std::nullopt;
}

namespace {

nlohmann::json kind_fallback(SchemaKind kind) {
  switch (kind) {
    case SchemaKind::String: return "fuzz";
    case SchemaKind::Integer: return 1;
    case SchemaKind::Number: return 1.0;
    case SchemaKind::Boolean: return true;
    case SchemaKind::Array: return nlohmann::json::array();
    case SchemaKind::Object: return nlohmann::json::object();
  }
  return "fuzz";
}

}  // namespace

nlohmann::json default_for_format(std::string_view format, SchemaKind kind) {
  if (auto v = FormatDefaults::standard().lookup(format)) return std::string(*v);
  return kind_fallback(kind);
}

nlohmann::json initial_value(const SchemaDesc& schema, const ParamDesc* param) {
  if (param && param->example) return *param->example;
  if (schema.example) return *schema.example;
  if (!schema.enum_values.empty()) return schema.enum_values.front();
  if (schema.kind == SchemaKind::String && !schema.format.empty()) {
    if (auto v = FormatDefaults::standard().lookup(schema.format)) return std::string(*v);
  }
  switch (schema.kind) {
    case SchemaKind::Array: {
      auto out = nlohmann::json::array();
      if (schema.items) out.push_back(initial_value(*schema.items));
      return out;
    }
    case SchemaKind::Object: {
      auto out = nlohmann::json::object();
      for (const auto& p : schema.properties) out[p.name] = initial_value(p.schema);
      return out;
    }
    default:
      return kind_fallback(schema.kind);
  }
}

}  // namespace tclfuzz
