#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tclfuzz/api_model.hpp"

namespace tclfuzz {

// Literal defaults for string formats, used when a parameter carries no
// example. Values are chosen to pass typical server-side format validation.
class FormatDefaults {
 public:
  static const FormatDefaults& standard();

  std::optional<std::string_view> lookup(std::string_view format) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return table_; }

 private:
  FormatDefaults();
  std::vector<std::pair<std::string, std::string>> table_;
};

// Table entry when the format is known, otherwise the fallback for `kind`.
nlohmann::json default_for_format(std::string_view format, SchemaKind kind = SchemaKind::String);

// Precedence: parameter example, schema example, first enum value, format
// default, kind fallback ("fuzz", 1, 1.0, true, one-element array, object
// with every documented property).
nlohmann::json initial_value(const SchemaDesc& schema, const ParamDesc* param = nullptr);

}  // namespace tclfuzz
