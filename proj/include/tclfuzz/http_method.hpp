#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tclfuzz {

enum class HttpMethod { Post, Get, Put, Patch, Delete, Head, Options, Trace };

std::string_view to_string(HttpMethod m);

// Case-insensitive.
std::optional<HttpMethod> parse_method(std::string_view text);

// POST, GET, PUT, PATCH, DELETE, then the rest alphabetically
// (HEAD, OPTIONS, TRACE). The enum is declared in that order, so this is just
// the underlying value.
inline int method_rank(HttpMethod m) { return static_cast<int>(m); }

struct OperationRef {
  std::string path;
  HttpMethod method = HttpMethod::Get;

  friend bool operator==(const OperationRef&, const OperationRef&) = default;
  friend auto operator<=>(const OperationRef&, const OperationRef&) = default;
};

std::string to_string(const OperationRef& op);

}  // namespace tclfuzz
