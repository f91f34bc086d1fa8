#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

namespace YAML {
class Node;
}

namespace tclfuzz {

// Plain YAML scalars become null/bool/int/float when they look like one;
// quoted scalars always stay strings.
nlohmann::ordered_json yaml_to_json(const YAML::Node& node);

// '{' or '[' as the first non-whitespace byte selects JSON, anything else YAML.
nlohmann::ordered_json parse_yaml_or_json(std::string_view text);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

std::string sha256_hex(std::string_view bytes);
std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);

bool is_valid_utf8(std::string_view bytes);

// RFC 3986 unreserved characters pass through, every other byte is %XX.
std::string percent_encode(std::string_view bytes);

// Removes 0x00-0x1F and 0x7F.
std::string strip_control(std::string_view bytes);

// Minimal JSON string literal: escapes '"', '\\' and control bytes, passes
// every other byte through unchanged (non-UTF-8 included).
std::string json_quote(std::string_view bytes);

}  // namespace tclfuzz
