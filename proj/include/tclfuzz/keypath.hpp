#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tclfuzz {

// One step of a keypath.
//   Field(n)        "n" or "a.n"      object member n
//   ArrayUnder(n)   "n[...]"          member n is an array; the rest applies to each element
//   ElementField(n) "a{n}" / "[{n}]"  member n of the current element/object
struct KeySegment {
  enum class Kind : std::uint8_t { Field, ArrayUnder, ElementField };
  Kind kind = Kind::Field;
  std::string name;

  friend bool operator==(const KeySegment&, const KeySegment&) = default;
};

class KeyPath {
 public:
  KeyPath() = default;
  explicit KeyPath(std::vector<KeySegment> segments);

  // Throws MalformedConfig on syntax errors or an empty path.
  static KeyPath parse(std::string_view text);

  // Canonical surface syntax; parse(to_string()) == *this.
  std::string to_string() const;

  const std::vector<KeySegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  friend bool operator==(const KeyPath&, const KeyPath&) = default;

 private:
  std::vector<KeySegment> segments_;
};

// All values selected by `path`, in document order. Never throws; a missing
// member or a type mismatch simply contributes nothing.
std::vector<nlohmann::json> extract_by_keypath(const nlohmann::json& body, const KeyPath& path);

// Text form of an extracted literal: strings verbatim, everything else as JSON.
std::string literal_text(const nlohmann::json& value);

}  // namespace tclfuzz
