#include "tclfuzz/keypath.hpp"

#include "tclfuzz/errors.hpp"

namespace tclfuzz {

namespace {

bool is_name_char(char c) { return c != '.' && c != '[' && c != ']' && c != '{' && c != '}'; }

// path  := step ('.' step)*
// step  := NAME | NAME '[' path? ']' | NAME '{' path '}' | '{' path '}'
// The first NAME step directly inside braces is an ElementField.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<KeySegment> run() {
    std::vector<KeySegment> out;
    parse_path(out, false, '\0');
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (out.empty()) fail("empty keypath");
    return out;
  }

 private:
  void parse_path(std::vector<KeySegment>& out, bool braced, char closer) {
    if (closer == ']' && peek() == ']') return;  // "name[]"
    parse_step(out, braced);
    while (peek() == '.') {
      ++pos_;
      parse_step(out, false);
    }
  }

  void parse_step(std::vector<KeySegment>& out, bool element) {
    if (peek() == '{') {
      ++pos_;
      parse_path(out, true, '}');
      expect('}');
      return;
    }
    std::string name = parse_name();
    if (peek() == '[') {
      ++pos_;
      out.push_back({KeySegment::Kind::ArrayUnder, std::move(name)});
      parse_path(out, false, ']');
      expect(']');
    } else if (peek() == '{') {
      ++pos_;
      out.push_back({element ? KeySegment::Kind::ElementField : KeySegment::Kind::Field, std::move(name)});
      parse_path(out, true, '}');
      expect('}');
    } else {
      out.push_back({element ? KeySegment::Kind::ElementField : KeySegment::Kind::Field, std::move(name)});
    }
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a member name at offset " + std::to_string(start));
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw MalformedConfig("keypath '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

using Seg = KeySegment::Kind;

std::string serialize_from(const std::vector<KeySegment>& s, std::size_t i, bool braced);

// Segments from i onward, where s[i] is rendered as a braced element when
// `braced` (it must then be an ElementField) or as a plain step otherwise.
std::string serialize_from(const std::vector<KeySegment>& s, std::size_t i, bool braced) {
  if (i >= s.size()) return "";
  const auto& seg = s[i];
  std::string out;
  if (seg.kind == Seg::ElementField && !braced) {
    return "{" + serialize_from(s, i, true) + "}";
  }
  if (seg.kind == Seg::ArrayUnder) {
    return seg.name + "[" + serialize_from(s, i + 1, false) + "]";
  }
  out = seg.name;
  if (i + 1 < s.size()) {
    if (s[i + 1].kind == Seg::ElementField) {
      out += "{" + serialize_from(s, i + 1, true) + "}";
    } else {
      out += "." + serialize_from(s, i + 1, false);
    }
  }
  return out;
}

void walk(const nlohmann::json& cur, const std::vector<KeySegment>& segs, std::size_t i,
          std::vector<nlohmann::json>& out) {
  if (i == segs.size()) {
    out.push_back(cur);
    return;
  }
  if (!cur.is_object()) return;
  auto it = cur.find(segs[i].name);
  if (it == cur.end()) return;
  if (segs[i].kind == Seg::ArrayUnder) {
    if (!it->is_array()) return;
    for (const auto& el : *it) walk(el, segs, i + 1, out);
  } else {
    walk(*it, segs, i + 1, out);
  }
}

}  // namespace

KeyPath::KeyPath(std::vector<KeySegment> segments) : segments_(std::move(segments)) {}

KeyPath KeyPath::parse(std::string_view text) { return KeyPath(Parser(text).run()); }

std::string KeyPath::to_string() const { return serialize_from(segments_, 0, false); }

std::vector<nlohmann::json> extract_by_keypath(const nlohmann::json& body, const KeyPath& path) {
  std::vector<nlohmann::json> out;
  if (path.empty()) return out;
  walk(body, path.segments(), 0, out);
  return out;
}

std::string literal_text(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

}  // namespace tclfuzz
