#include "tclfuzz/grammar.hpp"

#include <algorithm>
#include <tuple>

#include "tclfuzz/errors.hpp"
#include "tclfuzz/util.hpp"
#include "tclfuzz/value_gen.hpp"

namespace tclfuzz {

namespace {

constexpr std::string_view kMagic = "TCLS";
constexpr std::uint8_t kVersion = 1;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void raw(std::string_view s) { out_.append(s); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  std::string str() {
    auto n = u32();
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw CorruptSeed("truncated seed");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

template <typename Enum>
Enum checked_enum(std::uint8_t v, Enum last, const char* what) {
  if (v > static_cast<std::uint8_t>(last)) throw CorruptSeed(std::string("bad ") + what + " tag");
  return static_cast<Enum>(v);
}

}  // namespace

ParamSlot* RequestNode::find(std::string_view name, ParamLocation loc) {
  for (auto& s : slots) {
    if (s.name == name && s.location == loc) return &s;
  }
  return nullptr;
}

const ParamSlot* RequestNode::find(std::string_view name, ParamLocation loc) const {
  return const_cast<RequestNode*>(this)->find(name, loc);
}

ParamSlot* RequestNode::find_any(std::string_view name) {
  for (auto loc : {ParamLocation::Path, ParamLocation::Query, ParamLocation::Header, ParamLocation::BodyField}) {
    if (auto* s = find(name, loc)) return s;
  }
  return nullptr;
}

const ParamSlot* RequestNode::find_any(std::string_view name) const {
  return const_cast<RequestNode*>(this)->find_any(name);
}

std::string slot_bytes(const nlohmann::json& literal) {
  if (literal.is_string()) return literal.get<std::string>();
  return literal.dump();
}

RequestNode build_initial_node(const OperationRef& ref, const ApiModel& model) {
  const OperationDesc* op = model.find_operation(ref);
  if (!op) throw UnknownPath(to_string(ref));
  RequestNode node;
  node.path = ref.path;
  node.method = ref.method;
  node.repeat = static_cast<std::uint32_t>(std::max<std::size_t>(1, op->responses.size()));
  for (const auto& p : op->parameters) {
    ParamSlot slot;
    slot.name = p.name;
    slot.location = p.location;
    slot.kind = p.schema.kind;
    slot.value = slot_bytes(initial_value(p.schema, &p));
    slot.required = p.required;
    slot.present = p.location == ParamLocation::BodyField || p.required;
    node.slots.push_back(std::move(slot));
  }
  return node;
}

SeedGrammar build_initial_grammar(const RequestPlan& plan, const ApiModel& model) {
  SeedGrammar g;
  for (const auto& e : plan.entries) g.nodes.push_back(build_initial_node(e.op, model));
  return g;
}

std::string serialize_seed(const SeedGrammar& g) {
  Writer w;
  w.raw(kMagic);
  w.u8(kVersion);
  w.u8(static_cast<std::uint8_t>(g.provenance.kind));
  w.str(g.provenance.parent_digest);
  w.u64(g.provenance.round);
  w.u32(static_cast<std::uint32_t>(g.nodes.size()));
  for (const auto& n : g.nodes) {
    w.str(n.path);
    w.u8(static_cast<std::uint8_t>(n.method));
    w.u32(n.repeat);
    w.u32(static_cast<std::uint32_t>(n.slots.size()));
    for (const auto& s : n.slots) {
      w.str(s.name);
      w.u8(static_cast<std::uint8_t>(s.location));
      w.u8(static_cast<std::uint8_t>(s.kind));
      w.u8(static_cast<std::uint8_t>((s.present ? 1 : 0) | (s.required ? 2 : 0)));
      w.str(s.value);
    }
  }
  return w.take();
}

SeedGrammar deserialize_seed(std::string_view blob) {
  Reader r(blob);
  if (r.raw(kMagic.size()) != kMagic) throw CorruptSeed("bad magic");
  auto version = r.u8();
  if (version != kVersion) throw CorruptSeed("unknown seed version " + std::to_string(version));
  SeedGrammar g;
  g.provenance.kind = checked_enum(r.u8(), Provenance::Kind::Mutated, "provenance");
  g.provenance.parent_digest = r.str();
  g.provenance.round = r.u64();
  auto nodes = r.u32();
  for (std::uint32_t i = 0; i < nodes; ++i) {
    RequestNode n;
    n.path = r.str();
    n.method = checked_enum(r.u8(), HttpMethod::Trace, "method");
    n.repeat = r.u32();
    if (n.repeat == 0) throw CorruptSeed("zero repeat count");
    auto slots = r.u32();
    for (std::uint32_t k = 0; k < slots; ++k) {
      ParamSlot s;
      s.name = r.str();
      s.location = checked_enum(r.u8(), ParamLocation::BodyField, "location");
      s.kind = checked_enum(r.u8(), SchemaKind::Object, "kind");
      auto flags = r.u8();
      if (flags > 3) throw CorruptSeed("bad slot flags");
      s.present = flags & 1;
      s.required = flags & 2;
      s.value = r.str();
      n.slots.push_back(std::move(s));
    }
    g.nodes.push_back(std::move(n));
  }
  if (!r.done()) throw CorruptSeed("trailing bytes");
  return g;
}

std::string grammar_digest(const SeedGrammar& g) {
  Writer w;
  for (const auto& n : g.nodes) {
    w.str(n.path);
    w.u8(static_cast<std::uint8_t>(n.method));
    std::vector<const ParamSlot*> sorted;
    for (const auto& s : n.slots) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(), [](const ParamSlot* a, const ParamSlot* b) {
      return std::tie(a->location, a->name) < std::tie(b->location, b->name);
    });
    w.u32(static_cast<std::uint32_t>(sorted.size()));
    for (const auto* s : sorted) {
      w.str(s->name);
      w.u8(static_cast<std::uint8_t>(s->location));
      w.u8(static_cast<std::uint8_t>(s->kind));
      w.u8(s->present ? 1 : 0);
      w.str(s->value);
    }
  }
  return sha256_hex(w.take());
}

}  // namespace tclfuzz
