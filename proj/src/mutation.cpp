#include "tclfuzz/mutation.hpp"

#include <algorithm>
#include <array>

#include "tclfuzz/errors.hpp"

namespace tclfuzz {

std::string_view to_string(MutatorKind k) {
  switch (k) {
    case MutatorKind::InsertBytes: return "insert_bytes";
    case MutatorKind::DuplicateBytes: return "duplicate_bytes";
    case MutatorKind::RemoveBytes: return "remove_bytes";
    case MutatorKind::SetByte: return "set_byte";
    case MutatorKind::AddByte: return "add_byte";
    case MutatorKind::SubtractByte: return "subtract_byte";
    case MutatorKind::SwapBytes: return "swap_bytes";
    case MutatorKind::ReplaceAsciiNumber: return "replace_ascii_number";
    case MutatorKind::BitFlip: return "bit_flip";
    case MutatorKind::ReplaceDataType: return "replace_data_type";
    case MutatorKind::RemoveField: return "remove_field";
    case MutatorKind::ModifyString: return "modify_string";
  }
  return "unknown";
}

bool is_byte_level(MutatorKind k) { return static_cast<std::size_t>(k) < kByteMutatorCount; }

PairSchedule PairSchedule::for_slots(std::size_t slot_count) {
  PairSchedule s;
  if (slot_count == 1) s.pairs.emplace_back(0, 0);
  for (std::size_t i = 0; i < slot_count; ++i) {
    for (std::size_t j = i + 1; j < slot_count; ++j) s.pairs.emplace_back(i, j);
  }
  return s;
}

std::pair<std::size_t, std::size_t> PairSchedule::next() {
  if (pairs.empty()) return {0, 0};
  auto p = pairs[cursor % pairs.size()];
  cursor = (cursor + 1) % pairs.size();
  return p;
}

PairSchedule& ScheduleBook::for_node(const RequestNode& node) {
  auto it = schedules_.find(node.ref());
  if (it == schedules_.end()) {
    it = schedules_.emplace(node.ref(), PairSchedule::for_slots(node.slots.size())).first;
  }
  return it->second;
}

namespace {

bool is_id_slot(const ParamSlot& slot, const std::set<std::string>& id_params) {
  return slot.location != ParamLocation::BodyField && id_params.count(slot.name) > 0;
}

std::optional<std::size_t> screen_id(const RequestNode& node, std::size_t index, Rng& rng,
                                     const std::set<std::string>& id_params) {
  if (!is_id_slot(node.slots[index], id_params)) return index;
  if (rng.chance(kIdMutationProbability)) return index;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < node.slots.size(); ++i) {
    if (!is_id_slot(node.slots[i], id_params)) others.push_back(i);
  }
  if (others.empty()) return std::nullopt;
  return others[rng.below(others.size())];
}

}  // namespace

SlotPair choose_targets(const RequestNode& node, PairSchedule& schedule, Rng& rng,
                        const std::set<std::string>& id_params) {
  if (node.slots.empty()) throw NoMutableParams(to_string(node.ref()));
  if (schedule.pairs.empty()) schedule = PairSchedule::for_slots(node.slots.size());
  auto [a, b] = schedule.next();
  a = std::min(a, node.slots.size() - 1);
  b = std::min(b, node.slots.size() - 1);
  SlotPair out;
  out.first = screen_id(node, a, rng, id_params);
  out.second = screen_id(node, b, rng, id_params);
  return out;
}

namespace byte_ops {

std::string insert_bytes(std::string_view v, std::size_t pos, std::string_view bytes) {
  pos = std::min(pos, v.size());
  std::string out(v.substr(0, pos));
  out.append(bytes);
  out.append(v.substr(pos));
  return out;
}

std::string duplicate_range(std::string_view v, std::size_t pos, std::size_t len) {
  if (v.empty()) return std::string(v);
  pos = std::min(pos, v.size() - 1);
  len = std::min(len, v.size() - pos);
  return insert_bytes(v, pos + len, v.substr(pos, len));
}

std::string remove_range(std::string_view v, std::size_t pos, std::size_t len) {
  if (pos >= v.size()) return std::string(v);
  len = std::min(len, v.size() - pos);
  std::string out(v.substr(0, pos));
  out.append(v.substr(pos + len));
  return out;
}

std::string set_byte(std::string_view v, std::size_t pos, std::uint8_t b) {
  std::string out(v);
  if (pos < out.size()) out[pos] = static_cast<char>(b);
  return out;
}

std::string add_byte(std::string_view v, std::size_t pos, std::uint8_t delta) {
  std::string out(v);
  if (pos < out.size()) out[pos] = static_cast<char>(static_cast<std::uint8_t>(out[pos]) + delta);
  return out;
}

std::string subtract_byte(std::string_view v, std::size_t pos, std::uint8_t delta) {
  std::string out(v);
  if (pos < out.size()) out[pos] = static_cast<char>(static_cast<std::uint8_t>(out[pos]) - delta);
  return out;
}

std::string swap_bytes(std::string_view v, std::size_t a, std::size_t b) {
  std::string out(v);
  if (a < out.size() && b < out.size()) std::swap(out[a], out[b]);
  return out;
}

std::string bit_flip(std::string_view v, std::size_t pos, unsigned bit) {
  std::string out(v);
  if (pos < out.size()) out[pos] = static_cast<char>(static_cast<std::uint8_t>(out[pos]) ^ (1u << (bit % 8)));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> digit_runs(std::string_view v) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i < v.size()) {
    if (v[i] >= '0' && v[i] <= '9') {
      std::size_t start = i;
      while (i < v.size() && v[i] >= '0' && v[i] <= '9') ++i;
      runs.emplace_back(start, i - start);
    } else {
      ++i;
    }
  }
  return runs;
}

std::string replace_number(std::string_view v, std::size_t run_index, std::string_view digits) {
  auto runs = digit_runs(v);
  if (run_index >= runs.size()) return std::string(v);
  auto [start, len] = runs[run_index];
  std::string out(v.substr(0, start));
  out.append(digits);
  out.append(v.substr(start + len));
  return out;
}

}  // namespace byte_ops

namespace {

std::string flip_case(std::string_view v) {
  std::string out(v);
  for (auto& c : out) {
    if (c >= 'a' && c <= 'z') {
      c = static_cast<char>(c - 'a' + 'A');
    } else if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

std::string repeat_to(std::string_view v, std::size_t n) {
  std::string unit = v.empty() ? std::string("A") : std::string(v);
  std::string out;
  out.reserve(n);
  while (out.size() < n) out.append(unit);
  out.resize(n);
  return out;
}

constexpr std::array<std::string_view, 6> kSuffixes = {"'", "\"", "<script>", "../", "\\", "%00"};
constexpr std::array<std::string_view, 6> kNumbers = {"0", "-1", "2147483647", "2147483648",
                                                      "-2147483649", "99999999999999999999"};
constexpr std::size_t kLongLength = 1024;

}  // namespace

std::size_t modify_string_choices() { return 3 + kSuffixes.size() + kNumbers.size(); }

std::string modify_string(std::string_view v, std::size_t choice) {
  choice %= modify_string_choices();
  if (choice == 0) return repeat_to(v, kLongLength);
  if (choice == 1) return {};
  if (choice == 2) return flip_case(v);
  choice -= 3;
  if (choice < kSuffixes.size()) return std::string(v) + std::string(kSuffixes[choice]);
  return std::string(kNumbers[choice - kSuffixes.size()]);
}

namespace {

std::string random_bytes(Rng& rng, std::size_t n) {
  std::string out(n, '\0');
  for (auto& c : out) c = static_cast<char>(rng.below(256));
  return out;
}

std::size_t range_len(Rng& rng) { return static_cast<std::size_t>(rng.between(1, 8)); }

std::string random_number(Rng& rng, std::size_t len) {
  std::string out;
  out.push_back(static_cast<char>('0' + (len > 1 ? rng.between(1, 9) : rng.between(0, 9))));
  while (out.size() < len) out.push_back(static_cast<char>('0' + rng.below(10)));
  return out;
}

}  // namespace

std::string mutate_value(std::string_view v, MutatorKind kind, Rng& rng) {
  using namespace byte_ops;
  if (kind == MutatorKind::ModifyString) return modify_string(v, rng.below(modify_string_choices()));
  if (v.empty()) {
    if (kind == MutatorKind::InsertBytes || kind == MutatorKind::DuplicateBytes) {
      return random_bytes(rng, range_len(rng));
    }
    return std::string(v);
  }
  switch (kind) {
    case MutatorKind::InsertBytes: {
      auto pos = rng.below(v.size() + 1);
      return insert_bytes(v, pos, random_bytes(rng, range_len(rng)));
    }
    case MutatorKind::DuplicateBytes: {
      auto pos = rng.below(v.size());
      return duplicate_range(v, pos, range_len(rng));
    }
    case MutatorKind::RemoveBytes: {
      auto pos = rng.below(v.size());
      return remove_range(v, pos, range_len(rng));
    }
    case MutatorKind::SetByte: {
      auto pos = rng.below(v.size());
      return set_byte(v, pos, static_cast<std::uint8_t>(rng.below(256)));
    }
    case MutatorKind::AddByte: {
      auto pos = rng.below(v.size());
      return add_byte(v, pos, static_cast<std::uint8_t>(rng.between(1, 35)));
    }
    case MutatorKind::SubtractByte: {
      auto pos = rng.below(v.size());
      return subtract_byte(v, pos, static_cast<std::uint8_t>(rng.between(1, 35)));
    }
    case MutatorKind::SwapBytes: {
      auto a = rng.below(v.size());
      auto b = rng.below(v.size());
      return swap_bytes(v, a, b);
    }
    case MutatorKind::ReplaceAsciiNumber: {
      auto runs = digit_runs(v);
      if (runs.empty()) return std::string(v);
      auto idx = rng.below(runs.size());
      auto len = static_cast<std::int64_t>(runs[idx].second) + rng.between(-1, 1);
      return replace_number(v, idx, random_number(rng, static_cast<std::size_t>(std::max<std::int64_t>(1, len))));
    }
    case MutatorKind::BitFlip: {
      auto pos = rng.below(v.size());
      return bit_flip(v, pos, static_cast<unsigned>(rng.below(8)));
    }
    case MutatorKind::ReplaceDataType:
    case MutatorKind::RemoveField:
    case MutatorKind::ModifyString:
      break;
  }
  return std::string(v);
}

std::pair<SchemaKind, std::string> type_representative(SchemaKind to) {
  switch (to) {
    case SchemaKind::String: return {to, "not-a-number"};
    case SchemaKind::Integer: return {to, "42"};
    case SchemaKind::Number: return {to, "0.5"};
    case SchemaKind::Boolean: return {to, "true"};
    case SchemaKind::Array: return {to, "[]"};
    case SchemaKind::Object: return {to, "{}"};
  }
  return {to, ""};
}

RequestNode replace_data_type(const RequestNode& node, std::size_t slot, SchemaKind to) {
  RequestNode out = node;
  if (slot >= out.slots.size()) return out;
  auto [kind, value] = type_representative(to);
  out.slots[slot].kind = kind;
  out.slots[slot].value = std::move(value);
  out.slots[slot].present = true;
  return out;
}

namespace {

constexpr std::array<SchemaKind, 6> kAllKinds = {SchemaKind::String, SchemaKind::Integer,
                                                 SchemaKind::Number, SchemaKind::Boolean,
                                                 SchemaKind::Array,  SchemaKind::Object};

SchemaKind other_kind(SchemaKind from, Rng& rng) {
  std::vector<SchemaKind> choices;
  for (auto k : kAllKinds) {
    if (k != from) choices.push_back(k);
  }
  return choices[rng.below(choices.size())];
}

}  // namespace

RequestNode mutate_structural(const RequestNode& node, std::size_t slot, MutatorKind kind, Rng& rng) {
  if (slot >= node.slots.size()) return node;
  if (kind == MutatorKind::RemoveField) {
    RequestNode out = node;
    out.slots[slot].present = false;
    return out;
  }
  if (kind == MutatorKind::ReplaceDataType) {
    return replace_data_type(node, slot, other_kind(node.slots[slot].kind, rng));
  }
  return node;
}

void mutate_slot(RequestNode& node, std::size_t slot, Rng& rng) {
  if (slot >= node.slots.size()) return;
  auto& s = node.slots[slot];
  switch (rng.below(4)) {
    case 0: {
      auto kind = static_cast<MutatorKind>(rng.below(kByteMutatorCount));
      s.value = mutate_value(s.value, kind, rng);
      s.present = true;
      break;
    }
    case 1:
      node = mutate_structural(node, slot, MutatorKind::ReplaceDataType, rng);
      break;
    case 2:
      s.present = false;
      break;
    default:
      s.value = mutate_value(s.value, MutatorKind::ModifyString, rng);
      s.present = true;
      break;
  }
}

SeedGrammar mutate_grammar(const SeedGrammar& grammar, ScheduleBook& schedules, Rng& rng,
                           const DependencyConfig& config, std::uint64_t round,
                           const std::string& parent_digest) {
  SeedGrammar out = grammar;
  out.provenance = {Provenance::Kind::Mutated, parent_digest, round};
  for (auto& node : out.nodes) {
    if (node.slots.empty()) continue;
    auto pick = choose_targets(node, schedules.for_node(node), rng, config.id_params(node.ref()));
    if (pick.first) mutate_slot(node, *pick.first, rng);
    if (pick.second && pick.second != pick.first) mutate_slot(node, *pick.second, rng);
  }
  return out;
}

}  // namespace tclfuzz
