#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tclfuzz/dependency.hpp"
#include "tclfuzz/grammar.hpp"
#include "tclfuzz/rng.hpp"

namespace tclfuzz {

enum class MutatorKind : std::uint8_t {
  InsertBytes,
  DuplicateBytes,
  RemoveBytes,
  SetByte,
  AddByte,
  SubtractByte,
  SwapBytes,
  ReplaceAsciiNumber,
  BitFlip,
  ReplaceDataType,
  RemoveField,
  ModifyString,
};

inline constexpr std::size_t kMutatorKindCount = 12;
inline constexpr std::size_t kByteMutatorCount = 9;  // InsertBytes .. BitFlip

std::string_view to_string(MutatorKind k);
bool is_byte_level(MutatorKind k);

// Probability that a scheduled ID slot is kept for mutation.
inline constexpr double kIdMutationProbability = 0.1;

// Unordered slot pairs in lexicographic order; (0,0) for a single slot. The
// cursor advances once per choose_targets call and wraps.
struct PairSchedule {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t cursor = 0;

  static PairSchedule for_slots(std::size_t slot_count);
  std::pair<std::size_t, std::size_t> next();
};

// Schedules per operation, created on first use.
class ScheduleBook {
 public:
  PairSchedule& for_node(const RequestNode& node);

 private:
  std::map<OperationRef, PairSchedule> schedules_;
};

struct SlotPair {
  std::optional<std::size_t> first;
  std::optional<std::size_t> second;
};

// Takes the schedule's next pair. A slot naming an ID parameter survives only
// if a draw falls below kIdMutationProbability; otherwise it is swapped for a
// uniformly drawn non-ID slot (or dropped when there is none).
// Throws NoMutableParams for a node without slots.
SlotPair choose_targets(const RequestNode& node, PairSchedule& schedule, Rng& rng,
                        const std::set<std::string>& id_params);

// Deterministic primitives behind the byte-level mutators.
namespace byte_ops {
std::string insert_bytes(std::string_view v, std::size_t pos, std::string_view bytes);
std::string duplicate_range(std::string_view v, std::size_t pos, std::size_t len);
std::string remove_range(std::string_view v, std::size_t pos, std::size_t len);
std::string set_byte(std::string_view v, std::size_t pos, std::uint8_t b);
std::string add_byte(std::string_view v, std::size_t pos, std::uint8_t delta);
std::string subtract_byte(std::string_view v, std::size_t pos, std::uint8_t delta);
std::string swap_bytes(std::string_view v, std::size_t a, std::size_t b);
std::string bit_flip(std::string_view v, std::size_t pos, unsigned bit);
// Replaces the `run_index`-th maximal digit run with `digits`.
std::string replace_number(std::string_view v, std::size_t run_index, std::string_view digits);
// [start, length) of every maximal ASCII digit run.
std::vector<std::pair<std::size_t, std::size_t>> digit_runs(std::string_view v);
}  // namespace byte_ops

// The fixed list ModifyString draws from; `choice` indexes it modulo its size.
std::string modify_string(std::string_view v, std::size_t choice);
std::size_t modify_string_choices();

// Byte-level kinds and ModifyString. Empty input: InsertBytes/DuplicateBytes
// insert, everything else returns it unchanged.
std::string mutate_value(std::string_view value, MutatorKind kind, Rng& rng);

// Canonical wrong-type representative for a value of kind `to`.
std::pair<SchemaKind, std::string> type_representative(SchemaKind to);

// ReplaceDataType (uniform over the other kinds) or RemoveField.
RequestNode mutate_structural(const RequestNode& node, std::size_t slot, MutatorKind kind, Rng& rng);
// ReplaceDataType with an explicit target kind.
RequestNode replace_data_type(const RequestNode& node, std::size_t slot, SchemaKind to);

// Mutates one slot with a uniformly drawn top-level strategy (byte family,
// ReplaceDataType, RemoveField, ModifyString). Mutating an absent slot makes
// it present again unless the strategy is RemoveField.
void mutate_slot(RequestNode& node, std::size_t slot, Rng& rng);

// Pairwise mutation of every node. The result has Mutated provenance pointing
// at `parent_digest`; the input is untouched.
SeedGrammar mutate_grammar(const SeedGrammar& grammar, ScheduleBook& schedules, Rng& rng,
                           const DependencyConfig& config, std::uint64_t round,
                           const std::string& parent_digest);

}  // namespace tclfuzz
