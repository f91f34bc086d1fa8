#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tclfuzz/grammar.hpp"

namespace tclfuzz {

enum class InsertResult { Inserted, Duplicate };

// Deduplicating seed store. Selection is round-robin over insertion order in
// passes: a pass fixes its length when it starts, so a seed added mid-pass is
// first eligible when the cycle wraps. With no insertions, the seed chosen
// for round r is entry r mod size.
class Corpus {
 public:
  // Seeds inserted before any round (the initial grammars).
  static constexpr std::int64_t kBeforeCampaign = -1;

  InsertResult insert(const SeedGrammar& grammar, std::int64_t round = kBeforeCampaign);

  // Entry at round mod size(); throws EmptyCorpus.
  SeedGrammar select(std::uint64_t round) const;
  const std::string& select_digest(std::uint64_t round) const;

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  const std::vector<std::string>& insertion_order() const { return order_; }
  const std::string* blob(const std::string& digest) const;

  // Persists every current entry under `dir` (<digest>.seed + index) and keeps
  // writing through on each insert.
  void attach_directory(const std::filesystem::path& dir);
  static Corpus load_directory(const std::filesystem::path& dir);

 private:
  struct Entry {
    std::string blob;
    std::int64_t added_round;
  };

  void persist(const std::string& digest) const;
  void persist_index() const;

  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
  std::optional<std::filesystem::path> dir_;
};

}  // namespace tclfuzz
