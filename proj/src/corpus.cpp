#include "tclfuzz/corpus.hpp"

#include <algorithm>
#include <sstream>

#include "tclfuzz/errors.hpp"
#include "tclfuzz/util.hpp"

namespace tclfuzz {

InsertResult Corpus::insert(const SeedGrammar& grammar, std::int64_t round) {
  auto digest = grammar_digest(grammar);
  if (entries_.count(digest)) return InsertResult::Duplicate;
  entries_.emplace(digest, Entry{serialize_seed(grammar), round});
  order_.push_back(digest);
  if (dir_) {
    persist(digest);
    persist_index();
  }
  return InsertResult::Inserted;
}

const std::string& Corpus::select_digest(std::uint64_t round) const {
  if (order_.empty()) throw EmptyCorpus("no seeds");
  return order_[round % order_.size()];
}

SeedGrammar Corpus::select(std::uint64_t round) const {
  return deserialize_seed(entries_.at(select_digest(round)).blob);
}

const std::string* Corpus::blob(const std::string& digest) const {
  auto it = entries_.find(digest);
  return it == entries_.end() ? nullptr : &it->second.blob;
}

void Corpus::attach_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  dir_ = dir;
  for (const auto& d : order_) persist(d);
  persist_index();
}

void Corpus::persist(const std::string& digest) const {
  write_file_atomic(*dir_ / (digest + ".seed"), entries_.at(digest).blob);
}

void Corpus::persist_index() const {
  std::ostringstream out;
  for (const auto& d : order_) out << d << ' ' << entries_.at(d).added_round << '\n';
  write_file_atomic(*dir_ / "index", out.str());
}

Corpus Corpus::load_directory(const std::filesystem::path& dir) {
  Corpus c;
  std::istringstream in(read_file(dir / "index"));
  std::string digest;
  std::int64_t round = 0;
  while (in >> digest >> round) {
    auto blob = read_file(dir / (digest + ".seed"));
    auto g = deserialize_seed(blob);
    if (grammar_digest(g) != digest) throw CorruptSeed("digest mismatch for " + digest);
    c.entries_.emplace(digest, Entry{std::move(blob), round});
    c.order_.push_back(digest);
  }
  c.dir_ = dir;
  return c;
}

}  // namespace tclfuzz
