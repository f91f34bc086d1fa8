#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tclfuzz/coverage.hpp"

namespace tclfuzz {

struct Summary {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  TclVector final_tcl;
  std::size_t corpus_size = 0;
  std::map<int, std::size_t> errors_by_status;
  std::uint64_t rounds = 0;
  std::uint64_t requests = 0;
  double elapsed_s = 0.0;

  std::size_t error_count() const;
  nlohmann::ordered_json to_json() const;
  static Summary from_json(const nlohmann::ordered_json& j);

  friend bool operator==(const Summary&, const Summary&) = default;
};

enum class SummaryFormat { Text, Json };

std::string render_summary(const Summary& summary, SummaryFormat format);

}  // namespace tclfuzz
