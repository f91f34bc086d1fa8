#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "tclfuzz/http_method.hpp"

namespace tclfuzz {

enum class PlanRole : std::uint8_t { Target, PrefixCreate, PrefixSupport, Teardown };

std::string_view to_string(PlanRole r);

struct PlanEntry {
  OperationRef op;
  PlanRole role = PlanRole::Target;

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

struct RequestPlan {
  std::vector<PlanEntry> entries;

  bool contains(const OperationRef& op) const;
  // Index of the first entry for `op`, or -1.
  int index_of(const OperationRef& op) const;
};

}  // namespace tclfuzz
