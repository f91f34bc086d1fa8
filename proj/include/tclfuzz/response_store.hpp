#pragma once

#include <cstddef>
#include <deque>
#include <map>

#include <json.hpp>

#include "tclfuzz/http_method.hpp"

namespace tclfuzz {

// Parsed bodies of successful (2xx) responses, newest first, per operation.
class ResponseStore {
 public:
  static constexpr std::size_t kHistory = 8;

  void record(const OperationRef& op, nlohmann::json body);

  // Newest first; nullptr when nothing was recorded for `op`.
  const std::deque<nlohmann::json>* history(const OperationRef& op) const;
  const nlohmann::json* latest(const OperationRef& op) const;

  bool empty() const { return entries_.empty(); }
  void clear() { entries_.clear(); }

 private:
  std::map<OperationRef, std::deque<nlohmann::json>> entries_;
};

}  // namespace tclfuzz
