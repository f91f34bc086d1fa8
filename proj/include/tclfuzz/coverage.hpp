#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tclfuzz/api_model.hpp"
#include "tclfuzz/dependency.hpp"
#include "tclfuzz/http_driver.hpp"

namespace tclfuzz {

struct OperationCriteria {
  bool hit = false;
  std::set<std::string> request_content_types_sent;
  std::set<std::string> response_content_types_seen;
  std::set<std::string> params_used;
  std::set<int> status_classes_seen;
  std::set<int> status_codes_seen;
  std::set<std::string> body_properties_seen;
};

struct PathCriteria {
  bool requested = false;
  bool flow_satisfied = false;
  std::map<HttpMethod, OperationCriteria> operations;
};

// Accumulated criteria for every path seen so far. All sets only grow.
struct CriteriaState {
  std::map<std::string, PathCriteria> paths;
};

inline constexpr int kMaxTclWithoutFlow = 6;
inline constexpr int kMaxTcl = 7;

// Property paths a body can show: "article", "article.slug", array items
// collapsed ("articles.slug").
std::set<std::string> schema_property_paths(const SchemaDesc& schema);
std::set<std::string> body_property_paths(const nlohmann::json& body);
// Union over the operation's documented 2xx response schemas.
std::set<std::string> documented_body_properties(const OperationDesc& op);

void update_state(CriteriaState& state, const HttpExchange& exchange, const ApiModel& model);

// True iff `round_transcript` holds the flow's steps in declared order, each
// answered with 2xx. Latches flow_satisfied on the resource path.
bool evaluate_flow(CriteriaState& state, const OperationFlowSpec& flow,
                   std::span<const HttpExchange> round_transcript);

// Whether the criteria of `level` alone (not the lower ones) hold.
bool level_criteria_hold(const CriteriaState& state, const ApiModel& model,
                         std::string_view path, int level);

int compute_tcl(const CriteriaState& state, const ApiModel& model, std::string_view path);

using TclVector = std::vector<std::pair<std::string, int>>;

// Every model path, sorted by template.
TclVector tcl_vector(const CriteriaState& state, const ApiModel& model);
int tcl_sum(const TclVector& v);
bool any_increase(const TclVector& before, const TclVector& after);

}  // namespace tclfuzz
