#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tclfuzz/api_model.hpp"
#include "tclfuzz/grammar.hpp"
#include "tclfuzz/keypath.hpp"
#include "tclfuzz/request_plan.hpp"
#include "tclfuzz/response_store.hpp"

namespace tclfuzz {

struct IdBinding {
  OperationRef consumer;
  std::string key;  // parameter name on the consumer
  OperationRef source;
  KeyPath source_keypath;

  friend bool operator==(const IdBinding&, const IdBinding&) = default;
};

enum class FlowStep : std::uint8_t { Create, ReadSingle, ReadAll, Update, Delete };

std::string_view to_string(FlowStep s);
std::optional<FlowStep> parse_flow_step(std::string_view text);

struct OperationFlowSpec {
  std::string resource_path;
  // Declared order is the required order.
  std::vector<std::pair<FlowStep, OperationRef>> steps;

  friend bool operator==(const OperationFlowSpec&, const OperationFlowSpec&) = default;
};

struct DependencyConfig {
  std::vector<IdBinding> bindings;
  std::vector<OperationFlowSpec> flows;

  std::vector<const IdBinding*> bindings_for(const OperationRef& consumer) const;
  const IdBinding* binding_for(const OperationRef& consumer, std::string_view key) const;
  // Names of bound (ID) parameters of `consumer`.
  std::set<std::string> id_params(const OperationRef& consumer) const;
};

// Parses the path-dependency YAML and validates it against `model`.
// Throws MalformedConfig, UnknownPath or UnknownParameter.
DependencyConfig parse_dependency_config(std::string_view yaml, const ApiModel& model);

// Creation chain for each path prefix, supporting reads/updates, the target,
// then DELETE teardown deepest-first. Throws UnsatisfiableDependency when a
// template variable has neither a binding nor a creating POST in the plan.
RequestPlan plan_requests(const OperationRef& target, const ApiModel& model,
                          const DependencyConfig& config);

// Rewrites ID slots from the most recent recorded source response. Slots
// whose index appears in `skip` (per node) are left alone.
SeedGrammar bind_id_params(const SeedGrammar& grammar, const DependencyConfig& config,
                           const ResponseStore& history);

// Single-node variant used right before a node is sent. Returns the number of
// slots rewritten.
int bind_node(RequestNode& node, const DependencyConfig& config, const ResponseStore& history,
              const std::vector<bool>* skip = nullptr);

}  // namespace tclfuzz
