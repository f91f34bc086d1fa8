#include "tclfuzz/coverage.hpp"

#include <algorithm>

namespace tclfuzz {

namespace {

void collect_schema(const SchemaDesc& s, const std::string& prefix, std::set<std::string>& out) {
  if (s.kind == SchemaKind::Array) {
    if (s.items) collect_schema(*s.items, prefix, out);
    return;
  }
  if (s.kind != SchemaKind::Object) return;
  for (const auto& p : s.properties) {
    auto path = prefix.empty() ? p.name : prefix + "." + p.name;
    out.insert(path);
    collect_schema(p.schema, path, out);
  }
}

void collect_body(const nlohmann::json& j, const std::string& prefix, std::set<std::string>& out) {
  if (j.is_array()) {
    for (const auto& e : j) collect_body(e, prefix, out);
    return;
  }
  if (!j.is_object()) return;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto path = prefix.empty() ? it.key() : prefix + "." + it.key();
    out.insert(path);
    collect_body(it.value(), path, out);
  }
}

template <typename T>
bool subset(const std::set<T>& need, const std::set<T>& have) {
  return std::includes(have.begin(), have.end(), need.begin(), need.end());
}

bool is_2xx(int status) { return status >= 200 && status < 300; }

const OperationCriteria& criteria_for(const PathCriteria* pc, HttpMethod m) {
  static const OperationCriteria kEmpty;
  if (!pc) return kEmpty;
  auto it = pc->operations.find(m);
  return it == pc->operations.end() ? kEmpty : it->second;
}

bool params_used(const OperationDesc& op, const OperationCriteria& oc) {
  for (const auto& p : op.parameters) {
    if (!oc.params_used.count(p.name)) return false;
  }
  return true;
}

}  // namespace

std::set<std::string> schema_property_paths(const SchemaDesc& schema) {
  std::set<std::string> out;
  collect_schema(schema, "", out);
  return out;
}

std::set<std::string> body_property_paths(const nlohmann::json& body) {
  std::set<std::string> out;
  collect_body(body, "", out);
  return out;
}

std::set<std::string> documented_body_properties(const OperationDesc& op) {
  std::set<std::string> out;
  for (const auto& r : op.responses) {
    if (!is_2xx(r.status_code) || !r.body_schema) continue;
    collect_schema(*r.body_schema, "", out);
  }
  return out;
}

void update_state(CriteriaState& state, const HttpExchange& ex, const ApiModel& model) {
  auto& pc = state.paths[ex.node_ref.path];
  pc.requested = true;
  if (ex.transport_error()) return;
  auto& oc = pc.operations[ex.node_ref.method];
  oc.hit = true;
  if (!ex.request.content_type.empty()) oc.request_content_types_sent.insert(ex.request.content_type);
  if (!ex.response.content_type.empty()) oc.response_content_types_seen.insert(ex.response.content_type);
  oc.params_used.insert(ex.request.params_sent.begin(), ex.request.params_sent.end());
  oc.status_classes_seen.insert(ex.status_class());
  oc.status_codes_seen.insert(ex.response.status);
  if (!is_2xx(ex.response.status)) return;
  const OperationDesc* op = model.find_operation(ex.node_ref);
  if (!op) return;
  auto body = nlohmann::json::parse(ex.response.body, nullptr, false);
  if (body.is_discarded()) return;
  auto documented = documented_body_properties(*op);
  for (const auto& p : body_property_paths(body)) {
    if (documented.count(p)) oc.body_properties_seen.insert(p);
  }
}

bool evaluate_flow(CriteriaState& state, const OperationFlowSpec& flow,
                   std::span<const HttpExchange> round_transcript) {
  if (flow.steps.empty()) return false;
  std::size_t next = 0;
  for (const auto& ex : round_transcript) {
    if (next == flow.steps.size()) break;
    if (ex.node_ref == flow.steps[next].second && is_2xx(ex.response.status)) ++next;
  }
  if (next != flow.steps.size()) return false;
  state.paths[flow.resource_path].flow_satisfied = true;
  return true;
}

bool level_criteria_hold(const CriteriaState& state, const ApiModel& model, std::string_view path, int level) {
  const PathItem* item = model.find_path(path);
  if (!item) return false;
  auto it = state.paths.find(std::string(path));
  const PathCriteria* pc = it == state.paths.end() ? nullptr : &it->second;
  if (level <= 0) return true;
  if (level == 1) return pc && pc->requested;
  if (level == 7) return pc && pc->flow_satisfied;
  for (const auto& op : item->operations) {
    const auto& oc = criteria_for(pc, op.method);
    switch (level) {
      case 2:
        if (!oc.hit) return false;
        break;
      case 3: {
        std::set<std::string> req, resp;
        if (op.request_body) req.insert(op.request_body->content_types.begin(), op.request_body->content_types.end());
        for (const auto& r : op.responses) resp.insert(r.content_types.begin(), r.content_types.end());
        if (!subset(req, oc.request_content_types_sent) || !subset(resp, oc.response_content_types_seen)) return false;
        break;
      }
      case 4: {
        std::set<int> classes;
        for (const auto& r : op.responses) classes.insert(r.status_code / 100);
        if (!params_used(op, oc) || !subset(classes, oc.status_classes_seen)) return false;
        break;
      }
      case 5: {
        std::set<int> codes;
        for (const auto& r : op.responses) codes.insert(r.status_code);
        if (!params_used(op, oc) || !subset(codes, oc.status_codes_seen)) return false;
        break;
      }
      case 6:
        if (!params_used(op, oc) || !subset(documented_body_properties(op), oc.body_properties_seen)) return false;
        break;
      default:
        return false;
    }
  }
  return true;
}

int compute_tcl(const CriteriaState& state, const ApiModel& model, std::string_view path) {
  int level = 0;
  while (level < kMaxTcl && level_criteria_hold(state, model, path, level + 1)) ++level;
  return level;
}

TclVector tcl_vector(const CriteriaState& state, const ApiModel& model) {
  TclVector v;
  for (const auto& p : model.paths) v.emplace_back(p.path_template, compute_tcl(state, model, p.path_template));
  std::sort(v.begin(), v.end());
  return v;
}

int tcl_sum(const TclVector& v) {
  int s = 0;
  for (const auto& [_, l] : v) s += l;
  return s;
}

bool any_increase(const TclVector& before, const TclVector& after) {
  for (const auto& [path, level] : after) {
    auto it = std::find_if(before.begin(), before.end(), [&](const auto& e) { return e.first == path; });
    int prev = it == before.end() ? 0 : it->second;
    if (level > prev) return true;
  }
  return false;
}

}  // namespace tclfuzz
