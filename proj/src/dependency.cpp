#include "tclfuzz/dependency.hpp"

#include <algorithm>

#include <yaml-cpp/yaml.h>

#include "tclfuzz/errors.hpp"

namespace tclfuzz {

void ResponseStore::record(const OperationRef& op, nlohmann::json body) {
  auto& h = entries_[op];
  h.push_front(std::move(body));
  while (h.size() > kHistory) h.pop_back();
}

const std::deque<nlohmann::json>* ResponseStore::history(const OperationRef& op) const {
  auto it = entries_.find(op);
  return it == entries_.end() ? nullptr : &it->second;
}

const nlohmann::json* ResponseStore::latest(const OperationRef& op) const {
  const auto* h = history(op);
  return h && !h->empty() ? &h->front() : nullptr;
}

std::string_view to_string(PlanRole r) {
  switch (r) {
    case PlanRole::Target: return "target";
    case PlanRole::PrefixCreate: return "prefix-create";
    case PlanRole::PrefixSupport: return "prefix-support";
    case PlanRole::Teardown: return "teardown";
  }
  return "unknown";
}

bool RequestPlan::contains(const OperationRef& op) const { return index_of(op) >= 0; }

int RequestPlan::index_of(const OperationRef& op) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].op == op) return static_cast<int>(i);
  }
  return -1;
}

std::string_view to_string(FlowStep s) {
  switch (s) {
    case FlowStep::Create: return "create";
    case FlowStep::ReadSingle: return "read_single";
    case FlowStep::ReadAll: return "read_all";
    case FlowStep::Update: return "update";
    case FlowStep::Delete: return "delete";
  }
  return "unknown";
}

std::optional<FlowStep> parse_flow_step(std::string_view text) {
  for (auto s : {FlowStep::Create, FlowStep::ReadSingle, FlowStep::ReadAll, FlowStep::Update, FlowStep::Delete}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::vector<const IdBinding*> DependencyConfig::bindings_for(const OperationRef& consumer) const {
  std::vector<const IdBinding*> out;
  for (const auto& b : bindings) {
    if (b.consumer == consumer) out.push_back(&b);
  }
  return out;
}

const IdBinding* DependencyConfig::binding_for(const OperationRef& consumer, std::string_view key) const {
  for (const auto& b : bindings) {
    if (b.consumer == consumer && b.key == key) return &b;
  }
  return nullptr;
}

std::set<std::string> DependencyConfig::id_params(const OperationRef& consumer) const {
  std::set<std::string> out;
  for (const auto* b : bindings_for(consumer)) out.insert(b->key);
  return out;
}

namespace {

std::string scalar(const YAML::Node& n, const std::string& what) {
  if (!n || !n.IsScalar()) throw MalformedConfig(what + " must be a scalar");
  return n.as<std::string>();
}

HttpMethod method_of(const std::string& text) {
  auto m = parse_method(text);
  if (!m) throw MalformedConfig("unknown HTTP method '" + text + "'");
  return *m;
}

OperationRef existing_op(const ApiModel& model, const std::string& path, HttpMethod m) {
  if (!model.find_path(path)) throw UnknownPath(path);
  if (!model.find_operation(path, m)) {
    throw UnknownPath(std::string(to_string(m)) + " " + path + " is not documented");
  }
  return {path, m};
}

void parse_flows(const YAML::Node& flows, const ApiModel& model, DependencyConfig& cfg) {
  if (flows.IsNull()) return;
  if (!flows.IsSequence()) throw MalformedConfig("flows must be a list");
  for (const auto& f : flows) {
    if (!f.IsMap()) throw MalformedConfig("flow entries must be mappings");
    OperationFlowSpec spec;
    spec.resource_path = scalar(f["resource"], "flow resource");
    if (!model.find_path(spec.resource_path)) throw UnknownPath(spec.resource_path);
    const auto steps = f["steps"];
    if (!steps || !steps.IsMap()) throw MalformedConfig("flow steps must be a mapping");
    for (auto it = steps.begin(); it != steps.end(); ++it) {
      auto name = it->first.as<std::string>();
      auto step = parse_flow_step(name);
      if (!step) throw MalformedConfig("unknown flow step '" + name + "'");
      const auto& v = it->second;
      if (!v.IsSequence() || v.size() != 2) {
        throw MalformedConfig("flow step '" + name + "' must be [METHOD, path]");
      }
      auto op = existing_op(model, scalar(v[1], "flow step path"), method_of(scalar(v[0], "flow step method")));
      spec.steps.emplace_back(*step, std::move(op));
    }
    if (spec.steps.empty()) throw MalformedConfig("flow for " + spec.resource_path + " has no steps");
    cfg.flows.push_back(std::move(spec));
  }
}

}  // namespace

DependencyConfig parse_dependency_config(std::string_view yaml, const ApiModel& model) {
  DependencyConfig cfg;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw MalformedConfig(e.what());
  }
  if (!root || root.IsNull()) return cfg;
  if (!root.IsMap()) throw MalformedConfig("top level must be a mapping");

  try {
    if (auto flows = root["flows"]) parse_flows(flows, model, cfg);
    auto paths = root["paths"];
    if (!paths || paths.IsNull()) return cfg;
    if (!paths.IsMap()) throw MalformedConfig("paths must be a mapping");
    for (auto pit = paths.begin(); pit != paths.end(); ++pit) {
      auto path = pit->first.as<std::string>();
      if (path == "flows") {
        parse_flows(pit->second, model, cfg);
        continue;
      }
      if (!model.find_path(path)) throw UnknownPath(path);
      if (!pit->second.IsMap()) throw MalformedConfig(path + " must map methods to entries");
      for (auto mit = pit->second.begin(); mit != pit->second.end(); ++mit) {
        auto consumer = existing_op(model, path, method_of(mit->first.as<std::string>()));
        const auto* op = model.find_operation(consumer);
        auto ids = mit->second["ids"];
        if (!ids || ids.IsNull()) continue;
        if (!ids.IsSequence()) throw MalformedConfig("ids must be a list");
        for (const auto& id : ids) {
          IdBinding b;
          b.consumer = consumer;
          b.key = scalar(id["key"], "id key");
          if (!op->find_param(b.key)) {
            throw UnknownParameter("'" + b.key + "' on " + to_string(consumer));
          }
          const auto src = id["source"];
          if (!src || !src.IsMap()) throw MalformedConfig("id source must be a mapping");
          b.source = existing_op(model, scalar(src["path"], "source path"),
                                 method_of(scalar(src["method"], "source method")));
          b.source_keypath = KeyPath::parse(scalar(src["key"], "source key"));
          if (cfg.binding_for(b.consumer, b.key)) {
            throw MalformedConfig("duplicate binding for '" + b.key + "' on " + to_string(consumer));
          }
          cfg.bindings.push_back(std::move(b));
        }
      }
    }
  } catch (const YAML::Exception& e) {
    throw MalformedConfig(e.what());
  }
  return cfg;
}

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> segs;
  std::size_t i = 0;
  while (i < path.size()) {
    if (path[i] == '/') {
      ++i;
      continue;
    }
    auto j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    segs.emplace_back(path.substr(i, j - i));
    i = j;
  }
  return segs;
}

bool is_variable(std::string_view seg) { return seg.size() >= 2 && seg.front() == '{' && seg.back() == '}'; }

std::string join_prefix(const std::vector<std::string>& segs, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += "/" + segs[i];
  return out.empty() ? "/" : out;
}

constexpr HttpMethod kItemOrder[] = {HttpMethod::Put, HttpMethod::Patch, HttpMethod::Get, HttpMethod::Delete};

int item_rank(HttpMethod m) {
  for (int i = 0; i < 4; ++i) {
    if (kItemOrder[i] == m) return i;
  }
  return 4;
}

// Item path (collection + "/{var}") that has a DELETE.
const PathItem* item_of(const ApiModel& model, const std::string& collection) {
  for (const auto& p : model.paths) {
    auto segs = split_path(p.path_template);
    auto csegs = split_path(collection);
    if (segs.size() != csegs.size() + 1 || !is_variable(segs.back())) continue;
    if (!std::equal(csegs.begin(), csegs.end(), segs.begin())) continue;
    if (p.find(HttpMethod::Delete)) return &p;
  }
  return nullptr;
}

RequestPlan chain_plan(const OperationRef& target, const ApiModel& model, bool teardown) {
  RequestPlan plan;
  auto segs = split_path(target.path);
  std::vector<std::string> created;
  auto add = [&](const std::string& path, HttpMethod m, PlanRole role) {
    plan.entries.push_back({{path, m}, role});
    if (m == HttpMethod::Post) created.push_back(path);
  };

  for (std::size_t k = 1; k <= segs.size(); ++k) {
    auto prefix = join_prefix(segs, k);
    const PathItem* item = model.find_path(prefix);
    if (!item) continue;
    const bool is_target_path = prefix == target.path;
    if (!is_variable(segs[k - 1])) {
      if (item->find(HttpMethod::Post) && !(is_target_path && target.method == HttpMethod::Post)) {
        if (!is_target_path || method_rank(HttpMethod::Post) < method_rank(target.method)) {
          add(prefix, HttpMethod::Post, PlanRole::PrefixCreate);
        }
      }
    } else {
      for (auto m : {HttpMethod::Put, HttpMethod::Patch, HttpMethod::Get}) {
        if (!item->find(m)) continue;
        if (is_target_path && item_rank(m) >= item_rank(target.method)) continue;
        add(prefix, m, PlanRole::PrefixSupport);
      }
    }
  }
  add(target.path, target.method, PlanRole::Target);

  if (teardown) {
    for (auto it = created.rbegin(); it != created.rend(); ++it) {
      const PathItem* item = item_of(model, *it);
      if (!item) continue;
      OperationRef del{item->path_template, HttpMethod::Delete};
      if (del == target) continue;
      plan.entries.push_back({del, PlanRole::Teardown});
    }
  }
  return plan;
}

void satisfy(RequestPlan& plan, const ApiModel& model, const DependencyConfig& config, int depth) {
  if (depth > 8) throw UnsatisfiableDependency("binding sources nest too deeply");
  for (std::size_t i = 0; i < plan.entries.size(); ++i) {
    const auto op = plan.entries[i].op;
    auto segs = split_path(op.path);
    for (std::size_t k = 0; k < segs.size(); ++k) {
      if (!is_variable(segs[k])) continue;
      auto var = segs[k].substr(1, segs[k].size() - 2);
      if (const auto* b = config.binding_for(op, var)) {
        int at = plan.index_of(b->source);
        if (at >= 0 && at < static_cast<int>(i)) continue;
        if (b->source == op) throw UnsatisfiableDependency(to_string(op) + " binds '" + var + "' from itself");
        RequestPlan src = chain_plan(b->source, model, false);
        satisfy(src, model, config, depth + 1);
        plan.entries.insert(plan.entries.begin(), src.entries.begin(), src.entries.end());
        i = static_cast<std::size_t>(-1);  // restart: indices shifted
        break;
      }
      OperationRef creator{join_prefix(segs, k), HttpMethod::Post};
      int at = plan.index_of(creator);
      if (at < 0 || at >= static_cast<int>(i)) {
        throw UnsatisfiableDependency("no source for '" + var + "' in " + to_string(op));
      }
    }
  }
}

}  // namespace

RequestPlan plan_requests(const OperationRef& target, const ApiModel& model, const DependencyConfig& config) {
  if (!model.find_operation(target)) throw UnknownPath(to_string(target));
  RequestPlan plan = chain_plan(target, model, true);
  satisfy(plan, model, config, 0);
  return plan;
}

int bind_node(RequestNode& node, const DependencyConfig& config, const ResponseStore& history,
              const std::vector<bool>* skip) {
  int rewritten = 0;
  for (const auto* b : config.bindings_for(node.ref())) {
    ParamSlot* slot = node.find_any(b->key);
    if (!slot) continue;
    auto index = static_cast<std::size_t>(slot - node.slots.data());
    if (skip && index < skip->size() && (*skip)[index]) continue;
    const auto* h = history.history(b->source);
    if (!h) continue;
    for (const auto& body : *h) {
      auto values = extract_by_keypath(body, b->source_keypath);
      if (values.empty()) continue;
      slot->value = literal_text(values.front());
      ++rewritten;
      break;
    }
  }
  return rewritten;
}

SeedGrammar bind_id_params(const SeedGrammar& grammar, const DependencyConfig& config,
                           const ResponseStore& history) {
  SeedGrammar out = grammar;
  for (auto& node : out.nodes) bind_node(node, config, history);
  return out;
}

}  // namespace tclfuzz
