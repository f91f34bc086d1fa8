#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tclfuzz/api_model.hpp"
#include "tclfuzz/coverage.hpp"
#include "tclfuzz/dependency.hpp"
#include "tclfuzz/fixture.hpp"
#include "tclfuzz/http_driver.hpp"
#include "tclfuzz/orchestrator.hpp"
#include "tclfuzz/util.hpp"
#include "tclfuzz/grammar.hpp"
#include "tclfuzz/pairwise.hpp"
#include "tclfuzz/rng.hpp"

namespace testsupport {

inline tclfuzz::ApiModel fixture_model() { return tclfuzz::parse_spec(tclfuzz::fixture::embedded_spec()); }

inline tclfuzz::DependencyConfig fixture_deps(const tclfuzz::ApiModel& m) {
  return tclfuzz::parse_dependency_config(tclfuzz::fixture::embedded_deps(), m);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("tclfuzz-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

struct FixtureInputs {
  std::filesystem::path spec, deps, auth;
};

inline FixtureInputs write_fixture_inputs(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  FixtureInputs in{dir / "realworld.yaml", dir / "deps.yaml", dir / "auth.yaml"};
  tclfuzz::write_file_atomic(in.spec, tclfuzz::fixture::embedded_spec());
  tclfuzz::write_file_atomic(in.deps, tclfuzz::fixture::embedded_deps());
  tclfuzz::write_file_atomic(in.auth, tclfuzz::fixture::embedded_auth());
  return in;
}

inline tclfuzz::CampaignConfig campaign_config(const FixtureInputs& in, const std::string& base_url,
                                               const std::filesystem::path& out, std::uint64_t seed,
                                               std::uint64_t rounds, bool guided = true) {
  tclfuzz::CampaignConfig c;
  c.spec_path = in.spec;
  c.dependency_path = in.deps;
  c.auth_path = in.auth;
  c.base_url = base_url;
  c.max_rounds = rounds;
  c.rng_seed = seed;
  c.guided = guided;
  c.output_dir = out;
  return c;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::vector<std::string> out;
  std::string text = tclfuzz::read_file(p);
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

// Fault id named in a recorded 500 response body, empty when there is none.
inline std::string fault_of(const tclfuzz::ErrorRecord& r) {
  auto sep = r.response_snapshot.find("\r\n\r\n");
  if (sep == std::string::npos) return {};
  auto body = nlohmann::json::parse(r.response_snapshot.substr(sep + 4), nullptr, false);
  if (!body.is_object() || !body.contains("fault") || !body["fault"].is_string()) return {};
  return body["fault"].get<std::string>();
}

// Arbitrary grammar: random paths, methods, slot kinds and raw byte values.
// With `all_bytes`, the first slot holds every byte value 0x00-0xFF.
inline tclfuzz::SeedGrammar random_grammar(tclfuzz::Rng& rng, bool all_bytes = false) {
  using namespace tclfuzz;
  SeedGrammar g;
  std::size_t nodes = 1 + rng.below(5);
  for (std::size_t i = 0; i < nodes; ++i) {
    RequestNode n;
    n.path = "/r" + std::to_string(rng.below(1000)) + "/{id}";
    n.method = static_cast<HttpMethod>(rng.below(8));
    n.repeat = static_cast<std::uint32_t>(1 + rng.below(6));
    std::size_t slots = rng.below(6);
    for (std::size_t k = 0; k < slots; ++k) {
      ParamSlot s;
      s.name = "p" + std::to_string(k);
      s.location = static_cast<ParamLocation>(rng.below(4));
      s.kind = static_cast<SchemaKind>(rng.below(6));
      std::size_t len = rng.below(40);
      for (std::size_t b = 0; b < len; ++b) s.value.push_back(static_cast<char>(rng.below(256)));
      s.present = rng.chance(0.7);
      s.required = rng.chance(0.5);
      n.slots.push_back(std::move(s));
    }
    g.nodes.push_back(std::move(n));
  }
  if (all_bytes) {
    std::string every;
    for (int b = 0; b < 256; ++b) every.push_back(static_cast<char>(b));
    ParamSlot s;
    s.name = "bytes";
    s.value = every;
    g.nodes[0].slots.insert(g.nodes[0].slots.begin(), s);
  }
  if (rng.chance(0.5)) {
    g.provenance.kind = Provenance::Kind::Mutated;
    g.provenance.parent_digest = std::string(64, 'a');
    g.provenance.round = rng.below(100000);
  }
  return g;
}

// Number of (column pair, level pair) combinations no row shows.
inline std::size_t uncovered_pairs(const std::vector<int>& counts, const std::vector<std::vector<int>>& rows) {
  std::size_t missing = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::size_t j = i + 1; j < counts.size(); ++j) {
      for (int a = 0; a < counts[i]; ++a) {
        for (int b = 0; b < counts[j]; ++b) {
          bool seen = false;
          for (const auto& r : rows) {
            if (r.size() == counts.size() && r[i] == a && r[j] == b) {
              seen = true;
              break;
            }
          }
          if (!seen) ++missing;
        }
      }
    }
  }
  return missing;
}

// Recomputes a path's coverage level straight from an exchange list,
// without CriteriaState. Each level predicate is written out separately.
class TclOracle {
 public:
  TclOracle(const tclfuzz::ApiModel& model, std::vector<tclfuzz::OperationFlowSpec> flows)
      : model_(model), flows_(std::move(flows)) {}

  // `rounds` holds the transcript split per round.
  int level(const std::vector<std::vector<tclfuzz::HttpExchange>>& rounds, const std::string& path) const {
    std::vector<const tclfuzz::HttpExchange*> all;
    for (const auto& r : rounds) {
      for (const auto& e : r) all.push_back(&e);
    }
    const tclfuzz::PathItem* item = model_.find_path(path);
    if (!item) return 0;

    auto on_op = [&](tclfuzz::HttpMethod m) {
      std::vector<const tclfuzz::HttpExchange*> out;
      for (const auto* e : all) {
        if (e->node_ref.path == path && e->node_ref.method == m && e->response.status != 0) out.push_back(e);
      }
      return out;
    };

    bool l1 = std::any_of(all.begin(), all.end(), [&](const auto* e) { return e->node_ref.path == path; });
    bool l2 = true, l3 = true, l4in = true, l4out = true, l5out = true, l6out = true;
    for (const auto& op : item->operations) {
      auto ex = on_op(op.method);
      if (ex.empty()) l2 = false;
      if (op.request_body) {
        for (const auto& ct : op.request_body->content_types) {
          if (std::none_of(ex.begin(), ex.end(), [&](const auto* e) { return e->request.content_type == ct; })) l3 = false;
        }
      }
      for (const auto& r : op.responses) {
        for (const auto& ct : r.content_types) {
          if (std::none_of(ex.begin(), ex.end(), [&](const auto* e) { return e->response.content_type == ct; })) l3 = false;
        }
        if (std::none_of(ex.begin(), ex.end(), [&](const auto* e) { return e->response.status / 100 == r.status_code / 100; })) l4out = false;
        if (std::none_of(ex.begin(), ex.end(), [&](const auto* e) { return e->response.status == r.status_code; })) l5out = false;
      }
      for (const auto& p : op.parameters) {
        if (std::none_of(ex.begin(), ex.end(), [&](const auto* e) {
              return std::find(e->request.params_sent.begin(), e->request.params_sent.end(), p.name) != e->request.params_sent.end();
            })) {
          l4in = false;
        }
      }
      for (const auto& prop : documented(op)) {
        bool seen = false;
        for (const auto* e : ex) {
          if (e->response.status < 200 || e->response.status >= 300) continue;
          auto body = nlohmann::json::parse(e->response.body, nullptr, false);
          if (!body.is_discarded() && has_property(body, split(prop), 0)) seen = true;
        }
        if (!seen) l6out = false;
      }
    }
    bool l7 = false;
    for (const auto& f : flows_) {
      if (f.resource_path != path || f.steps.empty()) continue;
      for (const auto& r : rounds) {
        if (flow_in(r, f)) l7 = true;
      }
    }
    bool ladder[] = {l1, l2, l3, l4in && l4out, l4in && l5out, l4in && l6out, l7};
    int level = 0;
    for (bool ok : ladder) {
      if (!ok) break;
      ++level;
    }
    return level;
  }

 private:
  static std::vector<std::string> split(const std::string& p) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : p) {
      if (c == '.') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  }

  static bool has_property(const nlohmann::json& j, const std::vector<std::string>& parts, std::size_t i) {
    if (i == parts.size()) return true;
    if (j.is_array()) {
      return std::any_of(j.begin(), j.end(), [&](const nlohmann::json& e) { return has_property(e, parts, i); });
    }
    if (!j.is_object() || !j.contains(parts[i])) return false;
    return has_property(j.at(parts[i]), parts, i + 1);
  }

  static void schema_props(const tclfuzz::SchemaDesc& s, const std::string& prefix, std::set<std::string>& out) {
    if (s.kind == tclfuzz::SchemaKind::Array && s.items) return schema_props(*s.items, prefix, out);
    for (const auto& p : s.properties) {
      std::string path = prefix.empty() ? p.name : prefix + "." + p.name;
      out.insert(path);
      schema_props(p.schema, path, out);
    }
  }

  static std::set<std::string> documented(const tclfuzz::OperationDesc& op) {
    std::set<std::string> out;
    for (const auto& r : op.responses) {
      if (r.status_code >= 200 && r.status_code < 300 && r.body_schema) schema_props(*r.body_schema, "", out);
    }
    return out;
  }

  static bool flow_in(const std::vector<tclfuzz::HttpExchange>& round, const tclfuzz::OperationFlowSpec& f) {
    // Search every choice of positions, not just the greedy one.
    std::function<bool(std::size_t, std::size_t)> match = [&](std::size_t step, std::size_t from) {
      if (step == f.steps.size()) return true;
      for (std::size_t k = from; k < round.size(); ++k) {
        const auto& e = round[k];
        if (e.node_ref == f.steps[step].second && e.response.status >= 200 && e.response.status < 300 && match(step + 1, k + 1)) {
          return true;
        }
      }
      return false;
    };
    return match(0, 0);
  }

  const tclfuzz::ApiModel& model_;
  std::vector<tclfuzz::OperationFlowSpec> flows_;
};

}  // namespace testsupport
