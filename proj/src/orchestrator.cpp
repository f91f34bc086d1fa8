#include "tclfuzz/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tclfuzz/errors.hpp"
#include "tclfuzz/util.hpp"

namespace tclfuzz {

namespace {

std::optional<OperationRef> parse_target(std::string_view text) {
  auto sp = text.find(' ');
  if (sp == std::string_view::npos) return std::nullopt;
  auto m = parse_method(text.substr(0, sp));
  auto path = text.substr(sp + 1);
  while (!path.empty() && path.front() == ' ') path.remove_prefix(1);
  if (!m || path.empty() || path.front() != '/') return std::nullopt;
  return OperationRef{std::string(path), *m};
}

nlohmann::ordered_json snapshot_json(const std::string& bytes) {
  if (is_valid_utf8(bytes)) return {{"encoding", "utf8"}, {"data", bytes}};
  return {{"encoding", "base64"}, {"data", base64_encode(bytes)}};
}

std::string snapshot_bytes(const nlohmann::json& j) {
  auto data = j.at("data").get<std::string>();
  return j.at("encoding").get<std::string>() == "base64" ? base64_decode(data) : data;
}

std::string path_string(const std::optional<std::filesystem::path>& p) { return p ? p->string() : std::string(); }

}  // namespace

void CampaignConfig::validate() const {
  if (spec_path.empty()) throw ConfigError("no OpenAPI document given");
  if (!time_budget_s && !max_rounds) throw ConfigError("set a time budget or a round limit");
  if (time_budget_s && (!std::isfinite(*time_budget_s) || *time_budget_s < 0)) {
    throw ConfigError("time budget must be a non-negative number of seconds");
  }
  if (request_timeout.count() <= 0) throw ConfigError("request timeout must be positive");
  for (const auto& t : targets) {
    if (!parse_target(t)) throw ConfigError("target '" + t + "' is not \"METHOD /path\"");
  }
}

nlohmann::ordered_json CampaignConfig::to_json() const {
  nlohmann::ordered_json j;
  j["spec"] = spec_path.string();
  j["deps"] = dependency_path ? nlohmann::ordered_json(path_string(dependency_path)) : nlohmann::ordered_json();
  j["auth"] = auth_path ? nlohmann::ordered_json(path_string(auth_path)) : nlohmann::ordered_json();
  j["base_url"] = base_url ? nlohmann::ordered_json(*base_url) : nlohmann::ordered_json();
  j["budget_s"] = time_budget_s ? nlohmann::ordered_json(*time_budget_s) : nlohmann::ordered_json();
  j["rounds"] = max_rounds ? nlohmann::ordered_json(*max_rounds) : nlohmann::ordered_json();
  j["seed"] = rng_seed;
  j["guided"] = guided;
  j["out"] = output_dir.string();
  j["targets"] = targets;
  j["timeout_ms"] = request_timeout.count();
  return j;
}

std::string ErrorRecord::make_key(const std::string& path, HttpMethod method, const std::vector<std::string>& params) {
  auto sorted = params;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  nlohmann::ordered_json j = {path, std::string(to_string(method)), sorted};
  return sha256_hex(j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace));
}

std::string ErrorRecord::to_jsonl() const {
  nlohmann::ordered_json j;
  j["dedup_key"] = dedup_key;
  j["path"] = path;
  j["method"] = std::string(to_string(method));
  j["params"] = params;
  j["status"] = status;
  j["round"] = round;
  j["node"] = node_index;
  j["request"] = snapshot_json(request_snapshot);
  j["response"] = snapshot_json(response_snapshot);
  j["seed"] = base64_encode(seed);
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

ErrorRecord ErrorRecord::from_json(const nlohmann::json& j) {
  ErrorRecord r;
  r.dedup_key = j.at("dedup_key").get<std::string>();
  r.path = j.at("path").get<std::string>();
  auto m = parse_method(j.at("method").get<std::string>());
  if (!m) throw CorruptSeed("error record with bad method");
  r.method = *m;
  r.params = j.at("params").get<std::vector<std::string>>();
  r.status = j.at("status").get<int>();
  r.round = j.at("round").get<std::uint64_t>();
  r.node_index = j.at("node").get<std::size_t>();
  r.request_snapshot = snapshot_bytes(j.at("request"));
  r.response_snapshot = snapshot_bytes(j.at("response"));
  r.seed = base64_decode(j.at("seed").get<std::string>());
  return r;
}

bool ErrorStore::insert(ErrorRecord record) {
  if (index_.count(record.dedup_key)) return false;
  index_.emplace(record.dedup_key, records_.size());
  records_.push_back(std::move(record));
  return true;
}

ResponseClass classify_response(const HttpExchange& exchange) {
  if (!exchange.transport_error() && exchange.status_class() == 5) return ResponseClass::Error;
  return ResponseClass::Ordinary;
}

Campaign::Campaign(ApiModel model, DependencyConfig deps, std::optional<AuthConfig> auth, CampaignConfig config,
                   Transport& transport)
    : model_(std::move(model)),
      deps_(std::move(deps)),
      config_(std::move(config)),
      transport_(transport),
      base_url_(config_.base_url.value_or(model_.base_url)),
      rng_(config_.rng_seed) {
  if (auth && auth->mode != AuthConfig::Mode::None) auth_.emplace(std::move(*auth), base_url_);
  started_ = std::chrono::steady_clock::now();
}

void Campaign::initialize() {
  if (initialized_) return;
  std::vector<OperationRef> targets;
  if (config_.targets.empty()) {
    for (const auto& e : list_operations(model_)) targets.push_back(e.ref());
  } else {
    for (const auto& t : config_.targets) {
      auto ref = parse_target(t);
      if (!ref || !model_.find_operation(*ref)) throw ConfigError("unknown target '" + t + "'");
      targets.push_back(*ref);
    }
  }
  for (const auto& t : targets) {
    try {
      corpus_.insert(build_initial_grammar(plan_requests(t, model_, deps_), model_));
    } catch (const Error& e) {
      throw ConfigError(std::string("cannot plan ") + to_string(t) + ": " + e.what());
    }
  }
  if (corpus_.empty()) throw ConfigError("the document has no operations to fuzz");
  if (auth_) {
    try {
      auth_->header(transport_);
    } catch (const TokenUnavailable& e) {
      throw ConfigError(e.what());
    }
  }
  if (!config_.output_dir.empty()) {
    try {
      std::filesystem::create_directories(config_.output_dir);
      corpus_.attach_directory(config_.output_dir / "corpus");
    } catch (const std::filesystem::filesystem_error& e) {
      throw ConfigError(e.what());
    }
  }
  started_ = std::chrono::steady_clock::now();
  initialized_ = true;
}

double Campaign::elapsed_s() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
}

bool Campaign::budget_exhausted() const {
  if (config_.max_rounds && round_ >= *config_.max_rounds) return true;
  if (config_.time_budget_s && elapsed_s() >= *config_.time_budget_s) return true;
  return false;
}

void Campaign::send_node(std::size_t index, RequestNode& node, const SeedGrammar& grammar,
                         std::vector<HttpExchange>& transcript, RoundStats& stats) {
  for (std::uint32_t r = 0; r < node.repeat; ++r) {
    std::optional<Header> header;
    if (auth_) {
      try {
        header = auth_->header(transport_);
      } catch (const TokenUnavailable&) {
      }
    }
    auto request = render_request(node, model_, base_url_, header, r);
    auto ex = send_and_record(request, store_, transport_, config_.request_timeout);
    if (ex.response.status == 401 && auth_ && auth_->config().mode == AuthConfig::Mode::TokenEndpoint &&
        auth_->refresh(transport_)) {
      request = render_request(node, model_, base_url_, auth_->header(transport_), r);
      ex = send_and_record(request, store_, transport_, config_.request_timeout);
    }
    ex.round = round_;
    ex.node_index = index;
    ex.node_ref = node.ref();

    ++requests_;
    ++stats.requests;
    if (ex.transport_error()) {
      ++stats.transport_errors;
    } else if (ex.status_class() == 2) {
      ++stats.status_2xx;
    } else if (ex.status_class() == 4) {
      ++stats.status_4xx;
    } else if (ex.status_class() == 5) {
      ++stats.status_5xx;
    } else {
      ++stats.status_other;
    }

    update_state(state_, ex, model_);
    if (classify_response(ex) == ResponseClass::Error) {
      ++error_exchanges_;
      ErrorRecord rec;
      rec.path = node.path;
      rec.method = node.method;
      rec.params = ex.request.params_sent;
      std::sort(rec.params.begin(), rec.params.end());
      rec.params.erase(std::unique(rec.params.begin(), rec.params.end()), rec.params.end());
      rec.status = ex.response.status;
      rec.request_snapshot = ex.request.snapshot();
      rec.response_snapshot = ex.response.snapshot();
      rec.round = round_;
      rec.node_index = index;
      rec.dedup_key = ErrorRecord::make_key(rec.path, rec.method, rec.params);
      rec.seed = serialize_seed(grammar);
      if (errors_.insert(std::move(rec))) ++stats.errors_added;
    }
    transcript.push_back(std::move(ex));
  }
}

RoundStats Campaign::run_round() {
  if (!initialized_) initialize();
  auto round_start = std::chrono::steady_clock::now();
  RoundStats stats;
  stats.round = round_;
  auto before = tcl_vector(state_, model_);
  stats.tcl_sum_before = tcl_sum(before);

  const std::string digest = corpus_.select_digest(round_);
  SeedGrammar seed = deserialize_seed(*corpus_.blob(digest));
  SeedGrammar bound = bind_id_params(seed, deps_, store_);
  SeedGrammar mutated = mutate_grammar(bound, schedules_, rng_, deps_, round_, digest);

  std::vector<HttpExchange> transcript;
  for (std::size_t i = 0; i < mutated.nodes.size(); ++i) {
    RequestNode node = mutated.nodes[i];
    std::vector<bool> touched(node.slots.size(), false);
    for (std::size_t s = 0; s < node.slots.size(); ++s) touched[s] = node.slots[s] != bound.nodes[i].slots[s];
    bind_node(node, deps_, store_, &touched);
    send_node(i, node, mutated, transcript, stats);
  }
  for (const auto& flow : deps_.flows) evaluate_flow(state_, flow, transcript);

  auto after = tcl_vector(state_, model_);
  stats.tcl_sum_after = tcl_sum(after);
  if (config_.guided && any_increase(before, after)) {
    stats.seed_added = corpus_.insert(mutated, static_cast<std::int64_t>(round_)) == InsertResult::Inserted;
  }

  stats.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - round_start).count();
  trend_.push_back({round_, requests_, elapsed_s(), after, stats.tcl_sum_after});
  ++round_;
  return stats;
}

void Campaign::run() {
  initialize();
  while (!budget_exhausted()) run_round();
}

Summary Campaign::summary() const {
  Summary s;
  s.config = config_.to_json();
  s.final_tcl = tcl_vector(state_, model_);
  s.corpus_size = corpus_.size();
  for (const auto& r : errors_.records()) ++s.errors_by_status[r.status];
  s.rounds = round_;
  s.requests = requests_;
  s.elapsed_s = initialized_ ? elapsed_s() : 0.0;
  return s;
}

void Campaign::emit_reports() const {
  if (config_.output_dir.empty()) return;
  tclfuzz::emit_reports(errors_.records(), trend_, summary(), config_.output_dir);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_trend_csv(const std::vector<TrendRow>& trend) {
  std::string out = "round,requests";
  if (!trend.empty()) {
    for (const auto& [path, _] : trend.front().tcl) out += "," + csv_field(path);
  }
  out += ",sum\n";
  for (const auto& row : trend) {
    out += std::to_string(row.round) + "," + std::to_string(row.requests);
    for (const auto& [_, level] : row.tcl) out += "," + std::to_string(level);
    out += "," + std::to_string(row.sum) + "\n";
  }
  return out;
}

std::string render_timing_csv(const std::vector<TrendRow>& trend) {
  std::string out = "round,requests,elapsed_s\n";
  char buf[64];
  for (const auto& row : trend) {
    std::snprintf(buf, sizeof buf, "%.6f", row.elapsed_s);
    out += std::to_string(row.round) + "," + std::to_string(row.requests) + "," + buf + "\n";
  }
  return out;
}

void emit_reports(const std::vector<ErrorRecord>& errors, const std::vector<TrendRow>& trend, const Summary& summary,
                  const std::filesystem::path& dir) {
  try {
    std::filesystem::create_directories(dir);
    std::string jsonl;
    for (const auto& r : errors) jsonl += r.to_jsonl() + "\n";
    write_file_atomic(dir / "errors.jsonl", jsonl);
    write_file_atomic(dir / "trend.csv", render_trend_csv(trend));
    write_file_atomic(dir / "timing.csv", render_timing_csv(trend));
    write_file_atomic(dir / "summary.json", render_summary(summary, SummaryFormat::Json));
    write_file_atomic(dir / "summary.txt", render_summary(summary, SummaryFormat::Text));
  } catch (const std::filesystem::filesystem_error& e) {
    throw IoError(e.what());
  }
}

CampaignResult run_campaign(const CampaignConfig& config, Transport* transport) {
  config.validate();
  ApiModel model;
  DependencyConfig deps;
  std::optional<AuthConfig> auth;
  try {
    model = parse_spec(read_file(config.spec_path));
    if (config.dependency_path) deps = parse_dependency_config(read_file(*config.dependency_path), model);
    if (config.auth_path) auth = AuthConfig::parse(read_file(*config.auth_path));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  std::unique_ptr<HttpTransport> owned;
  if (!transport) {
    owned = std::make_unique<HttpTransport>();
    transport = owned.get();
  }
  Campaign campaign(std::move(model), std::move(deps), std::move(auth), config, *transport);
  campaign.run();
  campaign.emit_reports();

  CampaignResult result;
  result.summary = campaign.summary();
  result.trend = campaign.trend();
  result.errors = campaign.errors().records();
  result.corpus_size = campaign.corpus().size();
  return result;
}

int replay_error(const ErrorRecord& record, const ApiModel& model, const DependencyConfig& deps,
                 std::optional<AuthSession>& auth, Transport& transport, const std::string& base_url) {
  SeedGrammar grammar = deserialize_seed(record.seed);
  ResponseStore store;
  auto header = [&]() -> std::optional<Header> {
    if (!auth) return std::nullopt;
    try {
      return auth->header(transport);
    } catch (const TokenUnavailable&) {
      return std::nullopt;
    }
  };
  for (std::size_t i = 0; i < record.node_index && i < grammar.nodes.size(); ++i) {
    RequestNode node = grammar.nodes[i];
    bind_node(node, deps, store);
    for (std::uint32_t r = 0; r < node.repeat; ++r) {
      send_and_record(render_request(node, model, base_url, header(), r), store, transport);
    }
  }
  ConcreteRequest req = ConcreteRequest::from_snapshot(record.request_snapshot, base_url);
  req.node_ref = {record.path, record.method};
  if (auto h = header()) {
    for (auto& existing : req.headers) {
      if (existing.name == h->name) existing.value = h->value;
    }
  }
  return transport.send(req, std::chrono::seconds(10)).status;
}

}  // namespace tclfuzz
