#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tclfuzz/api_model.hpp"
#include "tclfuzz/corpus.hpp"
#include "tclfuzz/coverage.hpp"
#include "tclfuzz/dependency.hpp"
#include "tclfuzz/http_driver.hpp"
#include "tclfuzz/mutation.hpp"
#include "tclfuzz/report.hpp"
#include "tclfuzz/rng.hpp"

namespace tclfuzz {

struct CampaignConfig {
  std::filesystem::path spec_path;
  std::optional<std::filesystem::path> dependency_path;
  std::optional<std::filesystem::path> auth_path;
  std::optional<std::string> base_url;
  std::optional<double> time_budget_s;
  std::optional<std::uint64_t> max_rounds;
  std::uint64_t rng_seed = 0;
  bool guided = true;
  std::filesystem::path output_dir;
  // "METHOD /path" entries; empty means every operation.
  std::vector<std::string> targets;
  std::chrono::milliseconds request_timeout{10000};

  // Throws ConfigError.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

struct ErrorRecord {
  std::string path;
  HttpMethod method = HttpMethod::Get;
  std::vector<std::string> params;  // present parameter names, sorted
  int status = 0;
  std::string request_snapshot;
  std::string response_snapshot;
  std::uint64_t round = 0;
  std::size_t node_index = 0;
  std::string seed;  // serialized grammar that produced the request
  std::string dedup_key;

  static std::string make_key(const std::string& path, HttpMethod method,
                              const std::vector<std::string>& params);

  // One JSONL line (no trailing newline); non-UTF-8 snapshots are base64.
  std::string to_jsonl() const;
  static ErrorRecord from_json(const nlohmann::json& j);
};

// One record per dedup key, in order of first appearance.
class ErrorStore {
 public:
  bool insert(ErrorRecord record);
  const std::vector<ErrorRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<ErrorRecord> records_;
};

struct RoundStats {
  std::uint64_t round = 0;
  std::uint64_t requests = 0;
  std::uint64_t status_2xx = 0;
  std::uint64_t status_4xx = 0;
  std::uint64_t status_5xx = 0;
  std::uint64_t status_other = 0;  // 1xx/3xx
  std::uint64_t transport_errors = 0;
  int tcl_sum_before = 0;
  int tcl_sum_after = 0;
  bool seed_added = false;
  std::size_t errors_added = 0;
  double elapsed_s = 0.0;
};

struct TrendRow {
  std::uint64_t round = 0;
  std::uint64_t requests = 0;  // cumulative
  double elapsed_s = 0.0;      // timing.csv only
  TclVector tcl;
  int sum = 0;
};

enum class ResponseClass { Error, InterestingCandidate, Ordinary };

// 5xx -> Error; everything else, transport errors included, is Ordinary.
// Interest is decided per round from the TCL delta.
ResponseClass classify_response(const HttpExchange& exchange);

// The fuzz loop state for one campaign: corpus, criteria, rng, response
// history, errors. Single-threaded.
class Campaign {
 public:
  Campaign(ApiModel model, DependencyConfig deps, std::optional<AuthConfig> auth,
           CampaignConfig config, Transport& transport);

  // Plans every target and seeds the corpus. Throws ConfigError.
  void initialize();

  RoundStats run_round();
  bool budget_exhausted() const;
  void run();

  const ApiModel& model() const { return model_; }
  const DependencyConfig& deps() const { return deps_; }
  const Corpus& corpus() const { return corpus_; }
  const CriteriaState& state() const { return state_; }
  const ErrorStore& errors() const { return errors_; }
  const std::vector<TrendRow>& trend() const { return trend_; }
  const std::string& base_url() const { return base_url_; }
  std::uint64_t rounds_run() const { return round_; }
  std::uint64_t requests_sent() const { return requests_; }
  std::uint64_t error_exchanges() const { return error_exchanges_; }
  double elapsed_s() const;

  Summary summary() const;
  // errors.jsonl, trend.csv, timing.csv, summary.json, summary.txt.
  void emit_reports() const;

 private:
  void send_node(std::size_t index, RequestNode& node, const SeedGrammar& grammar,
                 std::vector<HttpExchange>& transcript, RoundStats& stats);

  ApiModel model_;
  DependencyConfig deps_;
  CampaignConfig config_;
  Transport& transport_;
  std::optional<AuthSession> auth_;
  std::string base_url_;

  Corpus corpus_;
  CriteriaState state_;
  Rng rng_;
  ResponseStore store_;
  ScheduleBook schedules_;
  ErrorStore errors_;
  std::vector<TrendRow> trend_;

  std::uint64_t round_ = 0;
  std::uint64_t requests_ = 0;
  std::uint64_t error_exchanges_ = 0;
  std::chrono::steady_clock::time_point started_;
  bool initialized_ = false;
};

struct CampaignResult {
  Summary summary;
  std::vector<TrendRow> trend;
  std::vector<ErrorRecord> errors;
  std::size_t corpus_size = 0;

  // 0 = completed clean, 2 = completed with findings.
  int exit_code() const { return errors.empty() ? 0 : 2; }
};

// Loads inputs, runs until the budget or round cap, writes reports.
// Throws ConfigError before any request is sent.
CampaignResult run_campaign(const CampaignConfig& config, Transport* transport = nullptr);

void emit_reports(const std::vector<ErrorRecord>& errors, const std::vector<TrendRow>& trend,
                  const Summary& summary, const std::filesystem::path& output_dir);

std::string render_trend_csv(const std::vector<TrendRow>& trend);
std::string render_timing_csv(const std::vector<TrendRow>& trend);

// Re-runs the nodes before the failing one from the record's seed (with ID
// binding), then re-sends the recorded request verbatim. Returns its status.
int replay_error(const ErrorRecord& record, const ApiModel& model, const DependencyConfig& deps,
                 std::optional<AuthSession>& auth, Transport& transport,
                 const std::string& base_url);

}  // namespace tclfuzz
