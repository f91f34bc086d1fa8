#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "tclfuzz/errors.hpp"
#include "tclfuzz/fixture.hpp"
#include "tclfuzz/orchestrator.hpp"
#include "tclfuzz/util.hpp"

namespace {

constexpr int kExitConfig = 1;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

std::string env_name(const std::string& flag) {
  std::string out = "TCLFUZZ_";
  for (char c : flag) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

struct FuzzArgs {
  std::string spec, deps, auth, base_url, out;
  double budget = -1;
  std::uint64_t rounds = 0;
  bool rounds_set = false;
  std::uint64_t seed = 0;
  bool no_guidance = false;
  std::vector<std::string> targets;
  long timeout_ms = 10000;
};

int run_fuzz(const FuzzArgs& a, const CLI::App& cmd) {
  tclfuzz::CampaignConfig cfg;
  cfg.spec_path = a.spec;
  if (!a.deps.empty()) cfg.dependency_path = a.deps;
  if (!a.auth.empty()) cfg.auth_path = a.auth;
  if (!a.base_url.empty()) cfg.base_url = a.base_url;
  if (cmd.count("--budget") > 0 || a.budget >= 0) cfg.time_budget_s = a.budget;
  if (cmd.count("--rounds") > 0 || a.rounds_set) cfg.max_rounds = a.rounds;
  cfg.rng_seed = a.seed;
  cfg.guided = !a.no_guidance;
  cfg.output_dir = a.out;
  cfg.targets = a.targets;
  cfg.request_timeout = std::chrono::milliseconds(a.timeout_ms);
  try {
    auto result = tclfuzz::run_campaign(cfg);
    std::cout << tclfuzz::render_summary(result.summary, tclfuzz::SummaryFormat::Text);
    return result.exit_code();
  } catch (const tclfuzz::ConfigError& e) {
    std::cerr << "tclfuzz: " << e.what() << "\n";
    return kExitConfig;
  } catch (const tclfuzz::IoError& e) {
    std::cerr << "tclfuzz: " << e.what() << "\n";
    return kExitConfig;
  }
}

int run_fixture(int port, bool no_faults, const std::string& write_dir) {
  if (!write_dir.empty()) {
    std::filesystem::create_directories(write_dir);
    tclfuzz::write_file_atomic(std::filesystem::path(write_dir) / "realworld.yaml", tclfuzz::fixture::embedded_spec());
    tclfuzz::write_file_atomic(std::filesystem::path(write_dir) / "deps.yaml", tclfuzz::fixture::embedded_deps());
    tclfuzz::write_file_atomic(std::filesystem::path(write_dir) / "auth.yaml", tclfuzz::fixture::embedded_auth());
    std::cout << "wrote realworld.yaml, deps.yaml, auth.yaml to " << write_dir << "\n";
    return 0;
  }
  auto faults = no_faults ? std::vector<tclfuzz::fixture::FaultSpec>{} : tclfuzz::fixture::default_faults();
  std::unique_ptr<tclfuzz::fixture::Fixture> fx;
  try {
    fx = tclfuzz::fixture::Fixture::start(faults, port);
  } catch (const tclfuzz::fixture::PortUnavailable& e) {
    std::cerr << "tclfuzz: " << e.what() << "\n";
    return kExitConfig;
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << fx->base_url() << std::endl;
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  fx->shutdown();
  std::cerr << "faults hit:";
  for (const auto& id : fx->fault_ledger()) std::cerr << " " << id;
  std::cerr << "\n";
  return 0;
}

int run_replay(const std::string& spec, const std::string& deps, const std::string& auth, const std::string& base_url,
               const std::string& errors) {
  try {
    auto model = tclfuzz::parse_spec_file(spec);
    tclfuzz::DependencyConfig dc;
    if (!deps.empty()) dc = tclfuzz::parse_dependency_config(tclfuzz::read_file(deps), model);
    std::string url = base_url.empty() ? model.base_url : base_url;
    std::optional<tclfuzz::AuthSession> session;
    if (!auth.empty()) session.emplace(tclfuzz::AuthConfig::parse(tclfuzz::read_file(auth)), url);
    tclfuzz::HttpTransport transport;
    std::ifstream in(errors);
    if (!in) throw tclfuzz::ConfigError("cannot open " + errors);
    std::string line;
    int reproduced = 0, total = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto rec = tclfuzz::ErrorRecord::from_json(nlohmann::json::parse(line));
      int status = tclfuzz::replay_error(rec, model, dc, session, transport, url);
      ++total;
      if (status / 100 == 5) ++reproduced;
      std::cout << tclfuzz::to_string(rec.method) << " " << rec.path << " -> " << status << "\n";
    }
    std::cout << reproduced << "/" << total << " reproduced\n";
    return reproduced == total ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "tclfuzz: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage-level guided REST API fuzzer"};
  app.require_subcommand(1);

  FuzzArgs fa;
  auto* fuzz = app.add_subcommand("fuzz", "run a fuzzing campaign");
  auto opt = [&](const std::string& flag, auto& target, const std::string& help) {
    return fuzz->add_option("--" + flag, target, help)->envname(env_name(flag));
  };
  opt("spec", fa.spec, "OpenAPI document (YAML or JSON)")->required();
  opt("deps", fa.deps, "path dependency YAML");
  opt("auth", fa.auth, "token authorization YAML");
  opt("base-url", fa.base_url, "override the document's server URL");
  opt("budget", fa.budget, "time budget in seconds");
  opt("rounds", fa.rounds, "round limit")->each([&](const std::string&) { fa.rounds_set = true; });
  opt("seed", fa.seed, "rng seed")->required();
  fuzz->add_flag("--no-guidance", fa.no_guidance, "never add mutated seeds to the corpus")
      ->envname(env_name("no-guidance"));
  opt("out", fa.out, "output directory")->required();
  opt("target", fa.targets, "restrict initial seeds to \"METHOD /path\" (repeatable)");
  opt("timeout-ms", fa.timeout_ms, "per-request timeout");

  int port = 0;
  bool no_faults = false;
  std::string write_dir;
  auto* fixture = app.add_subcommand("fixture", "serve the RealWorld-style test service");
  fixture->add_option("--port", port, "TCP port, 0 for ephemeral");
  fixture->add_flag("--no-faults", no_faults, "disable the seeded faults");
  fixture->add_option("--write-files", write_dir, "write the fixture's OpenAPI, deps and auth files here and exit");

  std::string r_spec, r_deps, r_auth, r_url, r_errors;
  auto* replay = app.add_subcommand("replay", "re-send every recorded error request");
  replay->add_option("--spec", r_spec)->required();
  replay->add_option("--deps", r_deps);
  replay->add_option("--auth", r_auth);
  replay->add_option("--base-url", r_url);
  replay->add_option("--errors", r_errors, "errors.jsonl")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (*fuzz) return run_fuzz(fa, *fuzz);
  if (*fixture) return run_fixture(port, no_faults, write_dir);
  return run_replay(r_spec, r_deps, r_auth, r_url, r_errors);
}
