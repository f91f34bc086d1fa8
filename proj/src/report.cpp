#include "tclfuzz/report.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

namespace tclfuzz {

std::size_t Summary::error_count() const {
  std::size_t n = 0;
  for (const auto& [_, c] : errors_by_status) n += c;
  return n;
}

nlohmann::ordered_json Summary::to_json() const {
  nlohmann::ordered_json j;
  j["config"] = config;
  auto tcl = nlohmann::ordered_json::array();
  for (const auto& [path, level] : final_tcl) tcl.push_back({{"path", path}, {"tcl", level}});
  j["final_tcl"] = std::move(tcl);
  j["tcl_sum"] = tcl_sum(final_tcl);
  j["corpus_size"] = corpus_size;
  auto by_status = nlohmann::ordered_json::object();
  for (const auto& [status, n] : errors_by_status) by_status[std::to_string(status)] = n;
  j["errors_by_status"] = std::move(by_status);
  j["error_count"] = error_count();
  j["rounds"] = rounds;
  j["requests"] = requests;
  j["elapsed_s"] = elapsed_s;
  return j;
}

Summary Summary::from_json(const nlohmann::ordered_json& j) {
  Summary s;
  s.config = j.at("config");
  for (const auto& e : j.at("final_tcl")) s.final_tcl.emplace_back(e.at("path").get<std::string>(), e.at("tcl").get<int>());
  s.corpus_size = j.at("corpus_size").get<std::size_t>();
  for (auto it = j.at("errors_by_status").begin(); it != j.at("errors_by_status").end(); ++it) {
    s.errors_by_status[std::stoi(it.key())] = it.value().get<std::size_t>();
  }
  s.rounds = j.at("rounds").get<std::uint64_t>();
  s.requests = j.at("requests").get<std::uint64_t>();
  s.elapsed_s = j.at("elapsed_s").get<double>();
  return s;
}

namespace {

void row(std::ostringstream& out, const std::string& label, const std::string& value, std::size_t width) {
  out << "  " << std::left << std::setw(static_cast<int>(width)) << label << "  " << std::right << std::setw(10)
      << value << "\n";
}

}  // namespace

std::string render_summary(const Summary& summary, SummaryFormat format) {
  if (format == SummaryFormat::Json) return summary.to_json().dump(2) + "\n";

  std::size_t width = 16;
  for (const auto& [path, _] : summary.final_tcl) width = std::max(width, path.size());

  char elapsed[32];
  std::snprintf(elapsed, sizeof elapsed, "%.3f", summary.elapsed_s);

  std::ostringstream out;
  out << "campaign\n";
  row(out, "rounds", std::to_string(summary.rounds), width);
  row(out, "requests", std::to_string(summary.requests), width);
  row(out, "corpus size", std::to_string(summary.corpus_size), width);
  row(out, "errors", std::to_string(summary.error_count()), width);
  row(out, "elapsed s", elapsed, width);
  out << "errors by status\n";
  for (const auto& [status, n] : summary.errors_by_status) row(out, std::to_string(status), std::to_string(n), width);
  out << "tcl by path\n";
  for (const auto& [path, level] : summary.final_tcl) row(out, path, std::to_string(level), width);
  row(out, "sum", std::to_string(tcl_sum(summary.final_tcl)), width);
  return out.str();
}

}  // namespace tclfuzz
