#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "tclfuzz/report.hpp"

using namespace tclfuzz;

namespace {

Summary sample() {
  Summary s;
  s.config = {{"spec", "api.yaml"}, {"seed", 3}, {"guided", true}};
  s.final_tcl = {{"/articles", 4}, {"/tags", 6}};
  s.corpus_size = 21;
  s.errors_by_status = {{500, 3}, {503, 1}};
  s.rounds = 50;
  s.requests = 1200;
  s.elapsed_s = 12.5;
  return s;
}

}  // namespace

TEST(Summary, JsonRoundTrip) {
  Summary s = sample();
  std::string text = render_summary(s, SummaryFormat::Json);
  Summary back = Summary::from_json(nlohmann::ordered_json::parse(text));
  EXPECT_EQ(back, s);
  EXPECT_EQ(render_summary(back, SummaryFormat::Json), text);
  EXPECT_EQ(s.error_count(), 4u);
}

TEST(Summary, JsonFieldOrderStable) {
  auto j = nlohmann::ordered_json::parse(render_summary(sample(), SummaryFormat::Json));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"config", "final_tcl", "tcl_sum", "corpus_size", "errors_by_status",
                                            "error_count", "rounds", "requests", "elapsed_s"}));
  EXPECT_EQ(j["tcl_sum"], 10);
  EXPECT_EQ(j["errors_by_status"]["500"], 3);
}

TEST(Summary, EmptyCampaignTableIsAllZero) {
  Summary s;
  s.final_tcl = {{"/a", 0}, {"/b", 0}};
  std::string text = render_summary(s, SummaryFormat::Text);
  std::istringstream in(text);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line == "campaign" || line == "errors by status" || line == "tcl by path") continue;
    ++rows;
    std::string value = line.substr(line.find_last_of(' ') + 1);
    EXPECT_TRUE(value == "0" || value == "0.000") << line;
  }
  EXPECT_EQ(rows, 5u + 2u + 1u);
}

TEST(Summary, TextIsFixedWidth) {
  std::string text = render_summary(sample(), SummaryFormat::Text);
  std::istringstream in(text);
  std::string line;
  std::set<std::size_t> widths;
  while (std::getline(in, line)) {
    if (line.rfind("  ", 0) == 0) widths.insert(line.size());
  }
  EXPECT_EQ(widths.size(), 1u) << text;
  EXPECT_NE(text.find("/articles"), std::string::npos);
}

TEST(Summary, RenderingIsPure) {
  EXPECT_EQ(render_summary(sample(), SummaryFormat::Text), render_summary(sample(), SummaryFormat::Text));
  EXPECT_EQ(render_summary(sample(), SummaryFormat::Json), render_summary(sample(), SummaryFormat::Json));
}
