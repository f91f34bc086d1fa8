#include <gtest/gtest.h>

#include "support.hpp"

using namespace tclfuzz;
using nlohmann::json;

namespace {

HttpExchange ex(const std::string& path, HttpMethod m, int status, std::string body = "",
                std::vector<std::string> params = {}, std::string req_ct = "", std::string resp_ct = "application/json") {
  HttpExchange e;
  e.node_ref = {path, m};
  e.request.node_ref = e.node_ref;
  e.request.method = m;
  e.request.params_sent = std::move(params);
  e.request.content_type = std::move(req_ct);
  e.response.status = status;
  if (status != kTransportError) {
    e.response.body = std::move(body);
    e.response.content_type = std::move(resp_ct);
  }
  return e;
}

const char* kSmall = R"(openapi: 3.0.0
info: {title: t, version: '1'}
paths:
  /a:
    get:
      parameters:
        - {name: q, in: query, schema: {type: string}}
      responses:
        '200':
          description: ok
          content:
            application/json:
              schema:
                type: object
                properties:
                  slug: {type: string}
                  title: {type: string}
                  body: {type: string}
        '404': {description: missing}
    delete:
      responses:
        '204': {description: gone}
)";

}  // namespace

TEST(Coverage, PropertyPaths) {
  ApiModel m = testsupport::fixture_model();
  auto docs = documented_body_properties(*m.find_operation("/articles", HttpMethod::Get));
  EXPECT_TRUE(docs.count("articles"));
  EXPECT_TRUE(docs.count("articles.slug"));
  EXPECT_TRUE(docs.count("articles.author.username"));
  EXPECT_TRUE(docs.count("articlesCount"));
  auto seen = body_property_paths(json::parse(R"({"articles":[{"slug":"x"},{"title":"y"}],"n":1})"));
  EXPECT_EQ(seen, (std::set<std::string>{"articles", "articles.slug", "articles.title", "n"}));
}

TEST(Coverage, ServerErrorRecordsClassAndCode) {
  ApiModel m = parse_spec(kSmall);
  CriteriaState s;
  update_state(s, ex("/a", HttpMethod::Get, 500, "{}"), m);
  const auto& op = s.paths["/a"].operations[HttpMethod::Get];
  EXPECT_EQ(op.status_classes_seen, std::set<int>{5});
  EXPECT_EQ(op.status_codes_seen, std::set<int>{500});
}

TEST(Coverage, TransportErrorOnlyMarksRequested) {
  ApiModel m = parse_spec(kSmall);
  CriteriaState s;
  update_state(s, ex("/a", HttpMethod::Get, kTransportError, "", {"q"}), m);
  EXPECT_TRUE(s.paths["/a"].requested);
  auto it = s.paths["/a"].operations.find(HttpMethod::Get);
  if (it != s.paths["/a"].operations.end()) {
    EXPECT_FALSE(it->second.hit);
    EXPECT_TRUE(it->second.params_used.empty());
    EXPECT_TRUE(it->second.status_codes_seen.empty());
  }
  EXPECT_EQ(compute_tcl(s, m, "/a"), 1);
}

TEST(Coverage, DocumentedPropertiesOnly) {
  ApiModel m = parse_spec(kSmall);
  CriteriaState s;
  update_state(s, ex("/a", HttpMethod::Get, 200, R"({"slug":"s","title":"t","extra":1})"), m);
  EXPECT_EQ(s.paths["/a"].operations[HttpMethod::Get].body_properties_seen, (std::set<std::string>{"slug", "title"}));
}

TEST(Coverage, LevelsClimb) {
  ApiModel m = parse_spec(kSmall);
  CriteriaState s;
  EXPECT_EQ(compute_tcl(s, m, "/a"), 0);
  update_state(s, ex("/a", HttpMethod::Get, 404, "{}"), m);
  EXPECT_EQ(compute_tcl(s, m, "/a"), 1);  // DELETE not hit yet
  update_state(s, ex("/a", HttpMethod::Delete, 204, ""), m);
  // The 404 carried application/json; q was never sent.
  EXPECT_EQ(compute_tcl(s, m, "/a"), 3);
  update_state(s, ex("/a", HttpMethod::Get, 200, R"({"slug":"s"})", {"q"}), m);
  EXPECT_EQ(compute_tcl(s, m, "/a"), 5);
  update_state(s, ex("/a", HttpMethod::Get, 200, R"({"title":"t","body":"b"})"), m);
  EXPECT_EQ(compute_tcl(s, m, "/a"), 6);
}

TEST(Coverage, NoFlowMeansNeverSeven) {
  ApiModel m = parse_spec(kSmall);
  CriteriaState s;
  update_state(s, ex("/a", HttpMethod::Get, 404, "{}", {"q"}), m);
  update_state(s, ex("/a", HttpMethod::Get, 200, R"({"slug":"s","title":"t","body":"b"})"), m);
  update_state(s, ex("/a", HttpMethod::Delete, 204, ""), m);
  EXPECT_EQ(compute_tcl(s, m, "/a"), kMaxTclWithoutFlow);
}

TEST(Coverage, OneOfTwoMethods) {
  ApiModel m = parse_spec(kSmall);
  CriteriaState s;
  update_state(s, ex("/a", HttpMethod::Delete, 204, ""), m);
  EXPECT_EQ(compute_tcl(s, m, "/a"), 1);
}

TEST(Flow, CommentsFlowFromFullRound) {
  ApiModel m = testsupport::fixture_model();
  DependencyConfig c = testsupport::fixture_deps(m);
  const OperationFlowSpec* comments = nullptr;
  for (const auto& f : c.flows) {
    if (f.resource_path == "/articles/{slug}/comments") comments = &f;
  }
  ASSERT_NE(comments, nullptr);
  std::vector<HttpExchange> round = {
      ex("/articles", HttpMethod::Post, 201),
      ex("/articles/{slug}", HttpMethod::Put, 200),
      ex("/articles/{slug}", HttpMethod::Get, 200),
      ex("/articles/{slug}/comments", HttpMethod::Post, 201),
      ex("/articles/{slug}/comments", HttpMethod::Get, 200),
      ex("/articles/{slug}/comments/{id}", HttpMethod::Delete, 204),
      ex("/articles/{slug}", HttpMethod::Delete, 204),
  };
  CriteriaState s;
  EXPECT_TRUE(evaluate_flow(s, *comments, round));
  EXPECT_TRUE(s.paths["/articles/{slug}/comments"].flow_satisfied);
  // Latched even when a later round misses it.
  EXPECT_FALSE(evaluate_flow(s, *comments, std::vector<HttpExchange>{}));
  EXPECT_TRUE(s.paths["/articles/{slug}/comments"].flow_satisfied);
}

TEST(Flow, OrderAndStatusMatter) {
  ApiModel m = testsupport::fixture_model();
  DependencyConfig c = testsupport::fixture_deps(m);
  const OperationFlowSpec& articles = c.flows.front();
  ASSERT_EQ(articles.resource_path, "/articles/{slug}");
  std::vector<HttpExchange> good = {
      ex("/articles", HttpMethod::Post, 201),
      ex("/articles/{slug}", HttpMethod::Put, 200),
      ex("/articles/{slug}", HttpMethod::Get, 200),
      ex("/articles/{slug}", HttpMethod::Delete, 204),
  };
  CriteriaState s;
  auto swapped = good;
  std::swap(swapped[1], swapped[3]);
  EXPECT_FALSE(evaluate_flow(s, articles, swapped));
  auto failed = good;
  failed[1].response.status = 500;
  EXPECT_FALSE(evaluate_flow(s, articles, failed));
  EXPECT_FALSE(s.paths["/articles/{slug}"].flow_satisfied);
  EXPECT_TRUE(evaluate_flow(s, articles, good));
}

TEST(TclVector, EmptyStateAllZero) {
  ApiModel m = testsupport::fixture_model();
  TclVector v = tcl_vector(CriteriaState{}, m);
  ASSERT_EQ(v.size(), 11u);
  for (const auto& [p, l] : v) EXPECT_EQ(l, 0) << p;
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  EXPECT_EQ(tcl_sum(v), 0);
}

TEST(TclVector, AnyIncrease) {
  TclVector a = {{"/a", 1}, {"/b", 2}};
  TclVector b = {{"/a", 1}, {"/b", 3}};
  EXPECT_TRUE(any_increase(a, b));
  EXPECT_FALSE(any_increase(b, a));
  EXPECT_FALSE(any_increase(a, a));
}

TEST(TclVector, FullRoundAgainstFixture) {
  ApiModel m = testsupport::fixture_model();
  DependencyConfig c = testsupport::fixture_deps(m);
  auto fx = tclfuzz::fixture::Fixture::start({});
  HttpTransport t;
  Header auth = acquire_token(AuthConfig::parse(tclfuzz::fixture::embedded_auth()), t, fx->base_url());
  SeedGrammar g = build_initial_grammar(plan_requests({"/articles/{slug}/comments", HttpMethod::Get}, m, c), m);
  ResponseStore store;
  CriteriaState s;
  std::vector<HttpExchange> round;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    bind_node(g.nodes[i], c, store);
    HttpExchange e = send_and_record(render_request(g.nodes[i], m, fx->base_url(), auth), store, t);
    EXPECT_GE(e.response.status, 200) << to_string(e.node_ref);
    EXPECT_LT(e.response.status, 300) << to_string(e.node_ref) << " " << e.response.body;
    update_state(s, e, m);
    round.push_back(e);
  }
  for (const auto& f : c.flows) evaluate_flow(s, f, round);
  EXPECT_GE(compute_tcl(s, m, "/articles/{slug}"), 2);
  EXPECT_EQ(compute_tcl(s, m, "/tags"), 0);

  testsupport::TclOracle oracle(m, c.flows);
  for (const auto& p : m.paths) {
    EXPECT_EQ(compute_tcl(s, m, p.path_template), oracle.level({round}, p.path_template)) << p.path_template;
  }
}

TEST(TclVector, MonotoneAndCumulative) {
  ApiModel m = testsupport::fixture_model();
  DependencyConfig c = testsupport::fixture_deps(m);
  auto ops = list_operations(m);
  Rng rng(5);
  CriteriaState s;
  TclVector prev = tcl_vector(s, m);
  std::vector<HttpExchange> round;
  for (int i = 0; i < 400; ++i) {
    const auto& op = ops[rng.below(ops.size())];
    int status = op.op->responses[rng.below(op.op->responses.size())].status_code;
    if (rng.chance(0.1)) status = 500;
    std::vector<std::string> params;
    for (const auto& p : op.op->parameters) {
      if (rng.chance(0.5)) params.push_back(p.name);
    }
    HttpExchange e = ex(op.path, op.method, rng.chance(0.05) ? kTransportError : status, "{}", params,
                        op.op->request_body ? "application/json" : "");
    update_state(s, e, m);
    round.push_back(e);
    if (round.size() == 10) {
      for (const auto& f : c.flows) evaluate_flow(s, f, round);
      round.clear();
    }
    TclVector cur = tcl_vector(s, m);
    for (std::size_t k = 0; k < cur.size(); ++k) {
      EXPECT_GE(cur[k].second, prev[k].second);
      for (int l = 1; l <= cur[k].second; ++l) EXPECT_TRUE(level_criteria_hold(s, m, cur[k].first, l));
      if (cur[k].second < kMaxTcl) {
        EXPECT_FALSE(level_criteria_hold(s, m, cur[k].first, cur[k].second + 1));
      }
    }
    prev = cur;
  }
}
