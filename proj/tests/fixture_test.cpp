#include <gtest/gtest.h>

#include <httplib.h>

#include "support.hpp"

using namespace tclfuzz;
using tclfuzz::fixture::Fixture;
using nlohmann::json;

namespace {

struct Client {
  explicit Client(const Fixture& fx) : cli("127.0.0.1", fx.port()) {}

  httplib::Result post(const std::string& path, const json& body, const std::string& token = "") {
    return cli.Post(path, headers(token), body.dump(), "application/json");
  }
  httplib::Result put(const std::string& path, const json& body, const std::string& token = "") {
    return cli.Put(path, headers(token), body.dump(), "application/json");
  }
  httplib::Result get(const std::string& path, const std::string& token = "") { return cli.Get(path, headers(token)); }
  httplib::Result del(const std::string& path, const std::string& token = "") { return cli.Delete(path, headers(token)); }

  static httplib::Headers headers(const std::string& token) {
    if (token.empty()) return {};
    return {{"Authorization", "Token " + token}};
  }

  httplib::Client cli;
};

json article_body(const std::string& title) {
  return {{"article", {{"title", title}, {"description", "d"}, {"body", "b"}, {"tagList", {"x"}}}}};
}

std::string create_article(Client& c, const std::string& title = "Hello World") {
  auto r = c.post("/articles", article_body(title), "tok-1");
  EXPECT_EQ(r->status, 201);
  return json::parse(r->body)["article"]["slug"];
}

// Checks `value` against `schema`: kinds match and required members exist.
bool conforms(const json& value, const SchemaDesc& schema, std::string& why, const std::string& at = "$") {
  auto fail = [&](const std::string& msg) {
    why = at + ": " + msg;
    return false;
  };
  switch (schema.kind) {
    case SchemaKind::String: return value.is_string() || fail("expected string");
    case SchemaKind::Integer: return value.is_number_integer() || fail("expected integer");
    case SchemaKind::Number: return value.is_number() || fail("expected number");
    case SchemaKind::Boolean: return value.is_boolean() || fail("expected boolean");
    case SchemaKind::Array:
      if (!value.is_array()) return fail("expected array");
      for (const auto& e : value) {
        if (schema.items && !conforms(e, *schema.items, why, at + "[]")) return false;
      }
      return true;
    case SchemaKind::Object:
      if (!value.is_object()) return fail("expected object");
      for (const auto& r : schema.required) {
        if (!value.contains(r)) return fail("missing " + r);
      }
      for (const auto& p : schema.properties) {
        if (value.contains(p.name) && !conforms(value.at(p.name), p.schema, why, at + "." + p.name)) return false;
      }
      return true;
  }
  return true;
}

}  // namespace

TEST(Fixture, RegisterThenLogin) {
  auto fx = Fixture::start({});
  Client c(*fx);
  auto reg = c.post("/users", {{"user", {{"username", "ann"}, {"email", "ann@x.io"}, {"password", "pw"}}}});
  ASSERT_TRUE(reg);
  EXPECT_EQ(reg->status, 201);
  auto login = c.post("/users/login", {{"user", {{"email", "ann@x.io"}, {"password", "pw"}}}});
  ASSERT_TRUE(login);
  EXPECT_EQ(login->status, 200);
  auto token = json::parse(login->body)["user"]["token"].get<std::string>();
  EXPECT_FALSE(token.empty());
  auto me = c.get("/user", token);
  EXPECT_EQ(me->status, 200);
  EXPECT_EQ(json::parse(me->body)["user"]["username"], "ann");
}

TEST(Fixture, UnauthenticatedIs401) {
  auto fx = Fixture::start({});
  Client c(*fx);
  EXPECT_EQ(c.get("/user")->status, 401);
  EXPECT_EQ(c.post("/articles", article_body("x"))->status, 401);
  EXPECT_EQ(c.get("/user", "tok-99")->status, 401);
}

TEST(Fixture, UnknownSlugFaultSwitch) {
  std::vector<fixture::FaultSpec> only;
  for (const auto& f : fixture::default_faults()) {
    if (f.id == "unknown-slug") only.push_back(f);
  }
  auto on = Fixture::start(only);
  auto off = Fixture::start({});
  Client a(*on), b(*off);
  EXPECT_EQ(a.get("/articles/nope")->status, 500);
  EXPECT_EQ(b.get("/articles/nope")->status, 404);
  EXPECT_EQ(on->fault_ledger(), std::set<std::string>{"unknown-slug"});
  EXPECT_TRUE(off->fault_ledger().empty());
}

TEST(Fixture, ResetEmptiesArticlesKeepsLedger) {
  auto fx = Fixture::start(fixture::default_faults());
  Client c(*fx);
  create_article(c);
  EXPECT_EQ(json::parse(c.get("/articles")->body)["articlesCount"], 1);
  c.get("/articles/missing");
  fx->reset();
  auto list = json::parse(c.get("/articles")->body);
  EXPECT_TRUE(list["articles"].empty());
  EXPECT_EQ(list["articlesCount"], 0);
  EXPECT_EQ(fx->fault_ledger(), std::set<std::string>{"unknown-slug"});
  // The seeded user survives a reset.
  EXPECT_EQ(c.get("/user", "tok-1")->status, 200);
}

TEST(Fixture, EachFaultFires) {
  auto fx = Fixture::start(fixture::default_faults());
  EXPECT_TRUE(fx->fault_ledger().empty());
  Client c(*fx);
  std::string slug = create_article(c);

  auto wrong_type = article_body("t");
  wrong_type["article"]["title"] = 42;
  EXPECT_EQ(c.post("/articles", wrong_type, "tok-1")->status, 500);

  EXPECT_EQ(c.post("/articles/" + slug + "/comments", {{"comment", json::object()}}, "tok-1")->status, 500);

  EXPECT_EQ(c.put("/articles/" + slug, {{"article", {{"body", std::string(300, 'x')}}}}, "tok-1")->status, 500);

  EXPECT_EQ(c.get("/articles/none-such")->status, 500);

  EXPECT_EQ(c.post("/users", {{"user", {{"username", "u2"}, {"email", "not an email"}, {"password", "p"}}}})->status, 500);

  EXPECT_EQ(c.del("/articles/" + slug + "/comments/2147483648", "tok-1")->status, 500);
  EXPECT_EQ(c.del("/articles/" + slug + "/comments/2147483647", "tok-1")->status, 404);

  EXPECT_EQ(fx->fault_ledger().size(), 6u);
  for (const auto& [id, n] : fx->fault_hits()) EXPECT_EQ(n, 1u) << id;
  auto r = c.get("/articles/none-such");
  EXPECT_EQ(json::parse(r->body)["fault"], "unknown-slug");
}

TEST(Fixture, ValidationErrorsAre422) {
  auto fx = Fixture::start(fixture::default_faults());
  Client c(*fx);
  EXPECT_EQ(c.post("/users/login", {{"user", {{"email", "jake@jake.jake"}}}})->status, 422);
  EXPECT_EQ(c.post("/users/login", {{"user", {{"email", "jake@jake.jake"}, {"password", "wrong"}}}})->status, 422);
  auto raw = c.cli.Post("/articles", Client::headers("tok-1"), "{not json", "application/json");
  EXPECT_EQ(raw->status, 422);
}

TEST(Fixture, NoServerErrorsWithFaultsDisabled) {
  auto fx = Fixture::start({});
  Client c(*fx);
  std::string slug = create_article(c);
  auto wrong_type = article_body("t");
  wrong_type["article"]["title"] = 42;
  std::vector<int> statuses = {
      c.post("/articles", wrong_type, "tok-1")->status,
      c.post("/articles/" + slug + "/comments", {{"comment", json::object()}}, "tok-1")->status,
      c.put("/articles/" + slug, {{"article", {{"body", std::string(300, 'x')}}}}, "tok-1")->status,
      c.get("/articles/none-such")->status,
      c.post("/users", {{"user", {{"username", "u2"}, {"email", "bad"}, {"password", "p"}}}})->status,
      c.del("/articles/" + slug + "/comments/99999999999999999999", "tok-1")->status,
      c.cli.Get("/no/such/route")->status,
  };
  for (int s : statuses) EXPECT_LT(s, 500);
  EXPECT_EQ(statuses.back(), 400);
  EXPECT_TRUE(fx->fault_ledger().empty());
}

TEST(Fixture, ServesItsOpenApiDocument) {
  auto fx = Fixture::start({});
  Client c(*fx);
  auto r = c.get("/openapi.yaml");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(parse_spec(r->body), testsupport::fixture_model());
}

TEST(Fixture, SuccessBodiesMatchDocumentedSchemas) {
  ApiModel m = testsupport::fixture_model();
  DependencyConfig deps = testsupport::fixture_deps(m);
  auto fx = Fixture::start({});
  HttpTransport t;
  Header auth = acquire_token(AuthConfig::parse(fixture::embedded_auth()), t, fx->base_url());
  std::size_t checked = 0;
  std::set<OperationRef> ok_ops;
  for (const auto& e : list_operations(m)) {
    SeedGrammar g = build_initial_grammar(plan_requests(e.ref(), m, deps), m);
    ResponseStore store;
    for (auto& node : g.nodes) {
      bind_node(node, deps, store);
      HttpExchange x = send_and_record(render_request(node, m, fx->base_url(), auth), store, t);
      if (x.response.status < 200 || x.response.status >= 300) continue;
      ok_ops.insert(x.node_ref);
      const OperationDesc* op = m.find_operation(x.node_ref);
      const ResponseDesc* doc = nullptr;
      for (const auto& r : op->responses) {
        if (r.status_code == x.response.status) doc = &r;
      }
      ASSERT_NE(doc, nullptr) << to_string(x.node_ref) << " " << x.response.status;
      if (!doc->body_schema) continue;
      std::string why;
      EXPECT_TRUE(conforms(json::parse(x.response.body), *doc->body_schema, why)) << to_string(x.node_ref) << " " << why;
      ++checked;
    }
  }
  EXPECT_EQ(ok_ops.size(), 19u);
  EXPECT_GT(checked, 19u);
}

TEST(Fixture, PortInUse) {
  auto fx = Fixture::start({});
  EXPECT_THROW(Fixture::start({}, fx->port()), fixture::PortUnavailable);
}

TEST(Fixture, CountsRequests) {
  auto fx = Fixture::start({});
  Client c(*fx);
  c.get("/tags");
  c.get("/tags");
  EXPECT_EQ(fx->requests_served(), 2u);
}
