#include <gtest/gtest.h>

#include <functional>

#include "support.hpp"
#include "tclfuzz/errors.hpp"

using namespace tclfuzz;

namespace {

int depth_of(const SchemaDesc& s) {
  const SchemaDesc* child = s.property("children");
  if (!child) return 0;
  const SchemaDesc* elem = child->kind == SchemaKind::Array ? child->items.get() : child;
  return 1 + (elem ? depth_of(*elem) : 0);
}

bool has_ref(const nlohmann::ordered_json& j) {
  if (j.is_object()) {
    if (j.contains("$ref")) return true;
    for (const auto& [k, v] : j.items()) {
      if (has_ref(v)) return true;
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (has_ref(v)) return true;
    }
  }
  return false;
}

}  // namespace

TEST(SpecIngest, FixtureHasElevenPathsNineteenOperations) {
  ApiModel m = testsupport::fixture_model();
  EXPECT_EQ(m.paths.size(), 11u);
  EXPECT_EQ(list_operations(m).size(), 19u);
  EXPECT_TRUE(m.warnings.empty());
}

TEST(SpecIngest, ZeroPaths) {
  ApiModel m = parse_spec("openapi: 3.0.0\ninfo: {title: t, version: '1'}\npaths: {}\n");
  EXPECT_TRUE(m.paths.empty());
  EXPECT_TRUE(list_operations(m).empty());
}

TEST(SpecIngest, RefChainInlined) {
  const char* doc = R"({
    "openapi": "3.0.3", "info": {"title": "t", "version": "1"},
    "paths": {"/x": {"post": {
      "requestBody": {"content": {"application/json": {"schema": {"$ref": "#/components/schemas/A"}}}},
      "responses": {"200": {"description": "ok"}}}}},
    "components": {"schemas": {
      "A": {"$ref": "#/components/schemas/B"},
      "B": {"$ref": "#/components/schemas/C"},
      "C": {"type": "object", "properties": {"n": {"type": "integer"}, "s": {"type": "string", "format": "email"}}}}}})";
  ApiModel m = parse_spec(doc);
  const OperationDesc* op = m.find_operation("/x", HttpMethod::Post);
  ASSERT_NE(op, nullptr);
  ASSERT_TRUE(op->request_body);
  const SchemaDesc& s = op->request_body->schema;
  EXPECT_EQ(s.kind, SchemaKind::Object);
  ASSERT_NE(s.property("n"), nullptr);
  EXPECT_EQ(s.property("n")->kind, SchemaKind::Integer);
  ASSERT_NE(s.property("s"), nullptr);
  EXPECT_EQ(s.property("s")->format, "email");
  ASSERT_NE(op->find_param("n"), nullptr);
  EXPECT_EQ(op->find_param("n")->location, ParamLocation::BodyField);
}

TEST(SpecIngest, SingleHopRef) {
  auto root = nlohmann::ordered_json::parse(R"({"components":{"schemas":{"S":{"type":"string"}}}})");
  SchemaDesc s = resolve_local_ref(nlohmann::ordered_json{{"$ref", "#/components/schemas/S"}}, root);
  EXPECT_EQ(s.kind, SchemaKind::String);
}

TEST(SpecIngest, SelfRecursionTruncatedAtDepthThree) {
  auto root = nlohmann::ordered_json::parse(R"({"components":{"schemas":{"Node":{
    "type":"object","properties":{"name":{"type":"string"},
    "children":{"type":"array","items":{"$ref":"#/components/schemas/Node"}}}}}}})");
  SchemaDesc s = resolve_local_ref(nlohmann::ordered_json{{"$ref", "#/components/schemas/Node"}}, root);
  EXPECT_EQ(depth_of(s), 3);
  // The fourth level is an empty object.
  const SchemaDesc* cur = &s;
  for (int i = 0; i < 3; ++i) cur = cur->property("children")->items.get();
  EXPECT_EQ(cur->kind, SchemaKind::Object);
  EXPECT_TRUE(cur->properties.empty());
}

TEST(SpecIngest, MutualCycleIsCyclicRef) {
  auto root = nlohmann::ordered_json::parse(R"({"components":{"schemas":{
    "A":{"type":"object","properties":{"b":{"$ref":"#/components/schemas/B"}}},
    "B":{"type":"object","properties":{"a":{"$ref":"#/components/schemas/A"}}}}}})");
  EXPECT_THROW(resolve_local_ref(nlohmann::ordered_json{{"$ref", "#/components/schemas/A"}}, root), CyclicRef);
}

TEST(SpecIngest, DanglingRef) {
  auto root = nlohmann::ordered_json::parse(R"({"components":{"schemas":{}}})");
  EXPECT_THROW(resolve_local_ref(nlohmann::ordered_json{{"$ref", "#/components/schemas/Missing"}}, root), DanglingRef);
}

TEST(SpecIngest, Errors) {
  EXPECT_THROW(parse_spec("{not json"), MalformedDocument);
  EXPECT_THROW(parse_spec("swagger: '2.0'\npaths: {}\n"), UnsupportedVersion);
  EXPECT_THROW(parse_spec("openapi: 2.0.0\npaths: {}\n"), UnsupportedVersion);
}

TEST(SpecIngest, UnionsWarn) {
  ApiModel m = parse_spec(R"(openapi: 3.1.0
info: {title: t, version: '1'}
paths:
  /u:
    post:
      requestBody:
        content:
          application/json:
            schema:
              oneOf:
                - {type: object, properties: {a: {type: string}}}
                - {type: integer}
      responses:
        '200': {description: ok}
)");
  EXPECT_FALSE(m.warnings.empty());
  EXPECT_NE(m.find_operation("/u", HttpMethod::Post)->find_param("a"), nullptr);
}

TEST(SpecIngest, PostPrecedesGet) {
  ApiModel m = parse_spec(R"(openapi: 3.0.0
info: {title: t, version: '1'}
paths:
  /p:
    get: {responses: {'200': {description: ok}}}
    post: {responses: {'201': {description: ok}}}
)");
  auto ops = list_operations(m);
  ASSERT_EQ(ops.size(), 2u);
  EXPECT_EQ(ops[0].method, HttpMethod::Post);
  EXPECT_EQ(ops[1].method, HttpMethod::Get);
}

TEST(SpecIngest, ReparseIsIdempotent) {
  ApiModel m = testsupport::fixture_model();
  nlohmann::ordered_json emitted = to_openapi_json(m);
  EXPECT_FALSE(has_ref(emitted));
  ApiModel again = parse_spec(emitted.dump(), DocumentFormat::Json);
  EXPECT_EQ(m, again);
  EXPECT_EQ(to_openapi_json(again).dump(), emitted.dump());
}

TEST(SpecIngest, EveryOperationListedOnce) {
  ApiModel m = testsupport::fixture_model();
  std::set<OperationRef> seen;
  for (const auto& e : list_operations(m)) EXPECT_TRUE(seen.insert(e.ref()).second);
  std::size_t total = 0;
  for (const auto& p : m.paths) total += p.operations.size();
  EXPECT_EQ(seen.size(), total);
}

TEST(SpecIngest, TemplateVariables) {
  EXPECT_EQ(template_variables("/articles/{slug}/comments/{id}"), (std::vector<std::string>{"slug", "id"}));
  EXPECT_TRUE(template_variables("/tags").empty());
}
