#include <gtest/gtest.h>

#include "tclfuzz/value_gen.hpp"

using namespace tclfuzz;

namespace {

SchemaDesc str(std::string format = "") {
  SchemaDesc s;
  s.kind = SchemaKind::String;
  s.format = std::move(format);
  return s;
}

SchemaDesc of(SchemaKind k) {
  SchemaDesc s;
  s.kind = k;
  return s;
}

}  // namespace

TEST(ValueGen, DateFormat) { EXPECT_EQ(initial_value(str("date")), "2021-05-28"); }

TEST(ValueGen, ParamExamplePassesThrough) {
  ParamDesc p;
  p.name = "slug";
  p.location = ParamLocation::Path;
  p.schema = str();
  p.example = "slug-123";
  EXPECT_EQ(initial_value(p.schema, &p), "slug-123");
}

TEST(ValueGen, ObjectComposesFormatAndKindDefaults) {
  SchemaDesc obj = of(SchemaKind::Object);
  obj.properties.push_back({"name", str("email")});
  obj.properties.push_back({"age", of(SchemaKind::Integer)});
  EXPECT_EQ(initial_value(obj), (nlohmann::json{{"name", "user@example.com"}, {"age", 1}}));
}

TEST(ValueGen, Precedence) {
  SchemaDesc s = str("email");
  s.enum_values = {"first", "second"};
  EXPECT_EQ(initial_value(s), "first");
  s.example = "ex";
  EXPECT_EQ(initial_value(s), "ex");
  ParamDesc p;
  p.schema = s;
  p.example = "param-ex";
  EXPECT_EQ(initial_value(s, &p), "param-ex");
}

TEST(ValueGen, KindFallbacks) {
  EXPECT_EQ(initial_value(str()), "fuzz");
  EXPECT_EQ(initial_value(of(SchemaKind::Integer)), 1);
  EXPECT_EQ(initial_value(of(SchemaKind::Number)), 1.0);
  EXPECT_EQ(initial_value(of(SchemaKind::Boolean)), true);
  SchemaDesc arr = of(SchemaKind::Array);
  arr.items = std::make_shared<SchemaDesc>(str("ipv4"));
  EXPECT_EQ(initial_value(arr), nlohmann::json::array({"127.0.0.1"}));
  EXPECT_EQ(initial_value(of(SchemaKind::Object)), nlohmann::json::object());
}

TEST(ValueGen, UnknownFormatFallsBackToKind) {
  EXPECT_FALSE(FormatDefaults::standard().lookup("binary").has_value());
  EXPECT_EQ(default_for_format("binary", SchemaKind::String), "fuzz");
  EXPECT_EQ(default_for_format("int64", SchemaKind::Integer), 1);
}

TEST(ValueGen, TableHasNineRows) { EXPECT_EQ(FormatDefaults::standard().entries().size(), 9u); }
