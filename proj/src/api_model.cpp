#include "tclfuzz/api_model.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

#include "tclfuzz/errors.hpp"
#include "tclfuzz/util.hpp"

namespace tclfuzz {

using ojson = nlohmann::ordered_json;

std::string_view to_string(HttpMethod m) {
  switch (m) {
    case HttpMethod::Post: return "POST";
    case HttpMethod::Get: return "GET";
    case HttpMethod::Put: return "PUT";
    case HttpMethod::Patch: return "PATCH";
    case HttpMethod::Delete: return "DELETE";
    case HttpMethod::Head: return "HEAD";
    case HttpMethod::Options: return "OPTIONS";
    case HttpMethod::Trace: return "TRACE";
  }
  return "GET";
}

std::optional<HttpMethod> parse_method(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (auto m : {HttpMethod::Post, HttpMethod::Get, HttpMethod::Put, HttpMethod::Patch,
                 HttpMethod::Delete, HttpMethod::Head, HttpMethod::Options, HttpMethod::Trace}) {
    if (up == to_string(m)) return m;
  }
  return std::nullopt;
}

std::string to_string(const OperationRef& op) {
  return std::string(to_string(op.method)) + " " + op.path;
}

std::string_view to_string(SchemaKind k) {
  switch (k) {
    case SchemaKind::String: return "string";
    case SchemaKind::Integer: return "integer";
    case SchemaKind::Number: return "number";
    case SchemaKind::Boolean: return "boolean";
    case SchemaKind::Array: return "array";
    case SchemaKind::Object: return "object";
  }
  return "object";
}

std::optional<SchemaKind> parse_schema_kind(std::string_view text) {
  for (auto k : {SchemaKind::String, SchemaKind::Integer, SchemaKind::Number, SchemaKind::Boolean,
                 SchemaKind::Array, SchemaKind::Object}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ParamLocation l) {
  switch (l) {
    case ParamLocation::Path: return "path";
    case ParamLocation::Query: return "query";
    case ParamLocation::Header: return "header";
    case ParamLocation::BodyField: return "body";
  }
  return "query";
}

bool SchemaDesc::is_required(std::string_view name) const {
  return std::find(required.begin(), required.end(), name) != required.end();
}

const SchemaDesc* SchemaDesc::property(std::string_view name) const {
  for (const auto& p : properties) {
    if (p.name == name) return &p.schema;
  }
  return nullptr;
}

bool operator==(const SchemaProperty& a, const SchemaProperty& b) {
  return a.name == b.name && a.schema == b.schema;
}

bool operator==(const SchemaDesc& a, const SchemaDesc& b) {
  if (a.kind != b.kind || a.format != b.format || a.properties != b.properties ||
      a.required != b.required || a.enum_values != b.enum_values || a.example != b.example ||
      a.constraints != b.constraints) {
    return false;
  }
  if (static_cast<bool>(a.items) != static_cast<bool>(b.items)) return false;
  return !a.items || *a.items == *b.items;
}

const ParamDesc* OperationDesc::find_param(std::string_view name) const {
  for (const auto& p : parameters) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const OperationDesc* PathItem::find(HttpMethod m) const {
  for (const auto& op : operations) {
    if (op.method == m) return &op;
  }
  return nullptr;
}

const PathItem* ApiModel::find_path(std::string_view path_template) const {
  for (const auto& p : paths) {
    if (p.path_template == path_template) return &p;
  }
  return nullptr;
}

const OperationDesc* ApiModel::find_operation(std::string_view path_template, HttpMethod m) const {
  const PathItem* p = find_path(path_template);
  return p ? p->find(m) : nullptr;
}

std::vector<std::string> template_variables(std::string_view path_template) {
  std::vector<std::string> vars;
  std::size_t pos = 0;
  while ((pos = path_template.find('{', pos)) != std::string_view::npos) {
    auto end = path_template.find('}', pos);
    if (end == std::string_view::npos) break;
    vars.emplace_back(path_template.substr(pos + 1, end - pos - 1));
    pos = end + 1;
  }
  return vars;
}

namespace {

constexpr int kSelfRefDepth = 3;

const std::array<std::string_view, 10> kConstraintKeys = {
    "minimum",   "maximum",   "exclusiveMinimum", "exclusiveMaximum", "minLength",
    "maxLength", "pattern",   "minItems",         "maxItems",         "multipleOf"};

nlohmann::json to_plain(const ojson& j) { return nlohmann::json::parse(j.dump()); }

class SchemaResolver {
 public:
  SchemaResolver(const ojson& root, std::vector<std::string>* warnings)
      : root_(root), warnings_(warnings) {}

  SchemaDesc convert(const ojson& node) {
    if (!node.is_object()) {
      if (node.is_boolean()) return SchemaDesc{};
      throw MalformedDocument("schema is not an object");
    }
    if (auto ref = node.find("$ref"); ref != node.end()) {
      if (!ref->is_string()) throw MalformedDocument("$ref is not a string");
      return follow(ref->get<std::string>());
    }
    for (const char* combinator : {"allOf", "oneOf", "anyOf"}) {
      auto it = node.find(combinator);
      if (it != node.end() && it->is_array() && !it->empty()) {
        warn(std::string(combinator) + " collapsed to its first branch");
        return convert((*it)[0]);
      }
    }

    SchemaDesc out;
    out.kind = infer_kind(node);
    if (auto f = node.find("format"); f != node.end() && f->is_string()) out.format = f->get<std::string>();
    if (auto e = node.find("enum"); e != node.end() && e->is_array()) {
      for (const auto& v : *e) out.enum_values.push_back(to_plain(v));
    }
    if (auto ex = node.find("example"); ex != node.end()) {
      out.example = to_plain(*ex);
    } else if (auto exs = node.find("examples"); exs != node.end() && exs->is_array() && !exs->empty()) {
      out.example = to_plain((*exs)[0]);
    }
    for (auto key : kConstraintKeys) {
      auto it = node.find(std::string(key));
      if (it != node.end()) out.constraints[std::string(key)] = to_plain(*it);
    }
    if (auto props = node.find("properties"); props != node.end() && props->is_object()) {
      for (auto it = props->begin(); it != props->end(); ++it) {
        out.properties.push_back({it.key(), convert(it.value())});
      }
    }
    if (auto req = node.find("required"); req != node.end() && req->is_array()) {
      for (const auto& r : *req) {
        if (r.is_string()) out.required.push_back(r.get<std::string>());
      }
    }
    if (out.kind == SchemaKind::Array) {
      auto items = node.find("items");
      if (items != node.end()) {
        out.items = std::make_shared<const SchemaDesc>(convert(*items));
      } else {
        warn("array schema without items; assuming string items");
        SchemaDesc s;
        s.kind = SchemaKind::String;
        out.items = std::make_shared<const SchemaDesc>(std::move(s));
      }
    }
    return out;
  }

 private:
  SchemaDesc follow(const std::string& ref) {
    if (ref.rfind("#/", 0) != 0) {
      warn("external reference not resolved: " + ref);
      return SchemaDesc{};
    }
    int occurrences = static_cast<int>(std::count(stack_.begin(), stack_.end(), ref));
    if (occurrences > 0) {
      auto last = std::find(stack_.rbegin(), stack_.rend(), ref);
      bool self_only = std::all_of(stack_.rbegin(), last, [&](const std::string& r) { return r == ref; });
      if (!self_only) throw CyclicRef("reference cycle through " + ref);
      if (occurrences >= kSelfRefDepth) return SchemaDesc{};
    }
    const ojson* target = nullptr;
    try {
      auto ptr = ojson::json_pointer(ref.substr(1));
      if (root_.contains(ptr)) target = &root_.at(ptr);
    } catch (const ojson::exception&) {
      target = nullptr;
    }
    if (!target) throw DanglingRef(ref);
    stack_.push_back(ref);
    SchemaDesc out = convert(*target);
    stack_.pop_back();
    return out;
  }

  SchemaKind infer_kind(const ojson& node) {
    if (auto t = node.find("type"); t != node.end()) {
      if (t->is_string()) {
        if (auto k = parse_schema_kind(t->get<std::string>())) return *k;
        warn("unknown schema type " + t->get<std::string>());
      } else if (t->is_array()) {
        for (const auto& v : *t) {
          if (v.is_string() && v.get<std::string>() != "null") {
            if (auto k = parse_schema_kind(v.get<std::string>())) return *k;
          }
        }
      }
    }
    if (node.contains("properties")) return SchemaKind::Object;
    if (node.contains("items")) return SchemaKind::Array;
    if (auto e = node.find("enum"); e != node.end() && e->is_array() && !e->empty()) {
      const auto& v = (*e)[0];
      if (v.is_string()) return SchemaKind::String;
      if (v.is_number_integer()) return SchemaKind::Integer;
      if (v.is_number()) return SchemaKind::Number;
      if (v.is_boolean()) return SchemaKind::Boolean;
    }
    return SchemaKind::Object;
  }

  void warn(std::string msg) {
    if (warnings_) warnings_->push_back(std::move(msg));
  }

  const ojson& root_;
  std::vector<std::string>* warnings_;
  std::vector<std::string> stack_;
};

// Follows a chain of $refs on a non-schema object (parameter, response, ...).
const ojson& deref(const ojson& node, const ojson& root, std::vector<std::string>& warnings) {
  const ojson* cur = &node;
  for (int hops = 0; hops < 16; ++hops) {
    if (!cur->is_object()) return *cur;
    auto it = cur->find("$ref");
    if (it == cur->end() || !it->is_string()) return *cur;
    auto ref = it->get<std::string>();
    if (ref.rfind("#/", 0) != 0) {
      warnings.push_back("external reference not resolved: " + ref);
      static const ojson kEmpty = ojson::object();
      return kEmpty;
    }
    auto ptr = ojson::json_pointer(ref.substr(1));
    if (!root.contains(ptr)) throw DanglingRef(ref);
    cur = &root.at(ptr);
  }
  throw CyclicRef("reference chain too long");
}

std::string media_type(std::string_view ct) {
  auto semi = ct.find(';');
  std::string out(ct.substr(0, semi));
  while (!out.empty() && out.back() == ' ') out.pop_back();
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Preferred schema source among content entries: JSON, then forms, then first.
const ojson* pick_content_schema(const ojson& content) {
  const ojson* first = nullptr;
  const ojson* form = nullptr;
  for (auto it = content.begin(); it != content.end(); ++it) {
    if (!it.value().is_object() || !it.value().contains("schema")) continue;
    auto mt = media_type(it.key());
    if (mt == "application/json" || (mt.size() > 5 && mt.ends_with("+json"))) return &it.value()["schema"];
    if (!form && (mt == "application/x-www-form-urlencoded" || mt == "multipart/form-data")) {
      form = &it.value()["schema"];
    }
    if (!first) first = &it.value()["schema"];
  }
  return form ? form : first;
}

void flatten_body(const SchemaDesc& schema, const std::string& prefix, bool required,
                  std::vector<ParamDesc>& out) {
  if (schema.kind == SchemaKind::Object && !schema.properties.empty()) {
    for (const auto& p : schema.properties) {
      flatten_body(p.schema, prefix.empty() ? p.name : prefix + "." + p.name,
                   required && schema.is_required(p.name), out);
    }
    return;
  }
  ParamDesc param;
  param.name = prefix.empty() ? "$body" : prefix;
  param.location = ParamLocation::BodyField;
  param.schema = schema;
  param.required = required;
  param.example = schema.example;
  out.push_back(std::move(param));
}

std::optional<ParamLocation> parse_location(std::string_view in) {
  if (in == "path") return ParamLocation::Path;
  if (in == "query") return ParamLocation::Query;
  if (in == "header") return ParamLocation::Header;
  return std::nullopt;
}

bool security_required(const ojson& security) {
  if (!security.is_array()) return false;
  for (const auto& req : security) {
    // An empty requirement object means anonymous access is allowed.
    if (req.is_object() && req.empty()) return false;
  }
  return !security.empty();
}

class SpecParser {
 public:
  explicit SpecParser(const ojson& root) : root_(root), schemas_(root, &model_.warnings) {}

  ApiModel run() {
    check_version();
    if (auto info = root_.find("info"); info != root_.end() && info->is_object()) {
      if (auto t = info->find("title"); t != info->end() && t->is_string()) model_.title = t->get<std::string>();
    }
    read_base_url();
    global_auth_ = root_.contains("security") && security_required(root_["security"]);

    auto paths = root_.find("paths");
    if (paths != root_.end()) {
      if (!paths->is_object()) throw MalformedDocument("paths is not an object");
      std::set<std::string> seen;
      for (auto it = paths->begin(); it != paths->end(); ++it) {
        if (!seen.insert(it.key()).second) throw MalformedDocument("duplicate path " + it.key());
        model_.paths.push_back(read_path(it.key(), deref(it.value(), root_, model_.warnings)));
      }
    }
    return std::move(model_);
  }

 private:
  void check_version() {
    if (root_.contains("swagger")) throw UnsupportedVersion("Swagger/OpenAPI 2.0 is not supported");
    auto v = root_.find("openapi");
    if (v == root_.end() || !v->is_string()) throw UnsupportedVersion("missing openapi version field");
    auto s = v->get<std::string>();
    if (s.rfind("3.", 0) != 0) throw UnsupportedVersion("openapi " + s);
  }

  void read_base_url() {
    std::string url;
    if (auto servers = root_.find("servers");
        servers != root_.end() && servers->is_array() && !servers->empty()) {
      const auto& first = (*servers)[0];
      if (first.is_object() && first.contains("url") && first["url"].is_string()) {
        url = first["url"].get<std::string>();
      }
    }
    if (url.empty()) {
      model_.warnings.push_back("no servers entry; base URL defaults to http://localhost");
      url = "http://localhost";
    } else if (url.find("://") == std::string::npos) {
      model_.warnings.push_back("relative server URL " + url + " resolved against http://localhost");
      url = "http://localhost" + (url.front() == '/' ? url : "/" + url);
    }
    while (url.size() > 1 && url.back() == '/' && url[url.size() - 2] != '/') url.pop_back();
    model_.base_url = url;
  }

  PathItem read_path(const std::string& tpl, const ojson& item) {
    PathItem out;
    out.path_template = tpl;
    if (!item.is_object()) throw MalformedDocument("path item " + tpl + " is not an object");

    std::vector<ParamDesc> shared;
    if (auto params = item.find("parameters"); params != item.end()) read_params(*params, shared, tpl);

    static constexpr std::array<std::string_view, 8> kMethods = {
        "post", "get", "put", "patch", "delete", "head", "options", "trace"};
    for (auto it = item.begin(); it != item.end(); ++it) {
      if (std::find(kMethods.begin(), kMethods.end(), it.key()) == kMethods.end()) continue;
      out.operations.push_back(read_operation(tpl, *parse_method(it.key()), it.value(), shared));
    }

    for (const auto& var : template_variables(tpl)) {
      for (const auto& op : out.operations) {
        const ParamDesc* p = op.find_param(var);
        if (!p || p->location != ParamLocation::Path) {
          if (std::find(out.unresolved_symbols.begin(), out.unresolved_symbols.end(), var) ==
              out.unresolved_symbols.end()) {
            out.unresolved_symbols.push_back(var);
            model_.warnings.push_back(tpl + ": template variable {" + var +
                                      "} has no path parameter");
          }
        }
      }
    }
    return out;
  }

  void read_params(const ojson& list, std::vector<ParamDesc>& out, const std::string& where) {
    if (!list.is_array()) throw MalformedDocument(where + ": parameters is not an array");
    for (const auto& raw : list) {
      const ojson& p = deref(raw, root_, model_.warnings);
      if (!p.is_object() || !p.contains("name") || !p.contains("in")) {
        throw MalformedDocument(where + ": parameter without name/in");
      }
      auto in = p["in"].get<std::string>();
      auto loc = parse_location(in);
      if (!loc) {
        model_.warnings.push_back(where + ": " + in + " parameter " + p["name"].get<std::string>() +
                                  " not supported");
        continue;
      }
      ParamDesc param;
      param.name = p["name"].get<std::string>();
      param.location = *loc;
      param.required = *loc == ParamLocation::Path || p.value("required", false);
      if (auto s = p.find("schema"); s != p.end()) {
        param.schema = schemas_.convert(*s);
      } else {
        param.schema.kind = SchemaKind::String;
      }
      if (auto ex = p.find("example"); ex != p.end()) {
        param.example = to_plain(*ex);
      } else if (auto exs = p.find("examples"); exs != p.end() && exs->is_object() && !exs->empty()) {
        const ojson& first = deref(exs->begin().value(), root_, model_.warnings);
        if (first.is_object() && first.contains("value")) param.example = to_plain(first["value"]);
      }
      if (!param.example) param.example = param.schema.example;

      auto same = std::find_if(out.begin(), out.end(), [&](const ParamDesc& q) {
        return q.name == param.name && q.location == param.location;
      });
      if (same != out.end()) {
        *same = std::move(param);
      } else {
        out.push_back(std::move(param));
      }
    }
  }

  OperationDesc read_operation(const std::string& tpl, HttpMethod method, const ojson& node,
                               const std::vector<ParamDesc>& shared) {
    std::string where = std::string(to_string(method)) + " " + tpl;
    if (!node.is_object()) throw MalformedDocument(where + " is not an object");
    OperationDesc op;
    op.method = method;
    if (auto id = node.find("operationId"); id != node.end() && id->is_string()) op.operation_id = id->get<std::string>();

    op.parameters = shared;
    if (auto params = node.find("parameters"); params != node.end()) read_params(*params, op.parameters, where);

    if (auto rb = node.find("requestBody"); rb != node.end()) {
      const ojson& body = deref(*rb, root_, model_.warnings);
      RequestBodyDesc desc;
      desc.required = body.value("required", false);
      if (auto content = body.find("content"); content != body.end() && content->is_object()) {
        for (auto it = content->begin(); it != content->end(); ++it) {
          auto mt = media_type(it.key());
          if (std::find(desc.content_types.begin(), desc.content_types.end(), mt) == desc.content_types.end()) {
            desc.content_types.push_back(mt);
          }
        }
        if (const ojson* s = pick_content_schema(*content)) desc.schema = schemas_.convert(*s);
      }
      flatten_body(desc.schema, "", desc.required, op.parameters);
      op.request_body = std::move(desc);
    }

    auto responses = node.find("responses");
    if (responses != node.end() && responses->is_object()) {
      for (auto it = responses->begin(); it != responses->end(); ++it) {
        int code = 0;
        const auto& key = it.key();
        auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), code);
        if (ec != std::errc() || p != key.data() + key.size() || code < 100 || code > 599) {
          model_.warnings.push_back(where + ": response key '" + key + "' ignored");
          continue;
        }
        const ojson& resp = deref(it.value(), root_, model_.warnings);
        ResponseDesc rd;
        rd.status_code = code;
        if (auto content = resp.find("content"); content != resp.end() && content->is_object()) {
          for (auto c = content->begin(); c != content->end(); ++c) {
            auto mt = media_type(c.key());
            if (std::find(rd.content_types.begin(), rd.content_types.end(), mt) == rd.content_types.end()) {
              rd.content_types.push_back(mt);
            }
          }
          if (const ojson* s = pick_content_schema(*content)) rd.body_schema = schemas_.convert(*s);
        }
        if (resp.is_object() && resp.contains("links")) model_.warnings.push_back(where + ": links ignored");
        op.responses.push_back(std::move(rd));
      }
    }
    if (op.responses.empty()) {
      model_.warnings.push_back(where + ": no numeric responses documented; assuming 200");
      op.responses.push_back(ResponseDesc{});
    }
    if (node.contains("callbacks")) model_.warnings.push_back(where + ": callbacks ignored");

    if (auto sec = node.find("security"); sec != node.end()) {
      op.requires_auth = security_required(*sec);
    } else {
      op.requires_auth = global_auth_;
    }
    return op;
  }

  const ojson& root_;
  ApiModel model_;
  SchemaResolver schemas_;
  bool global_auth_ = false;
};

ojson schema_to_json(const SchemaDesc& s) {
  ojson out = ojson::object();
  out["type"] = std::string(to_string(s.kind));
  if (!s.format.empty()) out["format"] = s.format;
  if (!s.properties.empty()) {
    ojson props = ojson::object();
    for (const auto& p : s.properties) props[p.name] = schema_to_json(p.schema);
    out["properties"] = std::move(props);
  }
  if (!s.required.empty()) out["required"] = s.required;
  if (s.items) out["items"] = schema_to_json(*s.items);
  if (!s.enum_values.empty()) {
    ojson e = ojson::array();
    for (const auto& v : s.enum_values) e.push_back(ojson::parse(v.dump()));
    out["enum"] = std::move(e);
  }
  if (s.example) out["example"] = ojson::parse(s.example->dump());
  for (auto it = s.constraints.begin(); it != s.constraints.end(); ++it) {
    out[it.key()] = ojson::parse(it.value().dump());
  }
  return out;
}

}  // namespace

SchemaDesc resolve_local_ref(const ojson& node, const ojson& document_root,
                             std::vector<std::string>* warnings) {
  SchemaResolver resolver(document_root, warnings);
  return resolver.convert(node);
}

ApiModel parse_spec(std::string_view document, DocumentFormat hint) {
  ojson root;
  try {
    switch (hint) {
      case DocumentFormat::Json: root = ojson::parse(document); break;
      case DocumentFormat::Yaml: root = yaml_to_json(YAML::Load(std::string(document))); break;
      case DocumentFormat::Auto: root = parse_yaml_or_json(document); break;
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedDocument(e.what());
  }
  if (!root.is_object()) throw MalformedDocument("top level is not a mapping");
  return SpecParser(root).run();
}

ApiModel parse_spec_file(const std::string& path) { return parse_spec(read_file(path)); }

std::vector<OperationEntry> list_operations(const ApiModel& model) {
  std::vector<OperationEntry> out;
  for (const auto& p : model.paths) {
    std::vector<const OperationDesc*> ops;
    for (const auto& op : p.operations) ops.push_back(&op);
    std::stable_sort(ops.begin(), ops.end(), [](const OperationDesc* a, const OperationDesc* b) {
      return method_rank(a->method) < method_rank(b->method);
    });
    for (const auto* op : ops) out.push_back({p.path_template, op->method, op});
  }
  return out;
}

ojson to_openapi_json(const ApiModel& model) {
  ojson doc = ojson::object();
  doc["openapi"] = "3.0.3";
  doc["info"] = {{"title", model.title}, {"version", "1.0.0"}};
  doc["servers"] = ojson::array({ojson{{"url", model.base_url}}});
  ojson paths = ojson::object();
  bool any_auth = false;
  for (const auto& p : model.paths) {
    ojson item = ojson::object();
    for (const auto& op : p.operations) {
      ojson o = ojson::object();
      if (!op.operation_id.empty()) o["operationId"] = op.operation_id;
      ojson params = ojson::array();
      for (const auto& param : op.parameters) {
        if (param.location == ParamLocation::BodyField) continue;
        ojson jp = {{"name", param.name},
                    {"in", std::string(to_string(param.location))},
                    {"required", param.required},
                    {"schema", schema_to_json(param.schema)}};
        if (param.example) jp["example"] = ojson::parse(param.example->dump());
        params.push_back(std::move(jp));
      }
      if (!params.empty()) o["parameters"] = std::move(params);
      if (op.request_body) {
        ojson content = ojson::object();
        for (const auto& ct : op.request_body->content_types) {
          content[ct] = {{"schema", schema_to_json(op.request_body->schema)}};
        }
        o["requestBody"] = {{"required", op.request_body->required}, {"content", std::move(content)}};
      }
      ojson responses = ojson::object();
      for (const auto& r : op.responses) {
        ojson jr = {{"description", ""}};
        if (!r.content_types.empty()) {
          ojson content = ojson::object();
          for (const auto& ct : r.content_types) {
            content[ct] = ojson::object();
            if (r.body_schema) content[ct]["schema"] = schema_to_json(*r.body_schema);
          }
          jr["content"] = std::move(content);
        }
        responses[std::to_string(r.status_code)] = std::move(jr);
      }
      o["responses"] = std::move(responses);
      if (op.requires_auth) {
        o["security"] = ojson::array({ojson{{"auth", ojson::array()}}});
        any_auth = true;
      } else {
        o["security"] = ojson::array();
      }
      std::string key(to_string(op.method));
      std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
      item[key] = std::move(o);
    }
    paths[p.path_template] = std::move(item);
  }
  doc["paths"] = std::move(paths);
  if (any_auth) {
    doc["components"] = {{"securitySchemes", {{"auth", {{"type", "http"}, {"scheme", "bearer"}}}}}};
  }
  return doc;
}

}  // namespace tclfuzz
