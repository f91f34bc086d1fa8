#include "tclfuzz/http_driver.hpp"

#include <algorithm>
#include <map>

#include <httplib.h>
#include <yaml-cpp/yaml.h>

#include "tclfuzz/errors.hpp"
#include "tclfuzz/util.hpp"

namespace tclfuzz {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string media_type(std::string_view ct) {
  auto out = lower(ct.substr(0, ct.find(';')));
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

bool is_json_type(std::string_view ct) { return ct.empty() || ct.find("json") != std::string_view::npos; }

// scheme://host[:port] and the path prefix of a base URL.
std::pair<std::string, std::string> split_origin(std::string_view url) {
  auto scheme_end = url.find("://");
  std::size_t host_start = scheme_end == std::string_view::npos ? 0 : scheme_end + 3;
  auto slash = url.find('/', host_start);
  if (slash == std::string_view::npos) return {std::string(url), ""};
  std::string prefix(url.substr(slash));
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {std::string(url.substr(0, slash)), prefix};
}

bool is_absolute(std::string_view url) { return url.starts_with("http://") || url.starts_with("https://"); }

}  // namespace

AuthConfig AuthConfig::parse(std::string_view yaml) {
  AuthConfig cfg;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw MalformedConfig(e.what());
  }
  if (!root || root.IsNull()) return cfg;
  if (!root.IsMap()) throw MalformedConfig("auth file must be a mapping");
  YAML::Node auth = root["auth"] ? root["auth"] : root;
  try {
    auto mode = auth["mode"] ? auth["mode"].as<std::string>() : std::string("none");
    if (auth["header"]) cfg.header_name = auth["header"].as<std::string>();
    if (mode == "none") {
      cfg.mode = Mode::None;
    } else if (mode == "static_key") {
      cfg.mode = Mode::StaticKey;
      if (!auth["value"]) throw MalformedConfig("static_key mode needs a value");
      cfg.static_value = auth["value"].as<std::string>();
    } else if (mode == "token_endpoint") {
      cfg.mode = Mode::TokenEndpoint;
      auto tr = auth["token_request"];
      if (!tr || !tr.IsMap()) throw MalformedConfig("token_endpoint mode needs token_request");
      TokenRequest req;
      if (tr["method"]) {
        auto m = parse_method(tr["method"].as<std::string>());
        if (!m) throw MalformedConfig("bad token_request method");
        req.method = *m;
      }
      if (!tr["url"]) throw MalformedConfig("token_request needs a url");
      req.url = tr["url"].as<std::string>();
      if (tr["body"]) req.body = nlohmann::json::parse(yaml_to_json(tr["body"]).dump());
      if (!tr["token_keypath"]) throw MalformedConfig("token_request needs token_keypath");
      req.token_keypath = KeyPath::parse(tr["token_keypath"].as<std::string>());
      if (tr["prefix"]) req.prefix = tr["prefix"].as<std::string>();
      cfg.token_request = std::move(req);
    } else {
      throw MalformedConfig("unknown auth mode '" + mode + "'");
    }
  } catch (const YAML::Exception& e) {
    throw MalformedConfig(e.what());
  }
  return cfg;
}

std::string ConcreteRequest::url() const {
  std::string base = base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base + target;
}

std::string ConcreteRequest::snapshot() const {
  std::string out;
  out += std::string(to_string(method)) + " " + target + " HTTP/1.1\r\n";
  for (const auto& h : headers) out += h.name + ": " + h.value + "\r\n";
  if (!content_type.empty()) out += "Content-Type: " + content_type + "\r\n";
  out += "\r\n";
  out += body;
  return out;
}

ConcreteRequest ConcreteRequest::from_snapshot(std::string_view snap, std::string base) {
  ConcreteRequest req;
  req.base_url = std::move(base);
  auto line_end = snap.find("\r\n");
  if (line_end == std::string_view::npos) throw CorruptSeed("request snapshot without request line");
  auto line = snap.substr(0, line_end);
  auto sp1 = line.find(' ');
  auto sp2 = line.rfind(' ');
  if (sp1 == std::string_view::npos || sp2 <= sp1) throw CorruptSeed("bad request line");
  auto m = parse_method(line.substr(0, sp1));
  if (!m) throw CorruptSeed("bad request method");
  req.method = *m;
  req.target = std::string(line.substr(sp1 + 1, sp2 - sp1 - 1));
  std::size_t pos = line_end + 2;
  while (true) {
    auto end = snap.find("\r\n", pos);
    if (end == std::string_view::npos) throw CorruptSeed("unterminated request headers");
    if (end == pos) {
      pos += 2;
      break;
    }
    auto h = snap.substr(pos, end - pos);
    auto colon = h.find(": ");
    if (colon == std::string_view::npos) throw CorruptSeed("bad header line");
    std::string name(h.substr(0, colon));
    std::string value(h.substr(colon + 2));
    if (lower(name) == "content-type") {
      req.content_type = value;
    } else {
      req.headers.push_back({name, value});
    }
    pos = end + 2;
  }
  req.body = std::string(snap.substr(pos));
  return req;
}

std::string RawResponse::snapshot() const {
  if (status == kTransportError) return "transport error: " + error;
  std::string out = "HTTP/1.1 " + std::to_string(status) + "\r\n";
  if (!content_type.empty()) out += "Content-Type: " + content_type + "\r\n";
  out += "\r\n";
  out += body;
  return out;
}

struct HttpTransport::Impl {
  std::map<std::string, std::unique_ptr<httplib::Client>> clients;

  httplib::Client& client(const std::string& origin) {
    auto& c = clients[origin];
    if (!c) {
      c = std::make_unique<httplib::Client>(origin);
      c->set_keep_alive(true);
      c->set_tcp_nodelay(true);
      c->set_url_encode(false);
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
      c->enable_server_certificate_verification(false);
#endif
    }
    return *c;
  }
};

HttpTransport::HttpTransport() : impl_(std::make_unique<Impl>()) {}
HttpTransport::~HttpTransport() = default;

RawResponse HttpTransport::send(const ConcreteRequest& request, std::chrono::milliseconds timeout) {
  RawResponse out;
  auto [origin, prefix] = split_origin(request.base_url);
  auto start = std::chrono::steady_clock::now();
  try {
    auto& cli = impl_->client(origin);
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    httplib::Request req;
    req.method = std::string(to_string(request.method));
    req.path = prefix + request.target;
    for (const auto& h : request.headers) req.headers.emplace(h.name, h.value);
    if (!request.content_type.empty()) req.headers.emplace("Content-Type", request.content_type);
    req.body = request.body;
    auto res = cli.send(req);
    if (!res) {
      out.error = httplib::to_string(res.error());
      impl_->clients.erase(origin);
    } else {
      out.status = res->status;
      out.content_type = media_type(res->get_header_value("Content-Type"));
      out.body = res->body;
    }
  } catch (const std::exception& e) {
    out.status = kTransportError;
    out.error = e.what();
    impl_->clients.erase(origin);
  }
  out.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Header acquire_token(const AuthConfig& auth, Transport& transport, std::string_view base_url,
                     std::chrono::milliseconds timeout) {
  switch (auth.mode) {
    case AuthConfig::Mode::None:
      throw TokenUnavailable("auth mode is none");
    case AuthConfig::Mode::StaticKey:
      if (!auth.static_value) throw TokenUnavailable("static_key without value");
      return {auth.header_name, *auth.static_value};
    case AuthConfig::Mode::TokenEndpoint:
      break;
  }
  if (!auth.token_request) throw TokenUnavailable("token_endpoint without token_request");
  const auto& tr = *auth.token_request;
  ConcreteRequest req;
  req.method = tr.method;
  if (is_absolute(tr.url)) {
    auto [origin, path] = split_origin(tr.url);
    req.base_url = origin;
    req.target = path.empty() ? "/" : path;
  } else {
    req.base_url = std::string(base_url);
    req.target = tr.url.starts_with('/') ? tr.url : "/" + tr.url;
  }
  if (tr.method != HttpMethod::Get) {
    req.body = tr.body.dump();
    req.content_type = "application/json";
  }
  auto res = transport.send(req, timeout);
  if (res.status == kTransportError) throw TokenUnavailable("token endpoint unreachable: " + res.error);
  if (res.status < 200 || res.status >= 300) {
    throw TokenUnavailable("token endpoint answered " + std::to_string(res.status));
  }
  auto body = nlohmann::json::parse(res.body, nullptr, false);
  if (body.is_discarded()) throw TokenUnavailable("token endpoint body is not JSON");
  auto values = extract_by_keypath(body, tr.token_keypath);
  if (values.empty()) throw TokenUnavailable("no token at " + tr.token_keypath.to_string());
  return {auth.header_name, tr.prefix + literal_text(values.front())};
}

AuthSession::AuthSession(AuthConfig auth, std::string base_url)
    : auth_(std::move(auth)), base_url_(std::move(base_url)) {}

std::optional<Header> AuthSession::header(Transport& transport) {
  if (auth_.mode == AuthConfig::Mode::None) return std::nullopt;
  if (!cached_) cached_ = acquire_token(auth_, transport, base_url_);
  return cached_;
}

bool AuthSession::refresh(Transport& transport) {
  if (auth_.mode != AuthConfig::Mode::TokenEndpoint) return false;
  try {
    cached_ = acquire_token(auth_, transport, base_url_);
    return true;
  } catch (const TokenUnavailable&) {
    return false;
  }
}

namespace {

std::string json_leaf(const ParamSlot& slot) {
  if (slot.kind == SchemaKind::String) return json_quote(slot.value);
  if (nlohmann::json::accept(slot.value)) return slot.value;
  return json_quote(slot.value);
}

struct JsonTree {
  std::optional<std::string> leaf;
  std::vector<std::pair<std::string, JsonTree>> children;

  JsonTree& child(const std::string& name) {
    for (auto& [n, t] : children) {
      if (n == name) return t;
    }
    children.emplace_back(name, JsonTree{});
    return children.back().second;
  }

  void write(std::string& out) const {
    if (leaf) {
      out += *leaf;
      return;
    }
    out += '{';
    bool first = true;
    for (const auto& [n, t] : children) {
      if (!first) out += ',';
      first = false;
      out += json_quote(n);
      out += ':';
      t.write(out);
    }
    out += '}';
  }
};

}  // namespace

std::string render_body(const RequestNode& node, std::string_view content_type) {
  const bool json = is_json_type(media_type(content_type));
  if (!json) {
    std::string out;
    for (const auto& s : node.slots) {
      if (s.location != ParamLocation::BodyField || !s.present) continue;
      if (!out.empty()) out += '&';
      out += percent_encode(s.name) + "=" + percent_encode(s.value);
    }
    return out;
  }
  JsonTree root;
  for (const auto& s : node.slots) {
    if (s.location != ParamLocation::BodyField || !s.present) continue;
    if (s.name == "$body") return json_leaf(s);
    JsonTree* t = &root;
    std::size_t pos = 0;
    while (true) {
      auto dot = s.name.find('.', pos);
      t = &t->child(s.name.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos));
      if (dot == std::string::npos) break;
      // A leaf already sitting where an object is needed: the object wins.
      t->leaf.reset();
      pos = dot + 1;
    }
    if (t->children.empty()) t->leaf = json_leaf(s);
  }
  std::string out;
  root.write(out);
  return out;
}

ConcreteRequest render_request(const RequestNode& node, const ApiModel& model, std::string_view base_url,
                               const std::optional<Header>& auth, std::size_t repeat_index) {
  ConcreteRequest req;
  req.method = node.method;
  req.base_url = std::string(base_url);
  req.node_ref = node.ref();

  std::string target;
  std::size_t i = 0;
  const std::string& tpl = node.path;
  while (i < tpl.size()) {
    if (tpl[i] == '{') {
      auto close = tpl.find('}', i);
      if (close != std::string::npos) {
        auto name = tpl.substr(i + 1, close - i - 1);
        const ParamSlot* s = node.find(name, ParamLocation::Path);
        if (s && s->present) target += percent_encode(strip_control(s->value));
        i = close + 1;
        continue;
      }
    }
    target += tpl[i++];
  }
  std::string query;
  for (const auto& s : node.slots) {
    if (s.location != ParamLocation::Query || !s.present) continue;
    query += query.empty() ? '?' : '&';
    query += percent_encode(strip_control(s.name)) + "=" + percent_encode(strip_control(s.value));
  }
  req.target = target + query;

  for (const auto& s : node.slots) {
    if (s.location != ParamLocation::Header || !s.present) continue;
    req.headers.push_back({strip_control(s.name), strip_control(s.value)});
  }
  if (auth) req.headers.push_back({strip_control(auth->name), strip_control(auth->value)});

  const OperationDesc* op = model.find_operation(node.ref());
  bool has_body_slots = std::any_of(node.slots.begin(), node.slots.end(),
                                    [](const ParamSlot& s) { return s.location == ParamLocation::BodyField; });
  if ((op && op->request_body) || has_body_slots) {
    std::vector<std::string> types;
    if (op && op->request_body) types = op->request_body->content_types;
    if (types.empty()) types.push_back("application/json");
    req.content_type = types[repeat_index % types.size()];
    req.body = render_body(node, req.content_type);
  }

  for (const auto& s : node.slots) {
    if (s.present) req.params_sent.push_back(s.name);
  }
  return req;
}

HttpExchange send_and_record(const ConcreteRequest& request, ResponseStore& store, Transport& transport,
                             std::chrono::milliseconds timeout) {
  HttpExchange ex;
  ex.request = request;
  ex.node_ref = request.node_ref;
  ex.response = transport.send(request, timeout);
  if (ex.response.status >= 200 && ex.response.status < 300) {
    auto body = nlohmann::json::parse(ex.response.body, nullptr, false);
    if (!body.is_discarded() && (body.is_object() || body.is_array())) store.record(ex.node_ref, std::move(body));
  }
  return ex;
}

}  // namespace tclfuzz
