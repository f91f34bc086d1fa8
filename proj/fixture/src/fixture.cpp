#include "tclfuzz/fixture.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <regex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace tclfuzz::fixture {

using nlohmann::json;

std::string_view to_string(TriggerKind k) {
  switch (k) {
    case TriggerKind::WrongTypeField: return "WrongTypeField";
    case TriggerKind::MissingRequiredField: return "MissingRequiredField";
    case TriggerKind::OversizedString: return "OversizedString";
    case TriggerKind::BadFormatValue: return "BadFormatValue";
    case TriggerKind::UnknownId: return "UnknownId";
    case TriggerKind::NumericOverflow: return "NumericOverflow";
  }
  return "unknown";
}

std::vector<FaultSpec> default_faults() {
  return {
      {"wrong-type-title", TriggerKind::WrongTypeField, "POST", "/articles", "article.title", 0},
      {"missing-comment-body", TriggerKind::MissingRequiredField, "POST", "/articles/{slug}/comments", "comment.body", 0},
      {"oversized-article-body", TriggerKind::OversizedString, "PUT", "/articles/{slug}", "article.body", 256},
      {"unknown-slug", TriggerKind::UnknownId, "GET", "/articles/{slug}", "slug", 0},
      {"bad-email-format", TriggerKind::BadFormatValue, "POST", "/users", "user.email", 0},
      {"comment-id-overflow", TriggerKind::NumericOverflow, "DELETE", "/articles/{slug}/comments/{id}", "id", 0},
  };
}

namespace {

constexpr const char* kTimestamp = "2021-05-28T10:00:00.000Z";

struct User {
  int id = 0;
  std::string username, email, password, bio, image;
  std::set<int> following;
};

struct Comment {
  long long id = 0;
  std::string body;
  int author = 0;
};

struct Article {
  long long id = 0;
  std::string slug, title, description, body;
  std::vector<std::string> tags;
  int author = 0;
  std::set<int> favorited_by;
  std::vector<Comment> comments;
};

std::string slugify(std::string_view title) {
  std::string out;
  bool dash = false;
  for (unsigned char c : title) {
    if (std::isalnum(c) && c < 0x80) {
      if (dash && !out.empty()) out += '-';
      dash = false;
      out += static_cast<char>(std::tolower(c));
    } else {
      dash = true;
    }
  }
  return out;
}

bool well_formed_email(const std::string& s) {
  static const std::regex re(R"(^[A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(\.[A-Za-z0-9-]+)+$)");
  return std::regex_match(s, re);
}

// Integer literal strictly above INT32_MAX.
bool above_int32(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) return false;
  auto digits = s.substr(std::min(s.find_first_not_of('0'), s.size()));
  if (digits.size() != 10) return digits.size() > 10;
  return digits > "2147483647";
}

std::optional<long long> parse_id(const std::string& s) {
  if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return std::stoll(s);
}

const json* field_at(const json& body, std::string_view dotted) {
  const json* cur = &body;
  std::size_t pos = 0;
  while (true) {
    if (!cur->is_object()) return nullptr;
    auto dot = dotted.find('.', pos);
    auto key = std::string(dotted.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos));
    auto it = cur->find(key);
    if (it == cur->end()) return nullptr;
    cur = &*it;
    if (dot == std::string_view::npos) return cur;
    pos = dot + 1;
  }
}

bool nonempty_string(const json* v) { return v && v->is_string() && !v->get_ref<const std::string&>().empty(); }

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(-1, ' ', false, json::error_handler_t::replace), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"errors", {{"body", {message}}}}});
}

}  // namespace

struct Fixture::Impl {
  std::vector<FaultSpec> faults;
  httplib::Server server;
  std::thread thread;
  int port = 0;
  bool running = false;

  mutable std::mutex mu;
  std::map<int, User> users;
  std::map<std::string, Article> articles;
  int next_user = 1;
  long long next_article = 1;
  long long next_comment = 1;
  std::map<std::string, std::size_t> hits;
  std::size_t served = 0;

  void reset_locked() {
    users.clear();
    articles.clear();
    next_user = 1;
    next_article = 1;
    next_comment = 1;
    User jake;
    jake.id = next_user++;
    jake.username = "jake";
    jake.email = "jake@jake.jake";
    jake.password = "jakejake";
    jake.bio = "I work at statefarm";
    jake.image = "https://i.stack.imgur.com/xHWG8.jpg";
    users.emplace(jake.id, jake);
  }

  const FaultSpec* armed(TriggerKind kind, std::string_view method, std::string_view path) const {
    for (const auto& f : faults) {
      if (f.trigger == kind && f.method == method && f.path == path) return &f;
    }
    return nullptr;
  }

  void fault(const FaultSpec& f, httplib::Response& res) {
    ++hits[f.id];
    send_json(res, 500, {{"errors", {{"body", {"internal error"}}}}, {"fault", f.id}});
  }

  // Body-field faults for one operation. True when one fired.
  bool body_faults(std::string_view method, std::string_view path, const json& body, httplib::Response& res) {
    for (const auto& f : faults) {
      if (f.method != method || f.path != path) continue;
      const json* v = field_at(body, f.field);
      bool fire = false;
      switch (f.trigger) {
        case TriggerKind::WrongTypeField: fire = v && !v->is_string(); break;
        case TriggerKind::MissingRequiredField: fire = v == nullptr; break;
        case TriggerKind::OversizedString: fire = v && v->is_string() && v->get_ref<const std::string&>().size() > f.threshold; break;
        case TriggerKind::NumericOverflow: fire = v && v->is_number_unsigned() && v->get<std::uint64_t>() > 2147483647ULL; break;
        case TriggerKind::BadFormatValue:
        case TriggerKind::UnknownId: break;
      }
      if (fire) {
        fault(f, res);
        return true;
      }
    }
    return false;
  }

  bool overflow_fault(std::string_view method, std::string_view path, std::string_view param, const std::string& value,
                      httplib::Response& res) {
    const FaultSpec* f = armed(TriggerKind::NumericOverflow, method, path);
    if (f && f->field == param && above_int32(value)) {
      fault(*f, res);
      return true;
    }
    return false;
  }

  const User* viewer(const httplib::Request& req) const {
    auto h = req.get_header_value("Authorization");
    constexpr std::string_view kPrefix = "Token tok-";
    if (h.rfind(kPrefix, 0) != 0) return nullptr;
    auto id = parse_id(h.substr(kPrefix.size()));
    if (!id || *id > 1000000000) return nullptr;
    auto it = users.find(static_cast<int>(*id));
    return it == users.end() ? nullptr : &it->second;
  }

  User* viewer_mut(const httplib::Request& req) { return const_cast<User*>(viewer(req)); }

  const User* by_username(const std::string& name) const {
    for (const auto& [_, u] : users) {
      if (u.username == name) return &u;
    }
    return nullptr;
  }

  json user_json(const User& u) const {
    return {{"email", u.email}, {"token", "tok-" + std::to_string(u.id)}, {"username", u.username},
            {"bio", u.bio}, {"image", u.image}};
  }

  json profile_json(const User& u, const User* v) const {
    return {{"username", u.username}, {"bio", u.bio}, {"image", u.image},
            {"following", v != nullptr && v->following.count(u.id) > 0}};
  }

  json author_json(int id, const User* v) const {
    auto it = users.find(id);
    if (it != users.end()) return profile_json(it->second, v);
    return {{"username", ""}, {"bio", ""}, {"image", ""}, {"following", false}};
  }

  json article_json(const Article& a, const User* v) const {
    return {{"slug", a.slug},
            {"title", a.title},
            {"description", a.description},
            {"body", a.body},
            {"tagList", a.tags},
            {"createdAt", kTimestamp},
            {"updatedAt", kTimestamp},
            {"favorited", v != nullptr && a.favorited_by.count(v->id) > 0},
            {"favoritesCount", a.favorited_by.size()},
            {"author", author_json(a.author, v)}};
  }

  json comment_json(const Comment& c, const User* v) const {
    return {{"id", c.id}, {"createdAt", kTimestamp}, {"updatedAt", kTimestamp}, {"body", c.body},
            {"author", author_json(c.author, v)}};
  }

  Article* article(const std::string& slug) {
    auto it = articles.find(slug);
    return it == articles.end() ? nullptr : &it->second;
  }

  void routes();
};

namespace {

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
  auto body = json::parse(req.body, nullptr, false);
  if (body.is_discarded()) {
    send_error(res, 422, "request body is not valid JSON");
    return std::nullopt;
  }
  return body;
}

}  // namespace

void Fixture::Impl::routes() {
  auto guard = [this](Handler h) -> Handler {
    return [this, h](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard<std::mutex> lock(mu);
      ++served;
      try {
        h(req, res);
      } catch (const std::exception&) {
        send_error(res, 400, "bad request");
      }
    };
  };
  auto need_user = [this](const httplib::Request& req, httplib::Response& res) -> User* {
    User* u = viewer_mut(req);
    if (!u) send_error(res, 401, "missing or invalid token");
    return u;
  };

  // Requests no route accepts (an empty path segment, an unknown method or
  // resource) are malformed input.
  server.set_error_handler([this](const httplib::Request&, httplib::Response& res) {
    if (res.status != 404 || !res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    std::lock_guard<std::mutex> lock(mu);
    ++served;
    send_error(res, 400, "no such route");
    return httplib::Server::HandlerResponse::Handled;
  });

  server.Get("/openapi.yaml", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(std::string(embedded_spec()), "application/yaml");
  });

  server.Post("/users/login", guard([this](const httplib::Request& req, httplib::Response& res) {
    auto body = parse_body(req, res);
    if (!body) return;
    const json* email = field_at(*body, "user.email");
    const json* password = field_at(*body, "user.password");
    if (!nonempty_string(email) || !nonempty_string(password)) return send_error(res, 422, "email and password required");
    for (const auto& [_, u] : users) {
      if (u.email == email->get<std::string>() && u.password == password->get<std::string>()) {
        return send_json(res, 200, {{"user", user_json(u)}});
      }
    }
    send_error(res, 422, "email or password is invalid");
  }));

  server.Post("/users", guard([this](const httplib::Request& req, httplib::Response& res) {
    auto body = parse_body(req, res);
    if (!body) return;
    const json* username = field_at(*body, "user.username");
    const json* email = field_at(*body, "user.email");
    const json* password = field_at(*body, "user.password");
    if (!nonempty_string(username) || !nonempty_string(email) || !nonempty_string(password)) {
      return send_error(res, 422, "username, email and password required");
    }
    if (by_username(username->get<std::string>())) return send_error(res, 422, "username has already been taken");
    const auto& mail = email->get_ref<const std::string&>();
    if (!well_formed_email(mail)) {
      if (const FaultSpec* f = armed(TriggerKind::BadFormatValue, "POST", "/users")) return fault(*f, res);
      return send_error(res, 422, "email is invalid");
    }
    for (const auto& [_, u] : users) {
      if (u.email == mail) return send_error(res, 422, "email has already been taken");
    }
    User u;
    u.id = next_user++;
    u.username = username->get<std::string>();
    u.email = mail;
    u.password = password->get<std::string>();
    users.emplace(u.id, u);
    send_json(res, 201, {{"user", user_json(u)}});
  }));

  server.Get("/user", guard([this, need_user](const httplib::Request& req, httplib::Response& res) {
    User* me = need_user(req, res);
    if (!me) return;
    send_json(res, 200, {{"user", user_json(*me)}});
  }));

  server.Put("/user", guard([this, need_user](const httplib::Request& req, httplib::Response& res) {
    User* me = need_user(req, res);
    if (!me) return;
    auto body = parse_body(req, res);
    if (!body) return;
    const json* user = field_at(*body, "user");
    if (!user || !user->is_object()) return send_error(res, 422, "user object required");
    for (const char* key : {"email", "username", "password", "bio", "image"}) {
      if (user->contains(key) && !user->at(key).is_string()) return send_error(res, 422, std::string(key) + " must be a string");
    }
    User next = *me;
    if (user->contains("username")) {
      next.username = user->at("username").get<std::string>();
      const User* other = by_username(next.username);
      if (next.username.empty() || (other && other->id != me->id)) return send_error(res, 422, "username is invalid");
    }
    if (user->contains("email")) {
      next.email = user->at("email").get<std::string>();
      if (!well_formed_email(next.email)) return send_error(res, 422, "email is invalid");
      for (const auto& [id, u] : users) {
        if (id != me->id && u.email == next.email) return send_error(res, 422, "email has already been taken");
      }
    }
    if (user->contains("password")) {
      next.password = user->at("password").get<std::string>();
      if (next.password.empty()) return send_error(res, 422, "password can't be blank");
    }
    if (user->contains("bio")) next.bio = user->at("bio").get<std::string>();
    if (user->contains("image")) next.image = user->at("image").get<std::string>();
    *me = next;
    send_json(res, 200, {{"user", user_json(*me)}});
  }));

  server.Get(R"(/profiles/([^/]+))", guard([this](const httplib::Request& req, httplib::Response& res) {
    const User* u = by_username(req.matches[1]);
    if (!u) return send_error(res, 404, "profile not found");
    send_json(res, 200, {{"profile", profile_json(*u, viewer(req))}});
  }));

  auto follow = [this, need_user](bool on) {
    return [this, need_user, on](const httplib::Request& req, httplib::Response& res) {
      User* me = need_user(req, res);
      if (!me) return;
      const User* u = by_username(req.matches[1]);
      if (!u) return send_error(res, 404, "profile not found");
      if (on) {
        me->following.insert(u->id);
      } else {
        me->following.erase(u->id);
      }
      send_json(res, 200, {{"profile", profile_json(*u, me)}});
    };
  };
  server.Post(R"(/profiles/([^/]+)/follow)", guard(follow(true)));
  server.Delete(R"(/profiles/([^/]+)/follow)", guard(follow(false)));

  server.Get("/articles", guard([this](const httplib::Request& req, httplib::Response& res) {
    std::size_t limit = 20;
    std::size_t offset = 0;
    for (auto [name, target] : {std::pair<const char*, std::size_t*>{"limit", &limit}, {"offset", &offset}}) {
      if (!req.has_param(name)) continue;
      auto v = parse_id(req.get_param_value(name));
      if (!v || *v > 1000000) return send_error(res, 422, std::string(name) + " must be a non-negative integer");
      *target = static_cast<std::size_t>(*v);
    }
    const User* me = viewer(req);
    std::vector<const Article*> hits_list;
    for (const auto& [_, a] : articles) {
      if (req.has_param("tag")) {
        auto tag = req.get_param_value("tag");
        if (std::find(a.tags.begin(), a.tags.end(), tag) == a.tags.end()) continue;
      }
      if (req.has_param("author")) {
        auto it = users.find(a.author);
        if (it == users.end() || it->second.username != req.get_param_value("author")) continue;
      }
      if (req.has_param("favorited")) {
        const User* fan = by_username(req.get_param_value("favorited"));
        if (!fan || !a.favorited_by.count(fan->id)) continue;
      }
      hits_list.push_back(&a);
    }
    std::sort(hits_list.begin(), hits_list.end(), [](const Article* x, const Article* y) { return x->id > y->id; });
    json list = json::array();
    for (std::size_t i = offset; i < hits_list.size() && list.size() < limit; ++i) list.push_back(article_json(*hits_list[i], me));
    send_json(res, 200, {{"articles", list}, {"articlesCount", hits_list.size()}});
  }));

  server.Post("/articles", guard([this, need_user](const httplib::Request& req, httplib::Response& res) {
    User* me = need_user(req, res);
    if (!me) return;
    auto body = parse_body(req, res);
    if (!body) return;
    if (body_faults("POST", "/articles", *body, res)) return;
    const json* title = field_at(*body, "article.title");
    const json* description = field_at(*body, "article.description");
    const json* text = field_at(*body, "article.body");
    const json* tags = field_at(*body, "article.tagList");
    if (!nonempty_string(title) || !nonempty_string(description) || !nonempty_string(text)) {
      return send_error(res, 422, "title, description and body required");
    }
    Article a;
    if (tags) {
      if (!tags->is_array()) return send_error(res, 422, "tagList must be an array");
      for (const auto& t : *tags) {
        if (!t.is_string()) return send_error(res, 422, "tags must be strings");
        a.tags.push_back(t.get<std::string>());
      }
    }
    a.slug = slugify(title->get<std::string>());
    if (a.slug.empty()) return send_error(res, 422, "title is invalid");
    if (articles.count(a.slug)) return send_error(res, 422, "slug has already been taken");
    a.id = next_article++;
    a.title = title->get<std::string>();
    a.description = description->get<std::string>();
    a.body = text->get<std::string>();
    a.author = me->id;
    auto& stored = articles.emplace(a.slug, std::move(a)).first->second;
    send_json(res, 201, {{"article", article_json(stored, me)}});
  }));

  server.Get(R"(/articles/([^/]+))", guard([this](const httplib::Request& req, httplib::Response& res) {
    Article* a = article(req.matches[1]);
    if (!a) {
      if (const FaultSpec* f = armed(TriggerKind::UnknownId, "GET", "/articles/{slug}")) return fault(*f, res);
      return send_error(res, 404, "article not found");
    }
    send_json(res, 200, {{"article", article_json(*a, viewer(req))}});
  }));

  server.Put(R"(/articles/([^/]+))", guard([this, need_user](const httplib::Request& req, httplib::Response& res) {
    User* me = need_user(req, res);
    if (!me) return;
    auto body = parse_body(req, res);
    if (!body) return;
    if (body_faults("PUT", "/articles/{slug}", *body, res)) return;
    Article* a = article(req.matches[1]);
    if (!a) return send_error(res, 404, "article not found");
    const json* art = field_at(*body, "article");
    if (!art || !art->is_object()) return send_error(res, 422, "article object required");
    for (const char* key : {"title", "description", "body"}) {
      if (!art->contains(key)) continue;
      if (!nonempty_string(&art->at(key))) return send_error(res, 422, std::string(key) + " must be a non-empty string");
    }
    if (art->contains("title")) a->title = art->at("title").get<std::string>();
    if (art->contains("description")) a->description = art->at("description").get<std::string>();
    if (art->contains("body")) a->body = art->at("body").get<std::string>();
    send_json(res, 200, {{"article", article_json(*a, me)}});
  }));

  server.Delete(R"(/articles/([^/]+))", guard([this, need_user](const httplib::Request& req, httplib::Response& res) {
    if (!need_user(req, res)) return;
    if (!articles.erase(req.matches[1])) return send_error(res, 404, "article not found");
    res.status = 204;
  }));

  server.Get(R"(/articles/([^/]+)/comments)", guard([this](const httplib::Request& req, httplib::Response& res) {
    Article* a = article(req.matches[1]);
    if (!a) return send_error(res, 404, "article not found");
    const User* me = viewer(req);
    json list = json::array();
    for (const auto& c : a->comments) list.push_back(comment_json(c, me));
    send_json(res, 200, {{"comments", list}});
  }));

  server.Post(R"(/articles/([^/]+)/comments)", guard([this, need_user](const httplib::Request& req, httplib::Response& res) {
    User* me = need_user(req, res);
    if (!me) return;
    auto body = parse_body(req, res);
    if (!body) return;
    if (body_faults("POST", "/articles/{slug}/comments", *body, res)) return;
    Article* a = article(req.matches[1]);
    if (!a) return send_error(res, 404, "article not found");
    const json* text = field_at(*body, "comment.body");
    if (!nonempty_string(text)) return send_error(res, 422, "body can't be blank");
    Comment c;
    c.id = next_comment++;
    c.body = text->get<std::string>();
    c.author = me->id;
    a->comments.push_back(c);
    send_json(res, 201, {{"comment", comment_json(c, me)}});
  }));

  server.Get(R"(/articles/([^/]+)/comments/([^/]+))", guard([this](const httplib::Request& req, httplib::Response& res) {
    Article* a = article(req.matches[1]);
    if (!a) return send_error(res, 404, "article not found");
    auto id = parse_id(req.matches[2]);
    for (const auto& c : a->comments) {
      if (id && c.id == *id) return send_json(res, 200, {{"comment", comment_json(c, viewer(req))}});
    }
    send_error(res, 404, "comment not found");
  }));

  server.Delete(R"(/articles/([^/]+)/comments/([^/]+))", guard([this, need_user](const httplib::Request& req, httplib::Response& res) {
    if (!need_user(req, res)) return;
    if (overflow_fault("DELETE", "/articles/{slug}/comments/{id}", "id", req.matches[2], res)) return;
    Article* a = article(req.matches[1]);
    if (!a) return send_error(res, 404, "article not found");
    auto id = parse_id(req.matches[2]);
    auto it = std::find_if(a->comments.begin(), a->comments.end(), [&](const Comment& c) { return id && c.id == *id; });
    if (it == a->comments.end()) return send_error(res, 404, "comment not found");
    a->comments.erase(it);
    res.status = 204;
  }));

  auto favorite = [this, need_user](bool on) {
    return [this, need_user, on](const httplib::Request& req, httplib::Response& res) {
      User* me = need_user(req, res);
      if (!me) return;
      Article* a = article(req.matches[1]);
      if (!a) return send_error(res, 404, "article not found");
      if (on) {
        a->favorited_by.insert(me->id);
      } else {
        a->favorited_by.erase(me->id);
      }
      send_json(res, 200, {{"article", article_json(*a, me)}});
    };
  };
  server.Post(R"(/articles/([^/]+)/favorite)", guard(favorite(true)));
  server.Delete(R"(/articles/([^/]+)/favorite)", guard(favorite(false)));

  server.Get("/tags", guard([this](const httplib::Request&, httplib::Response& res) {
    std::set<std::string> tags;
    for (const auto& [_, a] : articles) tags.insert(a.tags.begin(), a.tags.end());
    send_json(res, 200, {{"tags", tags}});
  }));
}

Fixture::Fixture(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}

std::unique_ptr<Fixture> Fixture::start(std::vector<FaultSpec> faults, int port) {
  auto impl = std::make_unique<Impl>();
  impl->faults = std::move(faults);
  impl->reset_locked();
  impl->server.set_tcp_nodelay(true);
  impl->server.set_keep_alive_max_count(100000);
  // httplib's default also sets SO_REUSEPORT, which would let a second
  // fixture share a port that is already taken.
  impl->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  impl->routes();
  if (port == 0) {
    impl->port = impl->server.bind_to_any_port("127.0.0.1");
    if (impl->port <= 0) throw PortUnavailable("no ephemeral port available");
  } else {
    if (!impl->server.bind_to_port("127.0.0.1", port)) throw PortUnavailable("port " + std::to_string(port) + " is in use");
    impl->port = port;
  }
  auto* server = &impl->server;
  impl->thread = std::thread([server] { server->listen_after_bind(); });
  impl->server.wait_until_ready();
  impl->running = true;
  return std::unique_ptr<Fixture>(new Fixture(std::move(impl)));
}

Fixture::~Fixture() { shutdown(); }

std::string Fixture::base_url() const { return "http://127.0.0.1:" + std::to_string(impl_->port); }

int Fixture::port() const { return impl_->port; }

void Fixture::shutdown() {
  if (!impl_ || !impl_->running) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  impl_->running = false;
}

void Fixture::reset() {
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->reset_locked();
}

std::set<std::string> Fixture::fault_ledger() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  std::set<std::string> out;
  for (const auto& [id, n] : impl_->hits) {
    if (n > 0) out.insert(id);
  }
  return out;
}

std::map<std::string, std::size_t> Fixture::fault_hits() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->hits;
}

std::size_t Fixture::requests_served() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->served;
}

}  // namespace tclfuzz::fixture
