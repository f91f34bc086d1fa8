#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tclfuzz/api_model.hpp"
#include "tclfuzz/grammar.hpp"
#include "tclfuzz/keypath.hpp"
#include "tclfuzz/response_store.hpp"

namespace tclfuzz {

struct Header {
  std::string name;
  std::string value;

  friend bool operator==(const Header&, const Header&) = default;
};

struct AuthConfig {
  enum class Mode { None, StaticKey, TokenEndpoint };

  struct TokenRequest {
    HttpMethod method = HttpMethod::Post;
    std::string url;  // absolute, or relative to the campaign base URL
    nlohmann::json body = nlohmann::json::object();
    KeyPath token_keypath;
    std::string prefix;
  };

  Mode mode = Mode::None;
  std::string header_name = "Authorization";
  std::optional<std::string> static_value;
  std::optional<TokenRequest> token_request;

  // Throws MalformedConfig.
  static AuthConfig parse(std::string_view yaml);
};

struct ConcreteRequest {
  HttpMethod method = HttpMethod::Get;
  std::string base_url;  // scheme://host[:port][/prefix]
  std::string target;    // path?query, already percent-encoded
  std::vector<Header> headers;
  std::string body;
  std::string content_type;  // empty when there is no body
  std::vector<std::string> params_sent;
  OperationRef node_ref;

  std::string url() const;
  // Request line, headers and body as sent, minus Host.
  std::string snapshot() const;
  static ConcreteRequest from_snapshot(std::string_view snapshot, std::string base_url);
};

inline constexpr int kTransportError = 0;

struct RawResponse {
  int status = kTransportError;
  std::string content_type;  // media type without parameters
  std::string body;
  double latency_ms = 0.0;
  std::string error;  // transport failure description

  std::string snapshot() const;
};

struct HttpExchange {
  ConcreteRequest request;
  RawResponse response;
  OperationRef node_ref;
  std::uint64_t round = 0;
  std::size_t node_index = 0;

  bool transport_error() const { return response.status == kTransportError; }
  int status_class() const { return response.status / 100; }
};

class Transport {
 public:
  virtual ~Transport() = default;
  // Never throws for network failures; they come back as kTransportError.
  virtual RawResponse send(const ConcreteRequest& request, std::chrono::milliseconds timeout) = 0;
};

// HTTP/1.1 over TCP (TLS for https), one keep-alive connection per origin.
class HttpTransport : public Transport {
 public:
  HttpTransport();
  ~HttpTransport() override;
  HttpTransport(const HttpTransport&) = delete;
  HttpTransport& operator=(const HttpTransport&) = delete;

  RawResponse send(const ConcreteRequest& request, std::chrono::milliseconds timeout) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Static header, or the token endpoint's answer. Throws TokenUnavailable.
Header acquire_token(const AuthConfig& auth, Transport& transport, std::string_view base_url,
                     std::chrono::milliseconds timeout = std::chrono::seconds(10));

// Caches the token for the campaign and refreshes it on demand.
class AuthSession {
 public:
  AuthSession(AuthConfig auth, std::string base_url);

  std::optional<Header> header(Transport& transport);
  // Re-acquires a token-endpoint token; false when not applicable or failed.
  bool refresh(Transport& transport);
  const AuthConfig& config() const { return auth_; }

 private:
  AuthConfig auth_;
  std::string base_url_;
  std::optional<Header> cached_;
};

// Renders a node to a wire request. Control bytes are stripped from path,
// query and header values; body bytes are kept. `repeat_index` picks among the
// documented request content types.
ConcreteRequest render_request(const RequestNode& node, const ApiModel& model,
                               std::string_view base_url, const std::optional<Header>& auth,
                               std::size_t repeat_index = 0);

// Body text for a node's BodyField slots (JSON or form encoding).
std::string render_body(const RequestNode& node, std::string_view content_type);

// Sends, and on a 2xx with a parseable JSON body records it in `store`.
HttpExchange send_and_record(const ConcreteRequest& request, ResponseStore& store,
                             Transport& transport,
                             std::chrono::milliseconds timeout = std::chrono::seconds(10));

}  // namespace tclfuzz
