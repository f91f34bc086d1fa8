#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tclfuzz::fixture {

class PortUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TriggerKind {
  WrongTypeField,        // field present with a non-string value
  MissingRequiredField,  // field absent
  OversizedString,       // string field longer than threshold bytes
  BadFormatValue,        // string field that is not a well-formed email
  UnknownId,             // path parameter naming no stored resource
  NumericOverflow,       // integer literal above INT32_MAX
};

std::string_view to_string(TriggerKind k);

struct FaultSpec {
  std::string id;
  TriggerKind trigger = TriggerKind::WrongTypeField;
  std::string method;  // "POST"
  std::string path;    // path template the fault lives on
  std::string field;   // dotted body field or path parameter name
  std::size_t threshold = 0;
};

// One fault per trigger kind, spread over six operations.
std::vector<FaultSpec> default_faults();

// The fixture's OpenAPI document, dependency file and auth file.
std::string_view embedded_spec();
std::string_view embedded_deps();
std::string_view embedded_auth();

// In-process RealWorld-style service on 127.0.0.1. Requests are served on a
// background thread; state is guarded by one mutex.
class Fixture {
 public:
  // port 0 picks an ephemeral port. Throws PortUnavailable.
  static std::unique_ptr<Fixture> start(std::vector<FaultSpec> faults, int port = 0);
  ~Fixture();

  Fixture(const Fixture&) = delete;
  Fixture& operator=(const Fixture&) = delete;

  std::string base_url() const;
  int port() const;
  void shutdown();

  // Back to the initial state: only the seeded user, counters rewound.
  // The fault ledger is kept.
  void reset();

  // Ids of faults hit at least once.
  std::set<std::string> fault_ledger() const;
  // Hit count per fault id.
  std::map<std::string, std::size_t> fault_hits() const;
  std::size_t requests_served() const;

 private:
  struct Impl;
  explicit Fixture(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace tclfuzz::fixture
