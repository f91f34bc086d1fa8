#pragma once

#include <stdexcept>
#include <string>

namespace tclfuzz {

// Base for every error the library raises. Callers that only care about
// "something in the inputs is wrong" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TCLFUZZ_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

// spec ingest
TCLFUZZ_DEFINE_ERROR(MalformedDocument);
TCLFUZZ_DEFINE_ERROR(UnsupportedVersion);
TCLFUZZ_DEFINE_ERROR(DanglingRef);
TCLFUZZ_DEFINE_ERROR(CyclicRef);

// dependency config / planning
TCLFUZZ_DEFINE_ERROR(MalformedConfig);
TCLFUZZ_DEFINE_ERROR(UnknownPath);
TCLFUZZ_DEFINE_ERROR(UnknownParameter);
TCLFUZZ_DEFINE_ERROR(UnsatisfiableDependency);

// corpus
TCLFUZZ_DEFINE_ERROR(CorruptSeed);
TCLFUZZ_DEFINE_ERROR(EmptyCorpus);

// mutation
TCLFUZZ_DEFINE_ERROR(NoMutableParams);

// driver
TCLFUZZ_DEFINE_ERROR(TokenUnavailable);

// campaign
TCLFUZZ_DEFINE_ERROR(ConfigError);
TCLFUZZ_DEFINE_ERROR(IoError);

#undef TCLFUZZ_DEFINE_ERROR

}  // namespace tclfuzz
