#pragma once

#include <cstdint>
#include <random>

namespace tclfuzz {

// Seeded draw source. mt19937_64 has a fixed, standard-mandated output
// sequence, and range reduction is done here rather than with <random>
// distributions (whose output is implementation-defined), so a seed
// reproduces a campaign on any toolchain.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}
  virtual ~Rng() = default;

  virtual std::uint64_t next_u64();

  // Uniform in [0, n); n == 0 returns 0.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  // Uniform in [0, 1).
  double uniform01();
  bool chance(double p) { return uniform01() < p; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

 protected:
  std::uint64_t draws_ = 0;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tclfuzz
