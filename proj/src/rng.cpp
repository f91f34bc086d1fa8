#include "tclfuzz/rng.hpp"

namespace tclfuzz {

std::uint64_t Rng::next_u64() {
  ++draws_;
  return engine_();
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) {
    if (n == 1) next_u64();
    return 0;
  }
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(span == 0 ? next_u64() : below(span));
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace tclfuzz
