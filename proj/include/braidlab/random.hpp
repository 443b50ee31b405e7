#pragma once

#include <cstdint>
#include <random>

#include "braidlab/braid.hpp"

namespace braidlab {

/// Seeded generator with a platform-independent bounded draw (the standard
/// distributions are implementation-defined, which would break report
/// reproducibility across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x < limit) return x % bound;
    }
  }

  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

 private:
  std::mt19937_64 engine_;
};

/// Word of the given length with i.i.d. letters uniform over +-{1..n-1}
/// (or over {1..n-1} when positive_only).
inline BraidWord random_word(Rng& rng, int n, std::size_t length, bool positive_only = false) {
  std::vector<int> letters;
  letters.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const int gen = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    const bool neg = !positive_only && rng.below(2) == 1;
    letters.push_back(neg ? -gen : gen);
  }
  return BraidWord(n, std::move(letters));
}

}  // namespace braidlab
