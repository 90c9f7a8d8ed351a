#pragma once

#include <cstdint>

namespace lptx {

/// Small deterministic generator (splitmix64 core). Sequences depend only on
/// the seed values passed in, never on library or platform state, so any
/// experiment replays bit-identically.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull) {}

  /// Derives an independent stream for a tagged subtask.
  Rng fork(std::uint64_t tag) const { return Rng(state_ ^ (tag * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull)); }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform integer in [0, m).
  std::uint64_t below(std::uint64_t m) { return next_u64() % m; }

  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lptx
