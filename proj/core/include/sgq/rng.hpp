#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace sgq {

// Counter-based pseudo-random generator built on the SplitMix64 finalizer.
//
// A stream is identified by a 64-bit key; draw i of a stream is
// finalize(key + i * GOLDEN). Streams derived via split() are statistically
// independent of the parent and of each other, so training, tuning and
// Monte Carlo inference can each own a stream without coordination.
// The generator is fixed for the life of the project: identical seeds and
// split labels reproduce identical draws on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : key_(finalize(seed ^ 0x6a09e667f3bcc909ULL)) {}

  // Derives an independent stream keyed by a string label.
  Rng split(std::string_view label) const {
    return Rng::from_key(finalize(key_ ^ fnv1a(label)));
  }

  // Derives an independent stream keyed by an index.
  Rng split(uint64_t index) const {
    return Rng::from_key(finalize(key_ ^ finalize(index + 0x517cc1b727220a95ULL)));
  }

  uint64_t next_u64() {
    ++counter_;
    return finalize(key_ + counter_ * kGolden);
  }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes exactly two draws.
  double normal() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0,1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Uniform integer in [0, bound); bound must be nonzero.
  uint64_t uniform_int(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  template <class T>
  void shuffle(std::vector<T>& values) {
    for (size_t i = values.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr double kPi = 3.14159265358979323846;

  static Rng from_key(uint64_t key) {
    Rng r(0);
    r.key_ = key;
    r.counter_ = 0;
    return r;
  }

  static uint64_t finalize(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  static uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
      h ^= static_cast<uint8_t>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace sgq
