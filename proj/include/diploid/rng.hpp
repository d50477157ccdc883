#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace diploid {

/// SplitMix64 finalizer; also the published replicate-seed mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replicate `index` under `master`. Adding replicates never changes
/// the seeds of existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index ^ 0x6a09e667f3bcc909ULL));
}

/// Counter-based generator: output n is mix64(key + n * gamma). The whole
/// stream state is (key, counter), so a stream position can be recorded and
/// restored exactly. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = 0) noexcept : key_(mix64(seed)), counter_(0) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * 0xd1b54a32d192ed03ULL);
  }

  /// Uniform on (0, 1); never returns 0, so log() is always finite.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Exponential with the given rate (> 0).
  double exponential(double rate) noexcept { return -std::log(uniform_open()) / rate; }

  /// Uniform integer in [0, n) by rejection (unbiased).
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }
  void seek(std::uint64_t position) noexcept { counter_ = position; }

  friend bool operator==(const CounterRng&, const CounterRng&) = default;

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace diploid
