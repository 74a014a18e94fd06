#pragma once

#include <cstdint>
#include <limits>

#include "scl/exact.hpp"

namespace scl {

/// Seed plus stream index; each (seed, stream) pair names an independent,
/// reproducible random sequence.
struct Seed {
  std::uint64_t value = 0;
  std::uint64_t stream = 0;
};

/// Counter-based generator: the k-th output is a SplitMix64 finalizer applied
/// to a key derived from (seed, stream) plus k times the golden-ratio
/// increment. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(Seed seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

  /// Uniform in [0, bound); bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Uniform in [0, bound) for an arbitrary-precision bound > 0.
  ExactInt below(const ExactInt& bound);
  /// Uniform double in [0, 1).
  double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace scl
