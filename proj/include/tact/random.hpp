#pragma once

#include <cstdint>

namespace tact {

// Counter-based generator: the value at (seed, stream, counter) is a pure
// function of the triple, so parallel consumers never share state.
class CounterRng {
public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : seed_(seed), stream_(stream) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  // Uniform in [0, 1).
  double uniform(std::uint64_t counter) const noexcept;
  double uniform(std::uint64_t counter, double lo, double hi) const noexcept {
    return lo + (hi - lo) * uniform(counter);
  }
  // Uniform integer in [lo, hi].
  long integer(std::uint64_t counter, long lo, long hi) const noexcept;

  CounterRng substream(std::uint64_t s) const noexcept;

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

} // namespace tact
