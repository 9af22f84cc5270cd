#include "tact/random.hpp"

namespace tact {
namespace {

constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  return mix(mix(mix(seed_) ^ stream_) ^ counter);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

long CounterRng::integer(std::uint64_t counter, long lo, long hi) const noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(bits(counter) % span);
}

CounterRng CounterRng::substream(std::uint64_t s) const noexcept {
  return CounterRng(seed_, mix(stream_ + 0x632be59bd9b4e019ULL * (s + 1)));
}

} // namespace tact
