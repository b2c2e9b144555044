#pragma once

#include <cmath>
#include <cstdint>

namespace uncoordsim {

/// Stateless splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Maps 64 random bits to a double in the open interval (0, 1).
constexpr double to_unit_open(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Purpose tags keep the substreams of one entity apart.
enum class StreamTag : std::uint64_t { arrivals = 1, ops = 2, policy = 3 };

/// Counter-based random stream keyed by (master seed, tag, entity id).
///
/// Every draw is a pure function of the key and a counter, so a stream never
/// depends on what other streams consumed. `uniform_at` gives random access
/// for draws that must line up across policy variants (common random numbers).
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t seed, StreamTag tag, std::uint64_t entity) noexcept
      : key_(mix64(mix64(seed ^ mix64(static_cast<std::uint64_t>(tag))) ^
                   mix64(entity + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next_bits() noexcept { return bits_at(counter_++); }
  double uniform() noexcept { return to_unit_open(next_bits()); }

  std::uint64_t bits_at(std::uint64_t counter) const noexcept {
    return mix64(key_ ^ mix64(counter));
  }
  double uniform_at(std::uint64_t counter) const noexcept {
    return to_unit_open(bits_at(counter));
  }
  /// Two-dimensional random access, e.g. (request ordinal, executor id).
  double uniform_at(std::uint64_t major, std::uint64_t minor) const noexcept {
    return to_unit_open(mix64(bits_at(major) ^ mix64(minor ^ 0xd1b54a32d192ed03ULL)));
  }

  /// Exponential variate with the given mean, by inverse transform.
  double exponential(double mean) noexcept { return -mean * std::log(uniform()); }

  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace uncoordsim
