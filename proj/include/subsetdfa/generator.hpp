#pragma once

#include <cstdint>
#include <random>

#include "subsetdfa/dictionary.hpp"

namespace subsetdfa {

/// Parameters (m, n, sigma, (delta_low, delta_high), f) of a random instance.
struct InstanceParams {
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::uint32_t sigma = 2;
  std::uint32_t delta_low = 1;
  std::uint32_t delta_high = 1;
  double f = 0.0;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when the parameters are inconsistent.
void validate(const InstanceParams& p);

/// Seeded generator. The engine is std::mt19937_64, whose output sequence is
/// fixed by the standard; bounded integers use rejection sampling and reals
/// the top 53 bits, so a seed reproduces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// n strings of length m. Each position independently holds, with
/// probability f, a uniform random subset whose size is uniform in
/// [delta_low, delta_high]; otherwise a single uniform symbol.
Dictionary generate_instance(const InstanceParams& p);

/// {c-delta, ..., c+delta} intersected with {0, ..., sigma-1}.
SymbolSet delta_subset(std::uint32_t c, std::uint32_t delta, std::uint32_t sigma);

/// delta-matching: each position is {c-delta, ..., c+delta} clamped to the
/// alphabet, for a uniform centre c.
Dictionary generate_delta_instance(std::uint32_t m, std::uint32_t n, std::uint32_t sigma, std::uint32_t delta,
                                   std::uint64_t seed);

/// Wild-card matching: each string has exactly k uniformly chosen positions
/// holding the full alphabet, single uniform symbols elsewhere.
Dictionary generate_wildcard_instance(std::uint32_t m, std::uint32_t n, std::uint32_t sigma, std::uint32_t k,
                                      std::uint64_t seed);

}  // namespace subsetdfa
