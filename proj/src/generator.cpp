#include "subsetdfa/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace subsetdfa {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below(0)");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return x % bound;
}

namespace {

void check_sigma(std::uint32_t sigma) {
  if (sigma < 1 || sigma > kMaxSigma)
    throw std::invalid_argument("sigma must be between 1 and " + std::to_string(kMaxSigma));
}

// Partial Fisher-Yates over `pool`: the first k entries become a uniform
// k-subset.
void shuffle_prefix(Rng& rng, std::vector<std::uint32_t>& pool, std::uint32_t k) {
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
}

}  // namespace

void validate(const InstanceParams& p) {
  check_sigma(p.sigma);
  if (p.delta_low < 1 || p.delta_low > p.delta_high || p.delta_high > p.sigma)
    throw std::invalid_argument("need 1 <= delta_low <= delta_high <= sigma");
  if (!(p.f >= 0.0 && p.f <= 1.0)) throw std::invalid_argument("f must lie in [0, 1]");
}

Dictionary generate_instance(const InstanceParams& p) {
  validate(p);
  Rng rng(p.seed);
  Dictionary d(p.sigma);
  std::vector<std::uint32_t> pool(p.sigma);
  SubsetString s(p.m);
  for (std::uint32_t i = 0; i < p.n; ++i) {
    for (auto& position : s) {
      if (rng.unit() < p.f) {
        const auto size = p.delta_low + static_cast<std::uint32_t>(rng.below(p.delta_high - p.delta_low + 1));
        std::iota(pool.begin(), pool.end(), 0u);
        shuffle_prefix(rng, pool, size);
        position = SymbolSet();
        for (std::uint32_t k = 0; k < size; ++k) position.insert(pool[k]);
      } else {
        position = SymbolSet::single(static_cast<Symbol>(rng.below(p.sigma)));
      }
    }
    d.add(s);
  }
  return d;
}

SymbolSet delta_subset(std::uint32_t c, std::uint32_t delta, std::uint32_t sigma) {
  const std::uint32_t lo = c >= delta ? c - delta : 0;
  const std::uint32_t hi = std::min(sigma - 1, c + delta);
  return SymbolSet::range(lo, hi);
}

Dictionary generate_delta_instance(std::uint32_t m, std::uint32_t n, std::uint32_t sigma, std::uint32_t delta,
                                   std::uint64_t seed) {
  check_sigma(sigma);
  if (delta >= sigma) throw std::invalid_argument("delta must be smaller than sigma");
  Rng rng(seed);
  Dictionary d(sigma);
  SubsetString s(m);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (auto& position : s) {
      position = delta_subset(static_cast<std::uint32_t>(rng.below(sigma)), delta, sigma);
    }
    d.add(s);
  }
  return d;
}

Dictionary generate_wildcard_instance(std::uint32_t m, std::uint32_t n, std::uint32_t sigma, std::uint32_t k,
                                      std::uint64_t seed) {
  check_sigma(sigma);
  if (k > m) throw std::invalid_argument("k must not exceed m");
  Rng rng(seed);
  Dictionary d(sigma);
  SubsetString s(m);
  std::vector<std::uint32_t> positions(m);
  std::vector<char> wild(m);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::iota(positions.begin(), positions.end(), 0u);
    shuffle_prefix(rng, positions, k);
    std::fill(wild.begin(), wild.end(), 0);
    for (std::uint32_t j = 0; j < k; ++j) wild[positions[j]] = 1;
    for (std::uint32_t j = 0; j < m; ++j)
      s[j] = wild[j] ? SymbolSet::full(sigma) : SymbolSet::single(static_cast<Symbol>(rng.below(sigma)));
    d.add(s);
  }
  return d;
}

}  // namespace subsetdfa
