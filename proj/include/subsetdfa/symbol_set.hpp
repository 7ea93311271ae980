#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>

namespace subsetdfa {

using Symbol = std::uint32_t;
using StringId = std::uint32_t;
using StateId = std::uint32_t;

/// Largest supported alphabet: a symbol set is one 64-bit word.
inline constexpr unsigned kMaxSigma = 64;

/// A subset of the alphabet {0, ..., sigma-1}, stored as a bit mask.
class SymbolSet {
 public:
  constexpr SymbolSet() = default;
  constexpr explicit SymbolSet(std::uint64_t mask) : mask_(mask) {}

  static constexpr SymbolSet single(Symbol c) { return SymbolSet(std::uint64_t{1} << c); }
  /// Inclusive range [lo, hi].
  static constexpr SymbolSet range(Symbol lo, Symbol hi) {
    return SymbolSet(low_bits(hi + 1) & ~low_bits(lo));
  }
  static constexpr SymbolSet full(unsigned sigma) { return SymbolSet(low_bits(sigma)); }
  static constexpr SymbolSet of(std::initializer_list<Symbol> symbols) {
    SymbolSet s;
    for (Symbol c : symbols) s.insert(c);
    return s;
  }

  constexpr bool contains(Symbol c) const { return c < kMaxSigma && ((mask_ >> c) & 1u) != 0; }
  constexpr void insert(Symbol c) { mask_ |= std::uint64_t{1} << c; }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(mask_)); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint64_t mask() const { return mask_; }

  /// True when no symbol >= sigma is present.
  constexpr bool fits(unsigned sigma) const { return (mask_ & ~low_bits(sigma)) == 0; }

  /// Visits members in ascending order.
  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) f(static_cast<Symbol>(std::countr_zero(m)));
  }

  friend constexpr bool operator==(SymbolSet, SymbolSet) = default;

 private:
  static constexpr std::uint64_t low_bits(unsigned count) {
    return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
  }

  std::uint64_t mask_ = 0;
};

/// Debug rendering, e.g. "{0,3,5}".
std::string to_string(SymbolSet s);

}  // namespace subsetdfa
