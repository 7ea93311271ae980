#pragma once

// Definitional reference answers, used to check the automata.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "subsetdfa/dictionary.hpp"

namespace subsetdfa {

/// Scans every dictionary string positionally.
IdList brute_force_match(const Dictionary& d, std::span<const Symbol> p);

class EnumerationBudgetExceeded : public std::length_error {
 public:
  EnumerationBudgetExceeded() : std::length_error("expansion of the dictionary exceeds the enumeration budget") {}
};

/// The set D' of simple strings matching some dictionary string, sorted and
/// deduplicated. Throws EnumerationBudgetExceeded when the total expansion
/// (sum over strings of the product of subset sizes) exceeds `budget`.
std::vector<SimpleString> enumerate_dprime(const Dictionary& d, std::size_t budget = std::size_t{1} << 22);

}  // namespace subsetdfa
