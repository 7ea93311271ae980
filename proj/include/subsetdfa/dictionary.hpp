#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "subsetdfa/symbol_set.hpp"

namespace subsetdfa {

using SubsetString = std::vector<SymbolSet>;
using SimpleString = std::vector<Symbol>;

/// Strictly ascending list of dictionary string identifiers.
using IdList = std::vector<StringId>;

/// The indexed set D of subset-strings over {0, ..., sigma-1}. String ids are
/// insertion positions; duplicates and zero-length strings are permitted.
/// Positions are stored flat, one SymbolSet per position.
class Dictionary {
 public:
  Dictionary() = default;
  explicit Dictionary(unsigned sigma) : sigma_(sigma) {}
  Dictionary(unsigned sigma, const std::vector<SubsetString>& strings);

  void add(std::span<const SymbolSet> positions);

  unsigned sigma() const { return sigma_; }
  std::size_t size() const { return offsets_.size() - 1; }
  bool empty() const { return size() == 0; }

  std::span<const SymbolSet> operator[](std::size_t id) const {
    return {positions_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }
  std::size_t length(std::size_t id) const { return offsets_[id + 1] - offsets_[id]; }
  std::size_t max_length() const;
  std::size_t total_positions() const { return positions_.size(); }

  /// Average subset size over all positions (0 for an empty dictionary).
  double mean_subset_size() const;

  /// Copy with strings reordered: result[i] = (*this)[order[i]].
  Dictionary permuted(std::span<const std::size_t> order) const;

  friend bool operator==(const Dictionary&, const Dictionary&) = default;

 private:
  unsigned sigma_ = 0;
  std::vector<SymbolSet> positions_;
  std::vector<std::size_t> offsets_{0};
};

struct DictionaryError {
  std::size_t string_index = 0;
  std::size_t position = 0;
  std::string message;
};

/// First invariant violation, or nullopt when the dictionary is well formed.
std::optional<DictionaryError> validate(const Dictionary& d);

class InvalidDictionary : public std::runtime_error {
 public:
  explicit InvalidDictionary(DictionaryError e)
      : std::runtime_error(e.message), error_(std::move(e)) {}
  const DictionaryError& error() const { return error_; }

 private:
  DictionaryError error_;
};

/// Throws InvalidDictionary on the first violation.
void require_valid(const Dictionary& d);

}  // namespace subsetdfa
