#include "subsetdfa/dictionary.hpp"

#include <algorithm>
#include <limits>

namespace subsetdfa {

Dictionary::Dictionary(unsigned sigma, const std::vector<SubsetString>& strings) : sigma_(sigma) {
  for (const auto& s : strings) add(s);
}

void Dictionary::add(std::span<const SymbolSet> positions) {
  positions_.insert(positions_.end(), positions.begin(), positions.end());
  offsets_.push_back(positions_.size());
}

std::size_t Dictionary::max_length() const {
  std::size_t m = 0;
  for (std::size_t i = 0; i < size(); ++i) m = std::max(m, length(i));
  return m;
}

double Dictionary::mean_subset_size() const {
  if (positions_.empty()) return 0.0;
  std::size_t total = 0;
  for (SymbolSet s : positions_) total += s.size();
  return static_cast<double>(total) / static_cast<double>(positions_.size());
}

Dictionary Dictionary::permuted(std::span<const std::size_t> order) const {
  Dictionary out(sigma_);
  for (std::size_t id : order) out.add((*this)[id]);
  return out;
}

std::optional<DictionaryError> validate(const Dictionary& d) {
  if (d.sigma() == 0 || d.sigma() > kMaxSigma)
    return DictionaryError{0, 0, "sigma must be between 1 and " + std::to_string(kMaxSigma)};
  if (d.size() >= std::numeric_limits<StringId>::max())
    return DictionaryError{d.size(), 0, "too many dictionary strings"};
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto s = d[i];
    for (std::size_t j = 0; j < s.size(); ++j) {
      const char* what = s[j].empty() ? "empty subset" : !s[j].fits(d.sigma()) ? "symbol out of range" : nullptr;
      if (what != nullptr)
        return DictionaryError{i, j, std::string(what) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")"};
    }
  }
  return std::nullopt;
}

void require_valid(const Dictionary& d) {
  if (auto e = validate(d)) throw InvalidDictionary(std::move(*e));
}

}  // namespace subsetdfa
