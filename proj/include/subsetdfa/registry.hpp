#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subsetdfa/dictionary.hpp"

namespace subsetdfa {

/// Hash for id lists and other short integer sequences.
struct IdListHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    return hash(v);
  }
  static std::size_t hash(std::span<const std::uint32_t> v) noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 32;
    }
    return static_cast<std::size_t>(h);
  }
};

template <class Value>
using IdListMap = std::unordered_map<std::vector<std::uint32_t>, Value, IdListHash>;

/// The pseudo-minimal equivalence class of a state: two states are merged
/// exactly when they have the same depth and the same prefix-match list.
struct EquivKey {
  std::uint32_t depth = 0;
  IdList list;
  friend bool operator==(const EquivKey&, const EquivKey&) = default;
};

/// Per-depth map from prefix-match lists to the representative state.
/// Keys are never removed.
class Registry {
 public:
  /// Returns the state bound to (depth, list) and false, or binds it to
  /// `candidate` and returns (candidate, true).
  std::pair<StateId, bool> lookup_or_insert(std::uint32_t depth, std::span<const StringId> list,
                                            StateId candidate);
  std::pair<StateId, bool> lookup_or_insert(const EquivKey& key, StateId candidate) {
    return lookup_or_insert(key.depth, key.list, candidate);
  }

  std::size_t size() const { return size_; }
  /// Total length of all stored keys.
  std::size_t key_ids() const { return key_ids_; }

 private:
  std::vector<IdListMap<StateId>> per_depth_;
  std::size_t size_ = 0;
  std::size_t key_ids_ = 0;
};

}  // namespace subsetdfa
