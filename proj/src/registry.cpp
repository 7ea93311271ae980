#include "subsetdfa/registry.hpp"

namespace subsetdfa {

std::pair<StateId, bool> Registry::lookup_or_insert(std::uint32_t depth, std::span<const StringId> list,
                                                    StateId candidate) {
  if (per_depth_.size() <= depth) per_depth_.resize(depth + 1);
  auto [it, inserted] = per_depth_[depth].try_emplace(IdList(list.begin(), list.end()), candidate);
  if (inserted) {
    ++size_;
    key_ids_ += list.size();
  }
  return {it->second, inserted};
}

}  // namespace subsetdfa
