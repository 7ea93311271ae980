#include "subsetdfa/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace subsetdfa {

std::string_view kind_name(AutomatonKind kind) {
  switch (kind) {
    case AutomatonKind::trie: return "trie";
    case AutomatonKind::pseudo_minimal: return "pm";
    case AutomatonKind::minimal: return "min";
  }
  return "?";
}

std::optional<AutomatonKind> parse_kind(std::string_view name) {
  if (name == "trie") return AutomatonKind::trie;
  if (name == "pm") return AutomatonKind::pseudo_minimal;
  if (name == "min") return AutomatonKind::minimal;
  return std::nullopt;
}

std::size_t Automaton::accepting_count() const {
  return static_cast<std::size_t>(std::count(accepting_.begin(), accepting_.end(), std::uint8_t{1}));
}

std::uint32_t Automaton::max_depth() const {
  return depth_.empty() ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

std::span<const StringId> Automaton::accept_list(StateId s) const {
  if (!leaf_.empty() && leaf_[s] != kNoLeaf)
    return accepting_[s] ? std::span<const StringId>(&leaf_[s], 1) : std::span<const StringId>();
  return {accept_ids_.data() + accept_begin_[s], accept_begin_[s + 1] - accept_begin_[s]};
}

bool operator==(const Automaton& a, const Automaton& b) {
  return a.kind_ == b.kind_ && a.path_compressed_ == b.path_compressed_ && a.sigma_ == b.sigma_ &&
         a.depth_ == b.depth_ && a.masks_ == b.masks_ && a.accepting_ == b.accepting_ &&
         a.edge_begin_ == b.edge_begin_ && a.targets_ == b.targets_ &&
         a.accept_begin_ == b.accept_begin_ && a.accept_ids_ == b.accept_ids_ && a.leaf_ == b.leaf_;
}

Automaton::Assembler::Assembler(AutomatonKind kind, bool path_compressed, unsigned sigma) {
  if (sigma == 0 || sigma > kMaxSigma) throw std::invalid_argument("sigma out of range");
  a_.kind_ = kind;
  a_.path_compressed_ = path_compressed;
  a_.sigma_ = sigma;
  a_.edge_begin_.push_back(0);
  a_.accept_begin_.push_back(0);
}

StateId Automaton::Assembler::add_state(std::uint32_t depth) {
  if (a_.depth_.size() >= std::numeric_limits<StateId>::max())
    throw std::length_error("state id space exhausted");
  const auto id = static_cast<StateId>(a_.depth_.size());
  a_.depth_.push_back(depth);
  a_.masks_.push_back(0);
  a_.accepting_.push_back(0);
  if (a_.path_compressed_) a_.leaf_.push_back(kNoLeaf);
  return id;
}

void Automaton::Assembler::set_leaf(StateId s, StringId string, bool accepting) {
  assert(a_.path_compressed_);
  a_.leaf_[s] = string;
  a_.accepting_[s] = accepting ? 1 : 0;
}

void Automaton::Assembler::advance_to(StateId s) {
  if (s < next_to_complete_ || s >= a_.depth_.size())
    throw std::logic_error("states must be completed once, in increasing id order");
  // Skipped states (leaves) get empty slices.
  while (next_to_complete_ < s) {
    a_.edge_begin_.push_back(a_.targets_.size());
    a_.accept_begin_.push_back(a_.accept_ids_.size());
    ++next_to_complete_;
  }
}

void Automaton::Assembler::write_edges(StateId s, std::span<const Transition> edges) {
  std::uint64_t mask = 0;
  for (const Transition& t : edges) {
    if (t.symbol >= a_.sigma_) throw std::logic_error("transition symbol out of range");
    const std::uint64_t bit = std::uint64_t{1} << t.symbol;
    if ((mask & ~(bit - 1)) != 0) throw std::logic_error("transition symbols must be ascending");
    mask |= bit;
    a_.targets_.push_back(t.target);
  }
  a_.masks_[s] = mask;
  a_.edge_begin_.push_back(a_.targets_.size());
  ++next_to_complete_;
}

void Automaton::Assembler::complete(StateId s, std::span<const StringId> accept,
                                    std::span<const Transition> edges) {
  advance_to(s);
  a_.accept_ids_.insert(a_.accept_ids_.end(), accept.begin(), accept.end());
  a_.accept_begin_.push_back(a_.accept_ids_.size());
  a_.accepting_[s] = accept.empty() ? 0 : 1;
  write_edges(s, edges);
}

void Automaton::Assembler::complete(StateId s, bool accepting, std::span<const Transition> edges) {
  advance_to(s);
  a_.accept_begin_.push_back(a_.accept_ids_.size());
  a_.accepting_[s] = accepting ? 1 : 0;
  write_edges(s, edges);
}

Automaton Automaton::Assembler::finish(std::shared_ptr<const Dictionary> dictionary) && {
  if (a_.depth_.empty()) throw std::logic_error("automaton has no root");
  if (next_to_complete_ < a_.depth_.size()) advance_to(static_cast<StateId>(a_.depth_.size() - 1));
  // The last state may itself be an uncompleted leaf.
  while (a_.edge_begin_.size() < a_.depth_.size() + 1) {
    a_.edge_begin_.push_back(a_.targets_.size());
    a_.accept_begin_.push_back(a_.accept_ids_.size());
  }
  a_.dictionary_ = std::move(dictionary);
  a_.targets_.shrink_to_fit();
  a_.accept_ids_.shrink_to_fit();
  return std::move(a_);
}

std::optional<std::string> check_structure(const Automaton& a) {
  const std::size_t n = a.state_count();
  if (n == 0) return "no states";
  if (a.depth(0) != 0) return "root depth is not 0";
  if (a.kind() == AutomatonKind::minimal && a.path_compressed())
    return "minimal automata cannot be path compressed";

  const auto state = [](std::size_t s) { return "state " + std::to_string(s) + ": "; };
  constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> distance(n, kUnreached);
  distance[0] = 0;
  for (StateId s = 0; s < n; ++s) {
    if (distance[s] == kUnreached) return state(s) + "unreachable from the root";
    if (a.kind() == AutomatonKind::minimal) {
      if (distance[s] != a.depth(s)) return state(s) + "depth is not the root distance";
    }
    const auto accept = a.accept_list(s);
    if (!std::is_sorted(accept.begin(), accept.end()) ||
        std::adjacent_find(accept.begin(), accept.end()) != accept.end())
      return state(s) + "accept list not strictly ascending";
    if (a.kind() == AutomatonKind::minimal) {
      if (!accept.empty()) return state(s) + "minimal automata carry no accept ids";
    } else if (a.accepting(s) != !accept.empty()) {
      return state(s) + "accepting flag disagrees with accept list";
    }
    if (auto leaf = a.leaf(s)) {
      if (!a.transitions(s).empty()) return state(s) + "leaf has transitions";
      if (!accept.empty() && (accept.size() != 1 || accept[0] != leaf->string))
        return state(s) + "leaf accepts a foreign string";
    }
    if (a.symbol_mask(s) >> (a.sigma() - 1) > 1) return state(s) + "transition symbol out of range";
    for (const Transition t : a.transitions(s)) {
      if (t.target <= s || t.target >= n) return state(s) + "transition target out of order";
      if (a.kind() != AutomatonKind::minimal && a.depth(t.target) != a.depth(s) + 1)
        return state(s) + "transition does not increase depth by one";
      distance[t.target] = std::min(distance[t.target], distance[s] + 1);
    }
  }
  if (const auto& d = a.dictionary()) {
    for (StateId s = 0; s < n; ++s) {
      for (StringId id : a.accept_list(s))
        if (id >= d->size() || d->length(id) != a.depth(s)) return state(s) + "accept id inconsistent with dictionary";
      if (auto leaf = a.leaf(s); leaf && (leaf->string >= d->size() || d->length(leaf->string) < leaf->offset))
        return state(s) + "leaf reference outside the dictionary";
    }
  }
  return std::nullopt;
}

}  // namespace subsetdfa
