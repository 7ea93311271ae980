#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subsetdfa/dictionary.hpp"

namespace subsetdfa {

enum class AutomatonKind { trie, pseudo_minimal, minimal };

/// "trie", "pm", "min" (the names used by the file format and the CLI).
std::string_view kind_name(AutomatonKind kind);
std::optional<AutomatonKind> parse_kind(std::string_view name);

/// A path-compressed leaf: the rest of string `string`, from position
/// `offset` on, is matched positionally. offset always equals the leaf depth.
struct LeafRef {
  StringId string = 0;
  std::uint32_t offset = 0;
  friend bool operator==(LeafRef, LeafRef) = default;
};

struct Transition {
  Symbol symbol = 0;
  StateId target = 0;
  friend bool operator==(Transition, Transition) = default;
};

/// Outgoing transitions of one state in ascending symbol order.
class TransitionRange {
 public:
  class iterator {
   public:
    using value_type = Transition;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(std::uint64_t mask, const StateId* target) : mask_(mask), target_(target) {}
    Transition operator*() const { return {static_cast<Symbol>(std::countr_zero(mask_)), *target_}; }
    iterator& operator++() {
      mask_ &= mask_ - 1;
      ++target_;
      return *this;
    }
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(std::default_sentinel_t) const { return mask_ == 0; }

   private:
    std::uint64_t mask_ = 0;
    const StateId* target_ = nullptr;
  };

  TransitionRange(std::uint64_t mask, const StateId* targets) : mask_(mask), targets_(targets) {}
  iterator begin() const { return {mask_, targets_}; }
  std::default_sentinel_t end() const { return {}; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool empty() const { return mask_ == 0; }

 private:
  std::uint64_t mask_;
  const StateId* targets_;
};

/// An acyclic DFA over {0, ..., sigma-1} with per-state accept lists.
///
/// Storage is column-wise: each state has a depth, a bit mask of the symbols
/// it has transitions on, a slice of the shared target array (ordered by
/// symbol) and a slice of the shared accept-id array. The transition on c is
/// found by a popcount over the mask, so lookups cost O(1).
///
/// Structural invariants (checked by check_structure):
///  - the root is state 0 with depth 0, every state is reachable from it;
///  - state ids are a topological order: every transition goes to a larger id;
///  - for trie and pseudo-minimal kinds every transition increases the depth
///    by exactly one; for the minimal kind depth is the shortest distance
///    from the root;
///  - a leaf (path-compressed) state has no transitions; its accept list is
///    {string} when that string ends at the leaf, empty otherwise;
///  - minimal automata keep only an accepting flag, never accept ids.
///
/// Automata are immutable once assembled and may be shared across threads.
class Automaton {
 public:
  class Assembler;

  Automaton() = default;

  AutomatonKind kind() const { return kind_; }
  bool path_compressed() const { return path_compressed_; }
  unsigned sigma() const { return sigma_; }
  StateId root() const { return 0; }

  std::size_t state_count() const { return depth_.size(); }
  std::size_t transition_count() const { return targets_.size(); }
  std::size_t accepting_count() const;

  std::uint32_t depth(StateId s) const { return depth_[s]; }
  std::uint32_t max_depth() const;

  std::uint64_t symbol_mask(StateId s) const { return masks_[s]; }
  TransitionRange transitions(StateId s) const {
    return {masks_[s], targets_.data() + edge_begin_[s]};
  }

  /// delta(s, c), or nullopt when there is no such transition.
  std::optional<StateId> next(StateId s, Symbol c) const {
    if (c >= kMaxSigma) return std::nullopt;
    const std::uint64_t bit = std::uint64_t{1} << c;
    if ((masks_[s] & bit) == 0) return std::nullopt;
    return targets_[edge_begin_[s] + static_cast<std::size_t>(std::popcount(masks_[s] & (bit - 1)))];
  }

  bool accepting(StateId s) const { return accepting_[s] != 0; }
  /// L(s), ascending. Always empty for minimal automata.
  std::span<const StringId> accept_list(StateId s) const;

  std::optional<LeafRef> leaf(StateId s) const {
    if (leaf_.empty() || leaf_[s] == kNoLeaf) return std::nullopt;
    return LeafRef{leaf_[s], depth_[s]};
  }

  /// Dictionary the automaton was built from; required to finish queries at
  /// path-compressed leaves. May be null for automata read from a file.
  const std::shared_ptr<const Dictionary>& dictionary() const { return dictionary_; }
  void attach_dictionary(std::shared_ptr<const Dictionary> d) { dictionary_ = std::move(d); }

  /// Structural equality; the attached dictionary is not compared.
  friend bool operator==(const Automaton& a, const Automaton& b);

 private:
  static constexpr StringId kNoLeaf = ~StringId{0};

  AutomatonKind kind_ = AutomatonKind::trie;
  bool path_compressed_ = false;
  unsigned sigma_ = 0;

  std::vector<std::uint32_t> depth_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint8_t> accepting_;
  std::vector<std::size_t> edge_begin_;    // size state_count()+1
  std::vector<StateId> targets_;
  std::vector<std::size_t> accept_begin_;  // size state_count()+1
  std::vector<StringId> accept_ids_;
  std::vector<StringId> leaf_;             // empty unless path compressed

  std::shared_ptr<const Dictionary> dictionary_;
};

/// Incremental construction. States are added first (getting dense ids) and
/// completed later; completion must happen in increasing id order, and states
/// never completed (leaves) end up with no transitions and no accept ids.
class Automaton::Assembler {
 public:
  Assembler(AutomatonKind kind, bool path_compressed, unsigned sigma);

  StateId add_state(std::uint32_t depth);
  std::size_t state_count() const { return a_.depth_.size(); }

  /// Marks s as a path-compressed leaf for `string`; `accepting` when the
  /// string ends exactly at s.
  void set_leaf(StateId s, StringId string, bool accepting);

  /// Sets accept ids and transitions (ascending symbols) of s.
  void complete(StateId s, std::span<const StringId> accept, std::span<const Transition> edges);
  /// Minimal-automaton variant: accepting flag only.
  void complete(StateId s, bool accepting, std::span<const Transition> edges);

  Automaton finish(std::shared_ptr<const Dictionary> dictionary = nullptr) &&;

 private:
  void advance_to(StateId s);
  void write_edges(StateId s, std::span<const Transition> edges);

  Automaton a_;
  StateId next_to_complete_ = 0;
};

/// Describes the first violated structural invariant, or nullopt.
std::optional<std::string> check_structure(const Automaton& a);

}  // namespace subsetdfa
