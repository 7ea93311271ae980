#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "subsetdfa/automaton.hpp"
#include "subsetdfa/dictionary.hpp"

namespace subsetdfa {

/// Split of a prefix-match list at one depth: the strings that end there, and
/// for every symbol c the strings whose next position contains c.
struct Partition {
  IdList ended;
  std::vector<IdList> by_symbol;  // sigma lists
};

/// Single pass over `prefix_list`. Every surviving id k lands in exactly
/// |d_k[depth]| of the per-symbol lists; all output lists stay sorted.
Partition partition(const Dictionary& d, std::span<const StringId> prefix_list, std::uint32_t depth);
/// Same, reusing the buffers of `out`.
void partition_into(const Dictionary& d, std::span<const StringId> prefix_list, std::uint32_t depth,
                    Partition& out);

/// FIFO of states awaiting expansion, each with its prefix-match list.
/// Entries are pushed one depth level ahead of those being popped, so the
/// queue keeps two flat buffers: the level being drained and the next one.
class BuildQueue {
 public:
  struct Entry {
    StateId state;
    std::uint32_t depth;
    std::span<const StringId> list;  // valid until the next pop()
  };

  void push(StateId state, std::uint32_t depth, std::span<const StringId> list);
  bool empty() const { return cursor_ == current_.states.size() && next_.states.empty(); }
  Entry pop();
  std::size_t pending() const { return current_.states.size() - cursor_ + next_.states.size(); }
  /// Ids held by queued entries (including the level being drained).
  std::size_t held_ids() const { return current_.ids.size() + next_.ids.size(); }

 private:
  struct Level {
    std::uint32_t depth = 0;
    std::vector<StateId> states;
    std::vector<std::size_t> begin{0};
    std::vector<StringId> ids;
    void clear() {
      states.clear();
      begin.assign(1, 0);
      ids.clear();
    }
  };
  Level current_;
  Level next_;
  std::size_t cursor_ = 0;
};

struct BuildOptions {
  /// trie or pseudo_minimal; minimal automata come from minimize().
  AutomatonKind kind = AutomatonKind::pseudo_minimal;
  /// Stop expanding states whose prefix-match list is a single string.
  bool path_compression = false;
  /// 0 means unlimited.
  std::size_t max_states = 0;
  /// Approximate cap on bytes held by states, registry keys and the queue;
  /// 0 means unlimited.
  std::size_t max_bytes = 0;
  /// Retain every state's build-time prefix-match list (for inspection).
  bool keep_prefix_lists = false;
};

struct BuildStats {
  std::size_t registry_insertions = 0;
  std::size_t registry_hits = 0;
  std::size_t partitioned_ids = 0;  // total length of all partitioned lists
  std::size_t peak_queue = 0;
  std::size_t peak_bytes = 0;  // estimate, see BuildOptions::max_bytes
};

struct BuildResult {
  Automaton automaton;
  BuildStats stats;
  std::vector<IdList> prefix_lists;  // indexed by state, if requested
};

/// Thrown when the state or memory budget is exhausted.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint32_t depth);
  std::uint32_t depth() const { return depth_; }

 private:
  std::uint32_t depth_;
};

/// Breadth-first construction of the trie or pseudo-minimal automaton
/// accepting every simple string that matches some dictionary string.
/// Throws InvalidDictionary, BudgetExceeded, std::invalid_argument.
BuildResult build(std::shared_ptr<const Dictionary> d, const BuildOptions& options);

Automaton build_automaton(const Dictionary& d, AutomatonKind kind, bool path_compression);

/// log(n) / log(sigma / delta): the depth at which prefix-match lists are
/// expected to shrink to constant length. +infinity when delta >= sigma.
/// Throws std::domain_error when delta <= 0 or n < 1.
double alpha_estimate(double n, double sigma, double delta);

}  // namespace subsetdfa
