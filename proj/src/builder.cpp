#include "subsetdfa/builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "subsetdfa/registry.hpp"

namespace subsetdfa {

Partition partition(const Dictionary& d, std::span<const StringId> prefix_list, std::uint32_t depth) {
  Partition out;
  partition_into(d, prefix_list, depth, out);
  return out;
}

void partition_into(const Dictionary& d, std::span<const StringId> prefix_list, std::uint32_t depth,
                    Partition& out) {
  out.ended.clear();
  out.by_symbol.resize(d.sigma());
  for (auto& l : out.by_symbol) l.clear();
  for (StringId k : prefix_list) {
    if (d.length(k) <= depth) {
      out.ended.push_back(k);
    } else {
      d[k][depth].for_each([&](Symbol c) { out.by_symbol[c].push_back(k); });
    }
  }
}

void BuildQueue::push(StateId state, std::uint32_t depth, std::span<const StringId> list) {
  if (next_.states.empty()) {
    next_.depth = depth;
  } else if (next_.depth != depth) {
    throw std::logic_error("BuildQueue: pushes must target a single next depth");
  }
  next_.states.push_back(state);
  next_.ids.insert(next_.ids.end(), list.begin(), list.end());
  next_.begin.push_back(next_.ids.size());
}

BuildQueue::Entry BuildQueue::pop() {
  if (cursor_ == current_.states.size()) {
    if (next_.states.empty()) throw std::logic_error("BuildQueue: pop from empty queue");
    std::swap(current_, next_);
    next_.clear();
    cursor_ = 0;
  }
  const std::size_t i = cursor_++;
  return {current_.states[i], current_.depth,
          std::span<const StringId>(current_.ids.data() + current_.begin[i],
                                    current_.begin[i + 1] - current_.begin[i])};
}

BudgetExceeded::BudgetExceeded(const std::string& what, std::uint32_t depth)
    : std::runtime_error(what + " exceeded at depth " + std::to_string(depth)), depth_(depth) {}

BuildResult build(std::shared_ptr<const Dictionary> dict, const BuildOptions& options) {
  if (!dict) throw std::invalid_argument("null dictionary");
  const Dictionary& d = *dict;
  require_valid(d);
  if (options.kind == AutomatonKind::minimal)
    throw std::invalid_argument("minimal automata are produced by minimize(), not build()");

  const bool merge = options.kind == AutomatonKind::pseudo_minimal;
  const bool compress = options.path_compression;

  BuildResult result;
  Automaton::Assembler assembler(options.kind, compress, d.sigma());
  Registry registry;
  BuildQueue queue;
  Partition part;
  std::vector<Transition> edges;
  edges.reserve(d.sigma());

  // Rough per-item costs: a state's columns, a hash node with its vector
  // header, one id.
  constexpr std::size_t kStateBytes = 40;
  constexpr std::size_t kKeyBytes = 64;
  constexpr std::size_t kIdBytes = sizeof(StringId);
  auto new_state = [&](std::uint32_t depth, std::span<const StringId> list) {
    if (options.max_states != 0 && assembler.state_count() >= options.max_states)
      throw BudgetExceeded("state budget of " + std::to_string(options.max_states), depth);
    const std::size_t bytes = assembler.state_count() * kStateBytes + registry.size() * kKeyBytes +
                              (registry.key_ids() + queue.held_ids()) * kIdBytes;
    result.stats.peak_bytes = std::max(result.stats.peak_bytes, bytes);
    if (options.max_bytes != 0 && bytes > options.max_bytes)
      throw BudgetExceeded("memory budget of " + std::to_string(options.max_bytes >> 20) + " MiB", depth);
    const StateId s = assembler.add_state(depth);
    if (options.keep_prefix_lists) result.prefix_lists.emplace_back(list.begin(), list.end());
    return s;
  };

  IdList all(d.size());
  std::iota(all.begin(), all.end(), StringId{0});
  const StateId root = new_state(0, all);
  queue.push(root, 0, all);
  all = {};

  while (!queue.empty()) {
    result.stats.peak_queue = std::max(result.stats.peak_queue, queue.pending());
    const auto [u, depth, list] = queue.pop();
    result.stats.partitioned_ids += list.size();
    partition_into(d, list, depth, part);

    edges.clear();
    const std::uint32_t child_depth = depth + 1;
    for (Symbol c = 0; c < d.sigma(); ++c) {
      const IdList& child_list = part.by_symbol[c];
      if (child_list.empty()) continue;
      StateId v;
      bool fresh = true;
      if (merge) {
        const auto candidate = static_cast<StateId>(assembler.state_count());
        std::tie(v, fresh) = registry.lookup_or_insert(child_depth, child_list, candidate);
        if (fresh) {
          new_state(child_depth, child_list);
          ++result.stats.registry_insertions;
        } else {
          ++result.stats.registry_hits;
        }
      } else {
        v = new_state(child_depth, child_list);
      }
      if (fresh) {
        if (compress && child_list.size() == 1) {
          const StringId k = child_list.front();
          assembler.set_leaf(v, k, d.length(k) == child_depth);
        } else {
          queue.push(v, child_depth, child_list);
        }
      }
      edges.push_back({c, v});
    }
    assembler.complete(u, part.ended, edges);
  }

  result.automaton = std::move(assembler).finish(std::move(dict));
  return result;
}

Automaton build_automaton(const Dictionary& d, AutomatonKind kind, bool path_compression) {
  BuildOptions options;
  options.kind = kind;
  options.path_compression = path_compression;
  return build(std::make_shared<const Dictionary>(d), options).automaton;
}

double alpha_estimate(double n, double sigma, double delta) {
  if (!(delta > 0)) throw std::domain_error("average subset size must be positive");
  if (!(n >= 1)) throw std::domain_error("dictionary size must be at least 1");
  if (delta >= sigma) return std::numeric_limits<double>::infinity();
  return std::log(n) / std::log(sigma / delta);
}

}  // namespace subsetdfa
