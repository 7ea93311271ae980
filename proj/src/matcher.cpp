#include "subsetdfa/matcher.hpp"

#include <deque>
#include <string>

namespace subsetdfa {

QueryError::QueryError(std::size_t position, Symbol symbol)
    : std::invalid_argument("query symbol " + std::to_string(symbol) + " at position " +
                            std::to_string(position) + " is outside the alphabet"),
      position_(position) {}

std::optional<StateId> delta_star(const Automaton& a, StateId from, std::span<const Symbol> w,
                                  QueryStats* stats) {
  StateId s = from;
  for (Symbol c : w) {
    if (a.leaf(s)) return s;
    const auto next = a.next(s, c);
    if (!next) return std::nullopt;
    if (stats) ++stats->transitions;
    s = *next;
  }
  return s;
}

namespace {

void check_symbols(const Automaton& a, std::span<const Symbol> p) {
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p[j] >= a.sigma()) throw QueryError(j, p[j]);
}

// The state reached by p when p is accepted there; nullopt otherwise. At a
// path-compressed leaf the rest of p is compared against the leaf's string.
std::optional<StateId> accepting_state(const Automaton& a, std::span<const Symbol> p, QueryStats* stats) {
  check_symbols(a, p);
  const auto s = delta_star(a, a.root(), p, stats);
  if (!s) return std::nullopt;
  if (const auto leaf = a.leaf(*s)) {
    if (!a.dictionary()) throw std::logic_error("path-compressed automaton has no dictionary attached");
    const auto positions = (*a.dictionary())[leaf->string];
    if (positions.size() != p.size()) return std::nullopt;
    for (std::size_t j = leaf->offset; j < p.size(); ++j) {
      if (stats) ++stats->remainder_checks;
      if (!positions[j].contains(p[j])) return std::nullopt;
    }
    return s;
  }
  if (!a.accepting(*s)) return std::nullopt;
  return s;
}

}  // namespace

IdList match_retrieve(const Automaton& a, std::span<const Symbol> p, QueryStats* stats) {
  if (a.kind() == AutomatonKind::minimal)
    throw std::logic_error("minimal automata do not retain string ids");
  const auto s = accepting_state(a, p, stats);
  if (!s) return {};
  if (const auto leaf = a.leaf(*s)) return {leaf->string};
  const auto ids = a.accept_list(*s);
  return IdList(ids.begin(), ids.end());
}

bool match_membership(const Automaton& a, std::span<const Symbol> p, QueryStats* stats) {
  return accepting_state(a, p, stats).has_value();
}

BigCount count_accepted_strings(const Automaton& a) {
  // Forward path counting. Targets always have larger ids, so only a window
  // of pending counts [s, largest target seen] is kept.
  BigCount total = 0;
  std::deque<BigCount> window;
  window.emplace_back(1);
  std::size_t base = 0;
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (window.empty()) window.emplace_back(0);
    const BigCount paths = std::move(window.front());
    window.pop_front();
    ++base;
    if (paths.is_zero()) continue;
    if (const auto leaf = a.leaf(s)) {
      if (!a.dictionary()) throw std::logic_error("path-compressed automaton has no dictionary attached");
      BigCount product = paths;
      const auto positions = (*a.dictionary())[leaf->string];
      for (std::size_t j = leaf->offset; j < positions.size(); ++j) product *= positions[j].size();
      total += product;
      continue;
    }
    if (a.accepting(s)) total += paths;
    for (const Transition t : a.transitions(s)) {
      const std::size_t slot = t.target - base;
      while (window.size() <= slot) window.emplace_back(0);
      window[slot] += paths;
    }
  }
  return total;
}

std::vector<DepthCount> depth_histogram(const Automaton& a) {
  std::vector<DepthCount> h;
  for (StateId s = 0; s < a.state_count(); ++s) {
    const std::uint32_t d = a.depth(s);
    while (h.size() <= d) h.push_back({static_cast<std::uint32_t>(h.size()), 0});
    ++h[d].states;
  }
  return h;
}

}  // namespace subsetdfa
