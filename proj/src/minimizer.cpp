#include "subsetdfa/minimizer.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "subsetdfa/matcher.hpp"
#include "subsetdfa/registry.hpp"

namespace subsetdfa {

Automaton minimize(const Automaton& a) {
  if (a.path_compressed()) throw std::invalid_argument("minimization requires uncompressed input");
  const std::size_t n = a.state_count();

  // Ids are topologically ordered, so a reverse scan sees every target's
  // class before the state itself. Classes are numbered in creation order.
  std::vector<std::uint32_t> class_of(n);
  IdListMap<std::uint32_t> interned;
  std::vector<std::vector<std::uint32_t>> signatures;  // by class
  std::vector<std::uint32_t> signature;
  for (std::size_t i = n; i-- > 0;) {
    const auto s = static_cast<StateId>(i);
    signature.clear();
    signature.push_back(a.accepting(s) ? 1 : 0);
    for (const Transition t : a.transitions(s)) {
      signature.push_back(t.symbol);
      signature.push_back(class_of[t.target]);
    }
    auto [it, inserted] = interned.try_emplace(signature, static_cast<std::uint32_t>(signatures.size()));
    if (inserted) signatures.push_back(signature);
    class_of[s] = it->second;
  }
  interned = {};

  // Reversing the creation order gives a topological numbering with the
  // root's class (always created last) at id 0.
  const auto k = static_cast<std::uint32_t>(signatures.size());
  const auto new_id = [k](std::uint32_t cls) { return static_cast<StateId>(k - 1 - cls); };
  if (new_id(class_of[a.root()]) != 0) throw std::logic_error("root merged with another state");

  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> depth(k, kUnset);
  depth[0] = 0;
  for (StateId s = 0; s < k; ++s) {
    const auto& sig = signatures[k - 1 - s];
    for (std::size_t j = 1; j < sig.size(); j += 2)
      depth[new_id(sig[j + 1])] = std::min(depth[new_id(sig[j + 1])], depth[s] + 1);
  }

  Automaton::Assembler assembler(AutomatonKind::minimal, false, a.sigma());
  for (StateId s = 0; s < k; ++s) assembler.add_state(depth[s]);
  std::vector<Transition> edges;
  for (StateId s = 0; s < k; ++s) {
    const auto& sig = signatures[k - 1 - s];
    edges.clear();
    for (std::size_t j = 1; j < sig.size(); j += 2) edges.push_back({sig[j], new_id(sig[j + 1])});
    assembler.complete(s, sig[0] != 0, edges);
  }
  return std::move(assembler).finish(a.dictionary());
}

namespace {

bool enumerate_equal(const Automaton& a, const Automaton& b, SimpleString& prefix, std::size_t max_length) {
  if (match_membership(a, prefix) != match_membership(b, prefix)) return false;
  if (prefix.size() == max_length) return true;
  for (Symbol c = 0; c < a.sigma(); ++c) {
    prefix.push_back(c);
    const bool equal = enumerate_equal(a, b, prefix, max_length);
    prefix.pop_back();
    if (!equal) return false;
  }
  return true;
}

}  // namespace

bool equivalent_languages(const Automaton& a, const Automaton& b, std::size_t max_length, std::size_t budget) {
  if (a.sigma() != b.sigma()) throw std::invalid_argument("automata over different alphabets");
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t len = 0; len <= max_length; ++len) {
    total += layer;
    if (total > budget) throw std::length_error("enumeration budget exceeded");
    if (len < max_length && layer > budget / a.sigma()) throw std::length_error("enumeration budget exceeded");
    layer *= a.sigma();
  }
  SimpleString prefix;
  return enumerate_equal(a, b, prefix, max_length);
}

}  // namespace subsetdfa
