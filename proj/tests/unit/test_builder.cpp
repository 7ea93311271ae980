#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "subsetdfa/builder.hpp"
#include "subsetdfa/matcher.hpp"
#include "subsetdfa/oracle.hpp"
#include "subsetdfa/registry.hpp"
#include "test_support.hpp"

using namespace subsetdfa;
using namespace subsetdfa::testing;

namespace {

std::shared_ptr<const Dictionary> share(Dictionary d) { return std::make_shared<const Dictionary>(std::move(d)); }

BuildResult build_with_lists(const Dictionary& d, AutomatonKind kind, bool pc) {
  BuildOptions o;
  o.kind = kind;
  o.path_compression = pc;
  o.keep_prefix_lists = true;
  return build(share(d), o);
}

/// Ids whose first |w| positions admit w.
IdList prefix_matches(const Dictionary& d, const SimpleString& w) {
  IdList out;
  for (StringId i = 0; i < d.size(); ++i) {
    const auto s = d[i];
    if (s.size() < w.size()) continue;
    bool ok = true;
    for (std::size_t j = 0; j < w.size() && ok; ++j) ok = s[j].contains(w[j]);
    if (ok) out.push_back(i);
  }
  return out;
}

struct ExpectedSizes {
  std::size_t trie = 0;
  std::size_t pm = 0;
  std::size_t trie_pc = 0;
  std::size_t pm_pc = 0;
};

// Counts from first principles: trie states are the distinct prefixes of D',
// pseudo-minimal states the distinct (length, prefix-match list) pairs. With
// path compression only prefixes whose proper non-empty prefixes all match
// two or more strings survive.
ExpectedSizes expected_sizes(const Dictionary& d, std::size_t max_len) {
  ExpectedSizes e;
  std::set<std::pair<std::size_t, IdList>> pm, pm_pc;
  std::function<void(SimpleString&, bool)> walk = [&](SimpleString& w, bool expanded) {
    const IdList l = prefix_matches(d, w);
    if (l.empty() && !w.empty()) return;
    ++e.trie;
    pm.insert({w.size(), l});
    if (expanded) {
      ++e.trie_pc;
      pm_pc.insert({w.size(), l});
    }
    const bool expand_children = expanded && (w.empty() || l.size() >= 2);
    if (w.size() == max_len) return;
    for (Symbol c = 0; c < d.sigma(); ++c) {
      w.push_back(c);
      walk(w, expand_children);
      w.pop_back();
    }
  };
  SimpleString w;
  walk(w, true);
  e.pm = pm.size();
  e.pm_pc = pm_pc.size();
  return e;
}

}  // namespace

TEST_CASE("partition examples") {
  const Dictionary d = e1();
  const IdList both{0, 1};
  auto p = partition(d, both, 0);
  CHECK(p.ended.empty());
  CHECK(p.by_symbol[0] == IdList{0, 1});
  CHECK(p.by_symbol[1] == IdList{1});

  p = partition(d, both, 1);
  CHECK(p.ended.empty());
  CHECK(p.by_symbol[0] == IdList{0});
  CHECK(p.by_symbol[1] == IdList{0, 1});

  p = partition(d, both, 2);
  CHECK(p.ended == IdList{0, 1});
  CHECK(p.by_symbol[0].empty());
  CHECK(p.by_symbol[1].empty());
}

TEST_CASE("partition spreads each id over exactly its subset") {
  Rng rng(11);
  for (int round = 0; round < 100; ++round) {
    const Dictionary d = small_random(rng, 1 + static_cast<unsigned>(rng.below(6)), 6, 15);
    for (std::uint32_t depth = 0; depth <= d.max_length(); ++depth) {
      IdList list;
      for (StringId i = 0; i < d.size(); ++i)
        if (d.length(i) >= depth) list.push_back(i);
      const auto p = partition(d, list, depth);
      std::map<StringId, std::size_t> seen;
      for (const auto& l : p.by_symbol) {
        CHECK(std::is_sorted(l.begin(), l.end()));
        for (StringId k : l) ++seen[k];
      }
      CHECK(std::is_sorted(p.ended.begin(), p.ended.end()));
      for (StringId k : list) {
        if (d.length(k) == depth) {
          CHECK(std::binary_search(p.ended.begin(), p.ended.end(), k));
          CHECK(seen.count(k) == 0);
        } else {
          CHECK(seen[k] == d[k][depth].size());
        }
      }
    }
  }
}

TEST_CASE("registry lookup or insert") {
  Registry r;
  CHECK(r.lookup_or_insert(EquivKey{1, {0, 1}}, 5) == std::pair<StateId, bool>{5, true});
  CHECK(r.lookup_or_insert(EquivKey{1, {0, 1}}, 9) == std::pair<StateId, bool>{5, false});
  CHECK(r.lookup_or_insert(EquivKey{2, {0, 1}}, 9) == std::pair<StateId, bool>{9, true});
  CHECK(r.size() == 2);
  CHECK(r.key_ids() == 4);
}

TEST_CASE("build queue is first in first out by level") {
  BuildQueue q;
  q.push(0, 0, IdList{0, 1, 2});
  auto e = q.pop();
  CHECK(e.state == 0);
  CHECK(IdList(e.list.begin(), e.list.end()) == IdList{0, 1, 2});
  q.push(1, 1, IdList{0});
  q.push(2, 1, IdList{1, 2});
  CHECK_THROWS_AS(q.push(3, 2, IdList{1}), std::logic_error);
  CHECK(q.pending() == 2);
  e = q.pop();
  CHECK(e.state == 1);
  q.push(3, 2, IdList{2});
  e = q.pop();
  CHECK(e.state == 2);
  CHECK(IdList(e.list.begin(), e.list.end()) == IdList{1, 2});
  e = q.pop();
  CHECK(e.state == 3);
  CHECK(e.depth == 2);
  CHECK(q.empty());
  CHECK_THROWS_AS(q.pop(), std::logic_error);
}

TEST_CASE("pseudo-minimal automaton of E1") {
  const auto r = build_with_lists(e1(), AutomatonKind::pseudo_minimal, false);
  const Automaton& a = r.automaton;
  REQUIRE(a.state_count() == 6);
  CHECK_FALSE(check_structure(a).has_value());
  CHECK(r.prefix_lists[0] == IdList{0, 1});

  const StateId s0 = *a.next(0, 0), s1 = *a.next(0, 1);
  CHECK(a.depth(s0) == 1);
  CHECK(r.prefix_lists[s0] == IdList{0, 1});
  CHECK(r.prefix_lists[s1] == IdList{1});

  std::set<IdList> accept_lists;
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (a.depth(s) != 2) continue;
    CHECK(a.accepting(s));
    accept_lists.emplace(a.accept_list(s).begin(), a.accept_list(s).end());
  }
  CHECK(accept_lists == std::set<IdList>{{0}, {0, 1}, {1}});
  CHECK(a.accepting_count() == 3);
}

TEST_CASE("E2 merges, its trie does not") {
  const Automaton pm = build_automaton(e2(), AutomatonKind::pseudo_minimal, false);
  const Automaton trie = build_automaton(e2(), AutomatonKind::trie, false);
  CHECK(pm.state_count() == 3);
  CHECK(trie.state_count() == 5);
  CHECK(*pm.next(0, 0) == *pm.next(0, 1));
}

TEST_CASE("full cube E3") {
  const Automaton pm = build_automaton(e3(), AutomatonKind::pseudo_minimal, false);
  CHECK(pm.state_count() == 4);
  const Automaton pc = build_automaton(e3(), AutomatonKind::pseudo_minimal, true);
  REQUIRE(pc.state_count() == 2);
  const StateId leaf = *pc.next(0, 0);
  CHECK(leaf == *pc.next(0, 1));
  REQUIRE(pc.leaf(leaf).has_value());
  CHECK(*pc.leaf(leaf) == LeafRef{0, 1});
  CHECK_FALSE(pc.accepting(leaf));
  CHECK(pc.transitions(leaf).empty());
}

TEST_CASE("pathological dictionary of full strings") {
  for (unsigned sigma : {2u, 4u})
    for (unsigned m : {3u, 8u}) {
      Dictionary d(sigma);
      for (int copies = 0; copies < 3; ++copies) d.add(SubsetString(m, SymbolSet::full(sigma)));
      CHECK(build_automaton(d, AutomatonKind::pseudo_minimal, false).state_count() == m + 1);
      // Three identical strings never shrink to a singleton list, so the
      // compressed automaton equals the plain one.
      CHECK(build_automaton(d, AutomatonKind::pseudo_minimal, true).state_count() == m + 1);
      Dictionary single(sigma, {SubsetString(m, SymbolSet::full(sigma))});
      CHECK(build_automaton(single, AutomatonKind::pseudo_minimal, true).state_count() == 2);
    }
}

TEST_CASE("empty dictionary and empty strings") {
  const Automaton none = build_automaton(Dictionary(3), AutomatonKind::pseudo_minimal, false);
  CHECK(none.state_count() == 1);
  CHECK_FALSE(none.accepting(0));

  const Dictionary d(2, {{}, {SymbolSet::of({1})}, {}});
  for (bool pc : {false, true}) {
    const Automaton a = build_automaton(d, AutomatonKind::pseudo_minimal, pc);
    CHECK(a.accepting(0));
    CHECK(IdList(a.accept_list(0).begin(), a.accept_list(0).end()) == IdList{0, 2});
    CHECK_FALSE(check_structure(a).has_value());
  }
}

TEST_CASE("invalid input is rejected") {
  CHECK_THROWS_AS(build_automaton(Dictionary(2, {{SymbolSet::of({3})}}), AutomatonKind::pseudo_minimal, false),
                  InvalidDictionary);
  BuildOptions o;
  o.kind = AutomatonKind::minimal;
  CHECK_THROWS_AS(build(share(e1()), o), std::invalid_argument);
  CHECK_THROWS_AS(build(nullptr, BuildOptions{}), std::invalid_argument);
}

TEST_CASE("budgets stop the build with the depth reached") {
  BuildOptions o;
  o.max_states = 3;
  try {
    build(share(e1()), o);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.depth() == 2);
  }
  o.max_states = 6;
  CHECK(build(share(e1()), o).automaton.state_count() == 6);

  BuildOptions m;
  m.max_bytes = 1;
  CHECK_THROWS_AS(build(share(e1()), m), BudgetExceeded);
  m.max_bytes = 1 << 20;
  CHECK(build(share(e1()), m).automaton.state_count() == 6);
}

TEST_CASE("build-time lists satisfy the prefix-match definition") {
  Rng rng(21);
  for (int round = 0; round < 150; ++round) {
    const Dictionary d = small_random(rng, 1 + static_cast<unsigned>(rng.below(4)), 5, 10);
    for (auto kind : {AutomatonKind::trie, AutomatonKind::pseudo_minimal}) {
      const auto r = build_with_lists(d, kind, false);
      const auto paths = paths_to_states(r.automaton);
      for (StateId s = 0; s < r.automaton.state_count(); ++s) {
        REQUIRE_FALSE(paths[s].empty());
        for (const auto& w : paths[s]) CHECK(prefix_matches(d, w) == r.prefix_lists[s]);
      }
    }
  }
}

TEST_CASE("state counts agree with the prefix-class oracle") {
  Rng rng(31);
  for (int round = 0; round < 200; ++round) {
    const Dictionary d = small_random(rng, 1 + static_cast<unsigned>(rng.below(5)), 6, 12);
    const auto e = expected_sizes(d, d.max_length());
    CHECK(build_automaton(d, AutomatonKind::trie, false).state_count() == e.trie);
    CHECK(build_automaton(d, AutomatonKind::pseudo_minimal, false).state_count() == e.pm);
    CHECK(build_automaton(d, AutomatonKind::trie, true).state_count() == e.trie_pc);
    CHECK(build_automaton(d, AutomatonKind::pseudo_minimal, true).state_count() == e.pm_pc);
  }
}

TEST_CASE("structure, merging and registry soundness on random input") {
  Rng rng(41);
  for (int round = 0; round < 200; ++round) {
    const Dictionary d = small_random(rng, 1 + static_cast<unsigned>(rng.below(6)), 7, 20);
    const auto pm = build_with_lists(d, AutomatonKind::pseudo_minimal, false);
    const Automaton trie = build_automaton(d, AutomatonKind::trie, false);
    const Automaton pm_pc = build_automaton(d, AutomatonKind::pseudo_minimal, true);
    const Automaton trie_pc = build_automaton(d, AutomatonKind::trie, true);
    for (const Automaton* a : {&pm.automaton, &trie, &pm_pc, &trie_pc}) {
      const auto problem = check_structure(*a);
      CHECK_MESSAGE(!problem, problem.value_or(""));
      for (StateId s = 0; s < a->state_count(); ++s)
        for (const Transition t : a->transitions(s)) CHECK(a->depth(t.target) == a->depth(s) + 1);
    }
    CHECK(pm.automaton.state_count() <= trie.state_count());
    CHECK(pm_pc.state_count() <= pm.automaton.state_count());
    CHECK(trie_pc.state_count() <= trie.state_count());
    CHECK(pm.automaton.state_count() == pm.stats.registry_insertions + 1);

    std::set<std::pair<std::uint32_t, IdList>> keys;
    for (StateId s = 0; s < pm.automaton.state_count(); ++s)
      CHECK(keys.insert({pm.automaton.depth(s), pm.prefix_lists[s]}).second);

    // Strict merging whenever two trie nodes share a class.
    const auto trie_lists = build_with_lists(d, AutomatonKind::trie, false);
    std::set<std::pair<std::uint32_t, IdList>> trie_keys;
    for (StateId s = 0; s < trie.state_count(); ++s)
      trie_keys.insert({trie.depth(s), trie_lists.prefix_lists[s]});
    if (trie_keys.size() < trie.state_count()) CHECK(pm.automaton.state_count() < trie.state_count());
  }
}

TEST_CASE("compressed leaves record the single remaining string") {
  Rng rng(51);
  for (int round = 0; round < 100; ++round) {
    const Dictionary d = small_random(rng, 1 + static_cast<unsigned>(rng.below(5)), 6, 12);
    const auto r = build_with_lists(d, AutomatonKind::pseudo_minimal, true);
    for (StateId s = 0; s < r.automaton.state_count(); ++s) {
      const auto leaf = r.automaton.leaf(s);
      if (!leaf) {
        CHECK((s == 0 || r.prefix_lists[s].size() >= 2));
        continue;
      }
      CHECK(r.prefix_lists[s] == IdList{leaf->string});
      CHECK(leaf->offset == r.automaton.depth(s));
      CHECK(r.automaton.accepting(s) == (d.length(leaf->string) == leaf->offset));
    }
  }
}

TEST_CASE("permuting the dictionary keeps the shape") {
  Rng rng(61);
  for (int round = 0; round < 50; ++round) {
    const Dictionary d = small_random(rng, 2 + static_cast<unsigned>(rng.below(4)), 7, 20);
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const Automaton a = build_automaton(d, AutomatonKind::pseudo_minimal, false);
    const Automaton b = build_automaton(d.permuted(order), AutomatonKind::pseudo_minimal, false);
    CHECK(a.state_count() == b.state_count());
    CHECK(depth_histogram(a) == depth_histogram(b));
  }
}

TEST_CASE("alpha estimate") {
  CHECK(alpha_estimate(10000, 4, 1.6) == doctest::Approx(10.04).epsilon(0.002));
  CHECK(alpha_estimate(10000, 20, 3.25) == doctest::Approx(5.07).epsilon(0.002));
  CHECK(alpha_estimate(1, 7, 2) == 0.0);
  CHECK(std::isinf(alpha_estimate(100, 4, 4)));
  CHECK(std::isinf(alpha_estimate(100, 4, 5)));
  CHECK_THROWS_AS(alpha_estimate(100, 4, 0), std::domain_error);
  CHECK_THROWS_AS(alpha_estimate(0, 4, 1), std::domain_error);
}
