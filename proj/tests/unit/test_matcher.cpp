#include <cmath>
#include <set>

#include "doctest.h"
#include "subsetdfa/builder.hpp"
#include "subsetdfa/matcher.hpp"
#include "subsetdfa/minimizer.hpp"
#include "subsetdfa/oracle.hpp"
#include "test_support.hpp"

using namespace subsetdfa;
using namespace subsetdfa::testing;

namespace {

Automaton pm(const Dictionary& d, bool pc = false) {
  return build_automaton(d, AutomatonKind::pseudo_minimal, pc);
}

SimpleString str(std::initializer_list<Symbol> s) { return SimpleString(s); }

}  // namespace

TEST_CASE("brute force oracle") {
  CHECK(brute_force_match(e1(), str({0, 1})) == IdList{0, 1});
  CHECK(brute_force_match(e1(), str({1, 1})) == IdList{1});
  CHECK(brute_force_match(e1(), str({1, 0})).empty());
  CHECK(brute_force_match(Dictionary(2), str({0})).empty());
}

TEST_CASE("enumerated expansions") {
  CHECK(enumerate_dprime(e1()) == std::vector<SimpleString>{str({0, 0}), str({0, 1}), str({1, 1})});
  CHECK(enumerate_dprime(e2()) == std::vector<SimpleString>{str({0, 0}), str({1, 0})});
  const auto cube = enumerate_dprime(e3());
  CHECK(cube.size() == 8);
  CHECK(std::set<SimpleString>(cube.begin(), cube.end()).size() == 8);
  CHECK_THROWS_AS(enumerate_dprime(e3(), 7), EnumerationBudgetExceeded);
  CHECK(enumerate_dprime(Dictionary(2, {{}})) == std::vector<SimpleString>{SimpleString{}});
}

TEST_CASE("extended transition function") {
  const Automaton a = pm(e1());
  const auto s = delta_star(a, a.root(), str({0, 1}));
  REQUIRE(s);
  CHECK(a.accepting(*s));
  CHECK(IdList(a.accept_list(*s).begin(), a.accept_list(*s).end()) == IdList{0, 1});
  CHECK_FALSE(delta_star(a, a.root(), str({1, 0})));
  for (StateId u = 0; u < a.state_count(); ++u) CHECK(delta_star(a, u, {}) == u);

  const Automaton pc = pm(e3(), true);
  QueryStats stats;
  const auto leaf = delta_star(pc, pc.root(), str({0, 1, 0}), &stats);
  REQUIRE(leaf);
  CHECK(pc.leaf(*leaf).has_value());
  CHECK(stats.transitions == 1);
}

TEST_CASE("retrieval examples") {
  const Automaton a = pm(e1());
  CHECK(match_retrieve(a, str({0, 1})) == IdList{0, 1});
  CHECK(match_retrieve(a, str({0, 0})) == IdList{0});
  CHECK(match_retrieve(a, str({1, 1})) == IdList{1});
  CHECK(match_retrieve(a, str({0})).empty());
  CHECK(match_retrieve(a, str({0, 1, 1})).empty());
  CHECK(match_retrieve(a, {}).empty());

  const Automaton pc = pm(e3(), true);
  QueryStats stats;
  CHECK(match_retrieve(pc, str({0, 1, 0}), &stats) == IdList{0});
  CHECK(stats.transitions == 1);
  CHECK(stats.remainder_checks == 2);
  CHECK(match_retrieve(pc, str({0, 1})).empty());
  CHECK(match_retrieve(pc, str({0, 1, 0, 0})).empty());
}

TEST_CASE("membership examples") {
  const Automaton m = minimize(pm(e1()));
  CHECK(match_membership(m, str({0, 1})));
  CHECK_FALSE(match_membership(m, str({1, 0})));
  CHECK_FALSE(match_membership(m, {}));
  CHECK_THROWS_AS(match_retrieve(m, str({0, 1})), std::logic_error);

  const Automaton with_empty = pm(Dictionary(2, {{SymbolSet::of({0})}, {}}));
  CHECK(match_membership(with_empty, {}));
  CHECK(match_membership(minimize(with_empty), {}));
}

TEST_CASE("out-of-range query symbols") {
  const Automaton a = pm(e1());
  try {
    match_retrieve(a, str({0, 2}));
    FAIL("expected QueryError");
  } catch (const QueryError& e) {
    CHECK(e.position() == 1);
  }
  CHECK_THROWS_AS(match_membership(minimize(a), str({5})), QueryError);
  CHECK_THROWS_AS(match_retrieve(pm(e3(), true), str({0, 1, 9})), QueryError);
}

TEST_CASE("compressed index needs its dictionary") {
  Automaton a = pm(e3(), true);
  a.attach_dictionary(nullptr);
  CHECK_THROWS(match_retrieve(a, str({0, 0, 0})));
}

TEST_CASE("counting") {
  CHECK(count_accepted_strings(pm(e1())) == 3);
  CHECK(count_accepted_strings(pm(e2())) == 2);
  CHECK(count_accepted_strings(pm(e3(), true)) == 8);
  CHECK(count_accepted_strings(pm(Dictionary(2))) == 0);
  CHECK(count_accepted_strings(pm(Dictionary(2, {{}}))) == 1);

  // 40 full positions over 64 symbols: 2^240, far beyond 64 bits.
  const Dictionary big(64, {SubsetString(40, SymbolSet::full(64))});
  const BigCount expected = BigCount(1) << 240;
  CHECK(count_accepted_strings(pm(big)) == expected);
  CHECK(count_accepted_strings(pm(big, true)) == expected);
  CHECK(count_accepted_strings(minimize(pm(big))) == expected);
}

TEST_CASE("depth histograms") {
  CHECK(depth_histogram(pm(e1())) == std::vector<DepthCount>{{0, 1}, {1, 2}, {2, 3}});
  CHECK(depth_histogram(pm(e3())) == std::vector<DepthCount>{{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  CHECK(depth_histogram(pm(Dictionary(2))) == std::vector<DepthCount>{{0, 1}});
}

TEST_CASE("all kinds agree with the oracles on small random input") {
  Rng rng(91);
  for (int round = 0; round < 120; ++round) {
    const Dictionary d = small_random(rng, 1 + static_cast<unsigned>(rng.below(4)), 6, 12);
    const Automaton trie = build_automaton(d, AutomatonKind::trie, false);
    const Automaton trie_pc = build_automaton(d, AutomatonKind::trie, true);
    const Automaton p = pm(d);
    const Automaton p_pc = pm(d, true);
    const Automaton m = minimize(p);
    const auto dprime = enumerate_dprime(d);
    const std::set<SimpleString> dset(dprime.begin(), dprime.end());

    for (const Automaton* a : {&trie, &trie_pc, &p, &p_pc, &m})
      CHECK(count_accepted_strings(*a) == dprime.size());

    for_each_string(d.sigma(), d.max_length() + 1, [&](const SimpleString& w) {
      const IdList expected = brute_force_match(d, w);
      CHECK((!expected.empty()) == dset.count(w));
      for (const Automaton* a : {&trie, &trie_pc, &p, &p_pc}) {
        QueryStats stats;
        CHECK(match_retrieve(*a, w, &stats) == expected);
        CHECK(stats.transitions <= w.size());
        CHECK(stats.remainder_checks <= w.size());
        CHECK(match_membership(*a, w) == !expected.empty());
      }
      CHECK(match_membership(m, w) == !expected.empty());
    });
  }
}

TEST_CASE("histogram shape on a generated instance") {
  // Subsets stay below half the alphabet, so the breadth rises to one peak
  // and then falls (allowing one-level wobbles).
  const Dictionary d = generate_instance({12, 3000, 8, 1, 3, 0.5, 5});
  const auto h = depth_histogram(pm(d));
  std::size_t peak = 0;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i].states > h[peak].states) peak = i;
  for (std::size_t i = 2; i <= peak; ++i) CHECK(h[i].states >= h[i - 2].states);
  for (std::size_t i = peak + 2; i < h.size(); ++i) CHECK(h[i].states <= h[i - 2].states);
  const double alpha = alpha_estimate(3000, 8, 0.5 * 2 + 0.5);
  CHECK(std::abs(static_cast<double>(peak) - alpha) <= 2.0);
}
