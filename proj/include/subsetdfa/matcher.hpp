#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "subsetdfa/automaton.hpp"

namespace subsetdfa {

/// Exact unbounded count.
using BigCount = boost::multiprecision::cpp_int;

/// A query symbol outside the alphabet.
class QueryError : public std::invalid_argument {
 public:
  QueryError(std::size_t position, Symbol symbol);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Work done by one query.
struct QueryStats {
  std::size_t transitions = 0;       // transitions followed
  std::size_t remainder_checks = 0;  // positions compared at a leaf
};

/// Follows `w` from `from`. Returns nullopt on a missing transition; stops
/// early (returning the leaf) when a path-compressed leaf is entered, in
/// which case the caller finishes the remaining symbols positionally.
std::optional<StateId> delta_star(const Automaton& a, StateId from, std::span<const Symbol> w,
                                  QueryStats* stats = nullptr);

/// Ids of all dictionary strings matched by `p`, ascending. Not available on
/// minimal automata (std::logic_error). Throws QueryError for symbols >= sigma.
IdList match_retrieve(const Automaton& a, std::span<const Symbol> p, QueryStats* stats = nullptr);

/// True iff `p` matches some dictionary string. Works on every kind.
bool match_membership(const Automaton& a, std::span<const Symbol> p, QueryStats* stats = nullptr);

/// Number of accepted simple strings (= |D'|), by path counting in
/// topological order.
BigCount count_accepted_strings(const Automaton& a);

struct DepthCount {
  std::uint32_t depth = 0;
  std::size_t states = 0;
  friend bool operator==(const DepthCount&, const DepthCount&) = default;
};

/// State counts per depth, ascending, with empty depths included.
std::vector<DepthCount> depth_histogram(const Automaton& a);

}  // namespace subsetdfa
