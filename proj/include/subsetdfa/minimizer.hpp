#pragma once

#include <cstddef>

#include "subsetdfa/automaton.hpp"

namespace subsetdfa {

/// Minimal DFA for the language of `a`. Works on any uncompressed automaton
/// (trie, pseudo-minimal or already minimal) by merging states bottom-up on
/// (accepting, [(symbol, class of target)...]) signatures; the result keeps
/// only accepting flags. Throws std::invalid_argument for path-compressed
/// input.
Automaton minimize(const Automaton& a);

/// Compares the languages of `a` and `b` restricted to strings of length
/// <= max_length, by exhaustive enumeration. Throws std::length_error when
/// more than `budget` strings would be enumerated, std::invalid_argument when
/// the alphabets differ.
bool equivalent_languages(const Automaton& a, const Automaton& b, std::size_t max_length,
                          std::size_t budget = std::size_t{1} << 22);

}  // namespace subsetdfa
