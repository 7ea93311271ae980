#pragma once

// Text formats.
//
// Dictionary file:
//   subsetdict v1 sigma=<int>
//   one string per line, positions separated by single spaces; a position is
//   `*` (whole alphabet) or a comma list of ascending symbols and inclusive
//   ranges (`0,3,5`, `2-6`, `0,4-7`). A line holding just `-` is the empty
//   string. Blank lines and `#` comments are ignored.
//
// Automaton file:
//   subsetdfa v1 kind=<trie|pm|min> pc=<0|1> sigma=<int> states=<int>
//   s <id> d=<depth> a=<ids|-> [leaf=<string>:<offset>]   (ascending id)
//   t <from> <symbol> <to>                               (by from, symbol)
//   Minimal automata write a=+ for accepting states and a=- otherwise.
//
// Query file: one simple string per line, symbols separated by spaces; `-`
// is the empty query. Blank lines and `#` comments are ignored.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "subsetdfa/automaton.hpp"
#include "subsetdfa/dictionary.hpp"
#include "subsetdfa/matcher.hpp"

namespace subsetdfa {

/// Malformed input; line is 1-based (0 when not tied to a line).
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string format_symbol_set(SymbolSet s, unsigned sigma);
/// Throws std::invalid_argument on a malformed token.
SymbolSet parse_symbol_set(std::string_view token, unsigned sigma);

void write_dictionary(std::ostream& out, const Dictionary& d);
Dictionary read_dictionary(std::istream& in);
std::string serialize_dictionary(const Dictionary& d);
Dictionary parse_dictionary(std::string_view text);

void write_automaton(std::ostream& out, const Automaton& a);
/// Validates every structural invariant. `dictionary`, when given, is
/// attached (required for queries on path-compressed automata).
Automaton read_automaton(std::istream& in, std::shared_ptr<const Dictionary> dictionary = nullptr);
std::string serialize_automaton(const Automaton& a);
Automaton parse_automaton(std::string_view text, std::shared_ptr<const Dictionary> dictionary = nullptr);

/// One query line; nullopt for blank or comment-only lines. Throws
/// std::invalid_argument on malformed symbols (range is checked by the
/// matcher).
std::optional<SimpleString> parse_query_line(std::string_view line);

/// "depth,states" header plus one row per depth.
void write_histogram_csv(std::ostream& out, const std::vector<DepthCount>& histogram);

}  // namespace subsetdfa
