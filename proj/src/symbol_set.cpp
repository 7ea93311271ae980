#include "subsetdfa/symbol_set.hpp"

namespace subsetdfa {

std::string to_string(SymbolSet s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](Symbol c) {
    if (!first) out += ',';
    out += std::to_string(c);
    first = false;
  });
  out += '}';
  return out;
}

}  // namespace subsetdfa
