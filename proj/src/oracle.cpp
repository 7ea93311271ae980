#include "subsetdfa/oracle.hpp"

#include <algorithm>

namespace subsetdfa {

IdList brute_force_match(const Dictionary& d, std::span<const Symbol> p) {
  IdList out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto s = d[i];
    if (s.size() != p.size()) continue;
    bool match = true;
    for (std::size_t j = 0; j < p.size() && match; ++j) match = s[j].contains(p[j]);
    if (match) out.push_back(static_cast<StringId>(i));
  }
  return out;
}

namespace {

void expand(std::span<const SymbolSet> s, SimpleString& prefix, std::vector<SimpleString>& out) {
  if (prefix.size() == s.size()) {
    out.push_back(prefix);
    return;
  }
  s[prefix.size()].for_each([&](Symbol c) {
    prefix.push_back(c);
    expand(s, prefix, out);
    prefix.pop_back();
  });
}

}  // namespace

std::vector<SimpleString> enumerate_dprime(const Dictionary& d, std::size_t budget) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::size_t product = 1;
    for (SymbolSet set : d[i]) {
      if (product > budget / set.size()) throw EnumerationBudgetExceeded();
      product *= set.size();
    }
    total += product;
    if (total > budget) throw EnumerationBudgetExceeded();
  }
  std::vector<SimpleString> out;
  out.reserve(total);
  SimpleString prefix;
  for (std::size_t i = 0; i < d.size(); ++i) expand(d[i], prefix, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace subsetdfa
