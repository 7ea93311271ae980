#include "subsetdfa/formats.hpp"

#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace subsetdfa {

FormatError::FormatError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string_view strip(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Int>
bool parse_int(std::string_view s, Int& value) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

template <class Int>
Int parse_field(std::string_view token, std::string_view key, std::size_t line) {
  Int value{};
  if (token.substr(0, key.size()) != key || !parse_int(token.substr(key.size()), value))
    throw FormatError(line, "expected " + std::string(key) + "<int>, got '" + std::string(token) + "'");
  return value;
}

class LineBuffer {
 public:
  explicit LineBuffer(std::ostream& out) : out_(out) { buf_.reserve(kFlush + 256); }
  ~LineBuffer() { flush(); }
  LineBuffer& operator<<(std::string_view s) {
    buf_.append(s);
    if (buf_.size() >= kFlush) flush();
    return *this;
  }
  LineBuffer& operator<<(char c) {
    buf_.push_back(c);
    return *this;
  }
  LineBuffer& operator<<(std::uint64_t v) {
    char tmp[24];
    const auto [ptr, ec] = std::to_chars(tmp, tmp + sizeof tmp, v);
    buf_.append(tmp, ptr);
    return *this;
  }
  void flush() {
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    buf_.clear();
  }

 private:
  static constexpr std::size_t kFlush = 1 << 20;
  std::ostream& out_;
  std::string buf_;
};

}  // namespace

std::string format_symbol_set(SymbolSet s, unsigned sigma) {
  if (sigma >= 2 && s == SymbolSet::full(sigma)) return "*";
  std::string out;
  std::uint64_t m = s.mask();
  while (m != 0) {
    const auto lo = static_cast<unsigned>(std::countr_zero(m));
    const std::uint64_t shifted = m >> lo;
    const unsigned run = shifted == ~std::uint64_t{0} ? 64 : static_cast<unsigned>(std::countr_one(shifted));
    const unsigned hi = lo + run - 1;
    if (!out.empty()) out += ',';
    out += std::to_string(lo);
    if (hi > lo) out += '-' + std::to_string(hi);
    m = hi >= 63 ? 0 : m & ~((std::uint64_t{2} << hi) - 1);
  }
  return out;
}

SymbolSet parse_symbol_set(std::string_view token, unsigned sigma) {
  if (token == "*") return SymbolSet::full(sigma);
  SymbolSet s;
  long previous = -1;
  while (true) {
    const auto comma = token.find(',');
    const std::string_view part = token.substr(0, comma);
    const auto dash = part.find('-');
    unsigned lo = 0;
    unsigned hi = 0;
    if (!parse_int(part.substr(0, dash), lo) ||
        (dash != std::string_view::npos && !parse_int(part.substr(dash + 1), hi)))
      throw std::invalid_argument("malformed position '" + std::string(token) + "'");
    if (dash == std::string_view::npos) hi = lo;
    if (hi < lo) throw std::invalid_argument("descending range in '" + std::string(token) + "'");
    if (static_cast<long>(lo) <= previous)
      throw std::invalid_argument("symbols not ascending in '" + std::string(token) + "'");
    if (hi >= sigma) throw std::invalid_argument("symbol out of range in '" + std::string(token) + "'");
    s = SymbolSet(s.mask() | SymbolSet::range(lo, hi).mask());
    previous = hi;
    if (comma == std::string_view::npos) break;
    token = token.substr(comma + 1);
  }
  return s;
}

void write_dictionary(std::ostream& out, const Dictionary& d) {
  LineBuffer buf(out);
  buf << "subsetdict v1 sigma=" << std::uint64_t{d.sigma()} << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto s = d[i];
    if (s.empty()) buf << '-';
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j > 0) buf << ' ';
      buf << format_symbol_set(s[j], d.sigma());
    }
    buf << '\n';
  }
}

Dictionary read_dictionary(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<Dictionary> d;
  SubsetString positions;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = strip(raw);
    if (line.empty()) continue;
    const auto tokens = split(line);
    if (!d) {
      if (tokens.size() != 3 || tokens[0] != "subsetdict" || tokens[1] != "v1")
        throw FormatError(line_no, "expected header 'subsetdict v1 sigma=<int>'");
      const auto sigma = parse_field<unsigned>(tokens[2], "sigma=", line_no);
      if (sigma < 1 || sigma > kMaxSigma)
        throw FormatError(line_no, "sigma must be between 1 and " + std::to_string(kMaxSigma));
      d.emplace(sigma);
      continue;
    }
    positions.clear();
    if (!(tokens.size() == 1 && tokens[0] == "-")) {
      for (const auto token : tokens) {
        try {
          positions.push_back(parse_symbol_set(token, d->sigma()));
        } catch (const std::invalid_argument& e) {
          throw FormatError(line_no, e.what());
        }
      }
    }
    d->add(positions);
  }
  if (!d) throw FormatError(line_no, "missing 'subsetdict v1' header");
  return std::move(*d);
}

std::string serialize_dictionary(const Dictionary& d) {
  std::ostringstream out;
  write_dictionary(out, d);
  return out.str();
}

Dictionary parse_dictionary(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_dictionary(in);
}

void write_automaton(std::ostream& out, const Automaton& a) {
  LineBuffer buf(out);
  buf << "subsetdfa v1 kind=" << kind_name(a.kind()) << " pc=" << (a.path_compressed() ? "1" : "0")
      << " sigma=" << std::uint64_t{a.sigma()} << " states=" << std::uint64_t{a.state_count()} << '\n';
  const bool minimal = a.kind() == AutomatonKind::minimal;
  for (StateId s = 0; s < a.state_count(); ++s) {
    buf << "s " << std::uint64_t{s} << " d=" << std::uint64_t{a.depth(s)} << " a=";
    const auto accept = a.accept_list(s);
    if (minimal) {
      buf << (a.accepting(s) ? '+' : '-');
    } else if (accept.empty()) {
      buf << '-';
    } else {
      for (std::size_t i = 0; i < accept.size(); ++i) {
        if (i > 0) buf << ',';
        buf << std::uint64_t{accept[i]};
      }
    }
    if (const auto leaf = a.leaf(s)) buf << " leaf=" << std::uint64_t{leaf->string} << ':' << std::uint64_t{leaf->offset};
    buf << '\n';
  }
  for (StateId s = 0; s < a.state_count(); ++s)
    for (const Transition t : a.transitions(s))
      buf << "t " << std::uint64_t{s} << ' ' << std::uint64_t{t.symbol} << ' ' << std::uint64_t{t.target} << '\n';
}

Automaton read_automaton(std::istream& in, std::shared_ptr<const Dictionary> dictionary) {
  struct StateLine {
    std::uint32_t depth = 0;
    bool accepting = false;
    IdList accept;
    std::optional<LeafRef> leaf;
  };

  std::string raw;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::optional<std::vector<std::string_view>> {
    while (std::getline(in, raw)) {
      ++line_no;
      const auto line = strip(raw);
      if (!line.empty()) return split(line);
    }
    return std::nullopt;
  };

  const auto header = next_line();
  if (!header || header->size() != 6 || (*header)[0] != "subsetdfa" || (*header)[1] != "v1")
    throw FormatError(line_no, "expected header 'subsetdfa v1 kind=.. pc=.. sigma=.. states=..'");
  const auto& h = *header;
  if (h[2].substr(0, 5) != "kind=") throw FormatError(line_no, "expected kind=<trie|pm|min>");
  const auto kind = parse_kind(h[2].substr(5));
  if (!kind) throw FormatError(line_no, "unknown kind '" + std::string(h[2].substr(5)) + "'");
  const auto pc = parse_field<unsigned>(h[3], "pc=", line_no);
  const auto sigma = parse_field<unsigned>(h[4], "sigma=", line_no);
  const auto count = parse_field<std::size_t>(h[5], "states=", line_no);
  if (pc > 1) throw FormatError(line_no, "pc must be 0 or 1");
  if (sigma < 1 || sigma > kMaxSigma) throw FormatError(line_no, "sigma out of range");
  if (count == 0 || count >= std::numeric_limits<StateId>::max()) throw FormatError(line_no, "bad state count");
  if (*kind == AutomatonKind::minimal && pc == 1) throw FormatError(line_no, "minimal automata cannot be path compressed");
  const bool minimal = *kind == AutomatonKind::minimal;

  std::vector<StateLine> states(count);
  for (std::size_t id = 0; id < count; ++id) {
    const auto tokens = next_line();
    if (!tokens) throw FormatError(line_no, "expected " + std::to_string(count) + " state lines");
    const auto& t = *tokens;
    std::size_t got_id = 0;
    if (t.size() < 4 || t.size() > 5 || t[0] != "s" || !parse_int(t[1], got_id))
      throw FormatError(line_no, "expected 's <id> d=<depth> a=<ids|-> [leaf=<id>:<offset>]'");
    if (got_id != id) throw FormatError(line_no, "state ids must be dense and ascending");
    StateLine& st = states[id];
    st.depth = parse_field<std::uint32_t>(t[2], "d=", line_no);
    if (t[3].substr(0, 2) != "a=") throw FormatError(line_no, "expected a=<ids|->");
    const auto accept = t[3].substr(2);
    if (minimal) {
      if (accept != "+" && accept != "-") throw FormatError(line_no, "minimal automata use a=+ or a=-");
      st.accepting = accept == "+";
    } else if (accept != "-") {
      std::string_view rest = accept;
      while (true) {
        const auto comma = rest.find(',');
        StringId sid = 0;
        if (!parse_int(rest.substr(0, comma), sid)) throw FormatError(line_no, "malformed accept list");
        if (!st.accept.empty() && sid <= st.accept.back()) throw FormatError(line_no, "accept ids not ascending");
        st.accept.push_back(sid);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      st.accepting = true;
    }
    if (t.size() == 5) {
      if (pc == 0) throw FormatError(line_no, "leaf reference in an uncompressed automaton");
      if (t[4].substr(0, 5) != "leaf=") throw FormatError(line_no, "expected leaf=<id>:<offset>");
      const auto ref = t[4].substr(5);
      const auto colon = ref.find(':');
      LeafRef leaf;
      if (colon == std::string_view::npos || !parse_int(ref.substr(0, colon), leaf.string) ||
          !parse_int(ref.substr(colon + 1), leaf.offset))
        throw FormatError(line_no, "malformed leaf reference");
      if (leaf.offset != st.depth) throw FormatError(line_no, "leaf offset must equal the state depth");
      if (!st.accept.empty() && (st.accept.size() != 1 || st.accept[0] != leaf.string))
        throw FormatError(line_no, "leaf accepts a foreign string");
      st.leaf = leaf;
    }
  }

  Automaton::Assembler assembler(*kind, pc == 1, sigma);
  for (const auto& st : states) {
    const StateId s = assembler.add_state(st.depth);
    if (st.leaf) assembler.set_leaf(s, st.leaf->string, st.accepting);
  }

  std::vector<Transition> edges;
  StateId open = 0;  // next state to complete
  std::optional<StateId> from;
  auto flush = [&](StateId upto) {
    // Completes every non-leaf state below `upto`; `from` gets `edges`.
    for (; open < upto; ++open) {
      if (states[open].leaf) continue;
      const auto e = from && *from == open ? std::span<const Transition>(edges) : std::span<const Transition>();
      if (minimal)
        assembler.complete(open, states[open].accepting, e);
      else
        assembler.complete(open, states[open].accept, e);
    }
  };
  while (const auto tokens = next_line()) {
    const auto& t = *tokens;
    StateId src = 0;
    Symbol symbol = 0;
    StateId dst = 0;
    if (t.size() != 4 || t[0] != "t" || !parse_int(t[1], src) || !parse_int(t[2], symbol) || !parse_int(t[3], dst))
      throw FormatError(line_no, "expected 't <from> <symbol> <to>'");
    if (src >= count || dst >= count) throw FormatError(line_no, "state id out of range");
    if (symbol >= sigma) throw FormatError(line_no, "symbol out of range");
    if (states[src].leaf) throw FormatError(line_no, "leaf state has transitions");
    if (from && (src < *from || (src == *from && symbol <= edges.back().symbol)))
      throw FormatError(line_no, "transitions must be sorted by (from, symbol) without duplicates");
    if (!from || src != *from) {
      if (from) flush(*from + 1);
      edges.clear();
      from = src;
      flush(src);
    }
    edges.push_back({symbol, dst});
  }
  flush(static_cast<StateId>(count));

  Automaton a = std::move(assembler).finish(std::move(dictionary));
  if (auto problem = check_structure(a)) throw FormatError(0, *problem);
  return a;
}

std::string serialize_automaton(const Automaton& a) {
  std::ostringstream out;
  write_automaton(out, a);
  return out.str();
}

Automaton parse_automaton(std::string_view text, std::shared_ptr<const Dictionary> dictionary) {
  std::istringstream in{std::string(text)};
  return read_automaton(in, std::move(dictionary));
}

std::optional<SimpleString> parse_query_line(std::string_view line) {
  line = strip(line);
  if (line.empty()) return std::nullopt;
  if (line == "-") return SimpleString{};
  SimpleString p;
  for (const auto token : split(line)) {
    Symbol c = 0;
    if (!parse_int(token, c)) throw std::invalid_argument("malformed query symbol '" + std::string(token) + "'");
    p.push_back(c);
  }
  return p;
}

void write_histogram_csv(std::ostream& out, const std::vector<DepthCount>& histogram) {
  out << "depth,states\n";
  for (const auto& row : histogram) out << row.depth << ',' << row.states << '\n';
}

}  // namespace subsetdfa
