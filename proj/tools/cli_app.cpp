#include "cli_app.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"
#include "subsetdfa/builder.hpp"
#include "subsetdfa/formats.hpp"
#include "subsetdfa/generator.hpp"
#include "subsetdfa/matcher.hpp"
#include "subsetdfa/minimizer.hpp"

namespace subsetdfa::cli {
namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultMaxStates = 50'000'000;
constexpr std::size_t kDefaultMaxMemoryMb = 2048;

/// Writes through a temporary file in the same directory, then renames.
void write_atomically(const std::string& path, const std::function<void(std::ostream&)>& body) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + path);
    body(out);
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw UsageError("error writing " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw UsageError("cannot write " + path + ": " + ec.message());
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

std::shared_ptr<const Dictionary> load_dictionary(const std::string& path) {
  auto in = open_input(path);
  auto d = std::make_shared<const Dictionary>(read_dictionary(in));
  if (auto e = validate(*d)) throw FormatError(0, path + ": " + e->message);
  return d;
}

Automaton load_index(const std::string& path, std::shared_ptr<const Dictionary> dictionary) {
  auto in = open_input(path);
  Automaton a = read_automaton(in, dictionary);
  if (dictionary && dictionary->sigma() != a.sigma())
    throw UsageError("dictionary and index use different alphabets");
  if (a.path_compressed() && !dictionary)
    throw UsageError("path-compressed index needs its dictionary (--dict)");
  return a;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::string format_ms(double ms) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << ms;
  return s.str();
}

struct Method {
  std::string name;
  AutomatonKind kind;
  bool pc;
};

std::optional<Method> parse_method(const std::string& name) {
  if (name == "pm") return Method{name, AutomatonKind::pseudo_minimal, false};
  if (name == "pm-pc") return Method{name, AutomatonKind::pseudo_minimal, true};
  if (name == "min") return Method{name, AutomatonKind::minimal, false};
  if (name == "trie") return Method{name, AutomatonKind::trie, false};
  if (name == "trie-pc") return Method{name, AutomatonKind::trie, true};
  return std::nullopt;
}

/// Builds (and for min, minimizes) one automaton.
Automaton build_method(std::shared_ptr<const Dictionary> d, AutomatonKind kind, bool pc, std::size_t max_states,
                       std::size_t max_memory_mb) {
  BuildOptions options;
  options.max_bytes = max_memory_mb << 20;
  options.kind = kind == AutomatonKind::minimal ? AutomatonKind::pseudo_minimal : kind;
  options.path_compression = pc;
  options.max_states = max_states;
  Automaton a = build(std::move(d), options).automaton;
  if (kind == AutomatonKind::minimal) a = minimize(a);
  return a;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  InstanceParams params;
  std::string mode = "standard";
  std::uint32_t delta = 0;
  std::uint32_t k = 0;
  std::string out;
};

void add_instance_options(CLI::App* cmd, InstanceParams& p) {
  cmd->add_option("-m", p.m, "string length")->required();
  cmd->add_option("-n", p.n, "dictionary size")->required();
  cmd->add_option("-s,--sigma", p.sigma, "alphabet size")->required();
  cmd->add_option("--dl", p.delta_low, "smallest subset size")->capture_default_str();
  cmd->add_option("--dh", p.delta_high, "largest subset size")->capture_default_str();
  cmd->add_option("-f", p.f, "probability that a position is a subset")->capture_default_str();
}

int cmd_gen(const GenArgs& g, std::ostream& out) {
  Dictionary d;
  try {
    if (g.mode == "standard")
      d = generate_instance(g.params);
    else if (g.mode == "delta")
      d = generate_delta_instance(g.params.m, g.params.n, g.params.sigma, g.delta, g.params.seed);
    else if (g.mode == "wildcard")
      d = generate_wildcard_instance(g.params.m, g.params.n, g.params.sigma, g.k, g.params.seed);
    else
      throw UsageError("unknown mode '" + g.mode + "'");
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (g.out.empty())
    write_dictionary(out, d);
  else
    write_atomically(g.out, [&](std::ostream& o) { write_dictionary(o, d); });
  return kOk;
}

struct BuildArgs {
  std::string in;
  std::string kind = "pm";
  bool pc = false;
  std::string out;
  std::size_t max_states = kDefaultMaxStates;
  std::size_t max_memory_mb = kDefaultMaxMemoryMb;
};

int cmd_build(const BuildArgs& b, std::ostream& out) {
  const auto kind = parse_kind(b.kind);
  if (!kind) throw UsageError("unknown kind '" + b.kind + "' (expected trie, pm or min)");
  if (*kind == AutomatonKind::minimal && b.pc) throw UsageError("--kind min cannot be combined with --pc");
  const auto d = load_dictionary(b.in);
  const auto start = std::chrono::steady_clock::now();
  const Automaton a = build_method(d, *kind, b.pc, b.max_states, b.max_memory_mb);
  const double ms = elapsed_ms(start);
  if (!b.out.empty()) write_atomically(b.out, [&](std::ostream& o) { write_automaton(o, a); });
  out << "states=" << a.state_count() << " accepting=" << a.accepting_count()
      << " build_ms=" << format_ms(ms) << " dprime=" << count_accepted_strings(a) << '\n';
  return kOk;
}

struct QueryArgs {
  std::string index;
  std::string dict;
  std::string queries;
  std::vector<std::string> words;
};

int cmd_query(const QueryArgs& q, std::ostream& out) {
  std::shared_ptr<const Dictionary> d;
  if (!q.dict.empty()) d = load_dictionary(q.dict);
  const Automaton a = load_index(q.index, d);

  auto answer = [&](const SimpleString& p, std::size_t line) {
    try {
      if (a.kind() == AutomatonKind::minimal) {
        out << (match_membership(a, p) ? "yes" : "no") << '\n';
        return;
      }
      const IdList ids = match_retrieve(a, p);
      if (ids.empty()) out << '-';
      for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
      out << '\n';
    } catch (const QueryError& e) {
      throw FormatError(line, e.what());
    }
  };
  auto parse = [](std::string_view text, std::size_t line) {
    try {
      return parse_query_line(text);
    } catch (const std::invalid_argument& e) {
      throw FormatError(line, e.what());
    }
  };

  if (!q.words.empty()) {
    std::string joined;
    for (const auto& w : q.words) joined += (joined.empty() ? "" : " ") + w;
    answer(parse(joined, 0).value_or(SimpleString{}), 0);
  }
  if (!q.queries.empty()) {
    auto in = open_input(q.queries);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto p = parse(line, line_no)) answer(*p, line_no);
    }
  }
  if (q.words.empty() && q.queries.empty()) throw UsageError("no queries given");
  return kOk;
}

struct StatsArgs {
  std::string index;
  std::string hist;
  std::string dict;
  std::optional<double> n;
  std::optional<double> sigma;
  std::optional<double> delta;
};

int cmd_stats(const StatsArgs& s, std::ostream& out, std::ostream& err) {
  std::shared_ptr<const Dictionary> d;
  if (!s.dict.empty()) d = load_dictionary(s.dict);
  const Automaton a = load_index(s.index, d);
  const auto histogram = depth_histogram(a);

  std::optional<double> n = s.n;
  std::optional<double> delta = s.delta;
  const double sigma = s.sigma.value_or(a.sigma());
  if (d && !n) n = static_cast<double>(d->size());
  if (d && !delta) delta = d->mean_subset_size();

  std::ostringstream summary;
  summary << "states=" << a.state_count() << " max_depth=" << a.max_depth();
  if (n && delta) {
    try {
      summary << " alpha=" << std::setprecision(4) << alpha_estimate(*n, sigma, *delta);
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
  }
  if (s.hist.empty()) {
    write_histogram_csv(out, histogram);
    err << summary.str() << '\n';
  } else {
    write_atomically(s.hist, [&](std::ostream& o) { write_histogram_csv(o, histogram); });
    out << summary.str() << '\n';
  }
  return kOk;
}

struct BenchArgs {
  InstanceParams params;
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::string> methods{"pm", "min", "pm-pc", "trie", "trie-pc"};
  bool no_timing = false;
  std::size_t max_states = kDefaultMaxStates;
  std::size_t max_memory_mb = kDefaultMaxMemoryMb;
};

int cmd_bench(const BenchArgs& b, std::ostream& out, std::ostream& err) {
  std::vector<Method> methods;
  for (const auto& name : b.methods) {
    auto m = parse_method(name);
    if (!m) throw UsageError("unknown method '" + name + "' (expected pm, min, pm-pc, trie, trie-pc)");
    methods.push_back(*m);
  }
  bool exhausted = false;
  out << "method,states,time_ms,dprime\n";
  for (const std::uint64_t seed : b.seeds) {
    InstanceParams p = b.params;
    p.seed = seed;
    std::shared_ptr<const Dictionary> d;
    try {
      d = std::make_shared<const Dictionary>(generate_instance(p));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    out << "# (" << p.m << ',' << p.n << ',' << p.sigma << ",(" << p.delta_low << ',' << p.delta_high << "),"
        << p.f << ") seed=" << seed << '\n';
    for (const auto& m : methods) {
      try {
        const auto start = std::chrono::steady_clock::now();
        const Automaton a = build_method(d, m.kind, m.pc, b.max_states, b.max_memory_mb);
        const double ms = elapsed_ms(start);
        out << m.name << ',' << a.state_count() << ',' << (b.no_timing ? std::string("-") : format_ms(ms)) << ','
            << count_accepted_strings(a) << '\n';
      } catch (const BudgetExceeded& e) {
        exhausted = true;
        err << m.name << ": " << e.what() << '\n';
        out << m.name << ",-,-,-\n";
      }
      out.flush();
    }
  }
  return exhausted ? kBudget : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Index dictionaries of subset-strings as pseudo-minimal automata", "subsetdfa"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random dictionary");
  add_instance_options(gen_cmd, gen.params);
  gen_cmd->add_option("--seed", gen.params.seed, "random seed")->capture_default_str();
  gen_cmd->add_option("--mode", gen.mode, "standard, delta or wildcard")->capture_default_str();
  gen_cmd->add_option("--delta", gen.delta, "half width of delta-mode ranges");
  gen_cmd->add_option("-k", gen.k, "wild-card positions per string (wildcard mode)");
  gen_cmd->add_option("-o,--out", gen.out, "output path (stdout when omitted)");

  BuildArgs bld;
  auto* build_cmd = app.add_subcommand("build", "build an index from a dictionary file");
  build_cmd->add_option("--in", bld.in, "dictionary file")->required();
  build_cmd->add_option("--kind", bld.kind, "trie, pm or min")->capture_default_str();
  build_cmd->add_flag("--pc", bld.pc, "path-compress leaves");
  build_cmd->add_option("--out", bld.out, "index output path");
  build_cmd->add_option("--max-states", bld.max_states, "state budget")->capture_default_str();
  build_cmd->add_option("--max-memory-mb", bld.max_memory_mb, "approximate memory budget")->capture_default_str();

  QueryArgs qry;
  auto* query_cmd = app.add_subcommand("query", "answer queries against an index");
  query_cmd->add_option("--index", qry.index, "index file")->required();
  query_cmd->add_option("--dict", qry.dict, "dictionary file (needed for path-compressed indexes)");
  query_cmd->add_option("--queries", qry.queries, "file with one query per line");
  query_cmd->add_option("query", qry.words, "a single query: symbols separated by spaces");

  StatsArgs sts;
  auto* stats_cmd = app.add_subcommand("stats", "depth histogram of an index");
  stats_cmd->add_option("--index", sts.index, "index file")->required();
  stats_cmd->add_option("--hist", sts.hist, "CSV output path (stdout when omitted)");
  stats_cmd->add_option("--dict", sts.dict, "dictionary file (supplies n and the mean subset size)");
  stats_cmd->add_option("--n", sts.n, "dictionary size for the alpha estimate");
  stats_cmd->add_option("--sigma", sts.sigma, "alphabet size for the alpha estimate");
  stats_cmd->add_option("--delta", sts.delta, "mean subset size for the alpha estimate");

  BenchArgs bch;
  auto* bench_cmd = app.add_subcommand("bench", "build several automata for generated instances");
  add_instance_options(bench_cmd, bch.params);
  bench_cmd->add_option("--seed", bch.seeds, "one or more seeds")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--methods", bch.methods, "pm, min, pm-pc, trie, trie-pc")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_flag("--no-timing", bch.no_timing, "print '-' instead of build times");
  bench_cmd->add_option("--max-states", bch.max_states, "state budget per build")->capture_default_str();
  bench_cmd->add_option("--max-memory-mb", bch.max_memory_mb, "approximate memory budget per build")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "subsetdfa: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (build_cmd->parsed()) return cmd_build(bld, out);
    if (query_cmd->parsed()) return cmd_query(qry, out);
    if (stats_cmd->parsed()) return cmd_stats(sts, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bch, out, err);
  } catch (const UsageError& e) {
    err << "subsetdfa: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "subsetdfa: " << e.what() << '\n';
    return kFormat;
  } catch (const InvalidDictionary& e) {
    err << "subsetdfa: " << e.what() << '\n';
    return kFormat;
  } catch (const BudgetExceeded& e) {
    err << "subsetdfa: " << e.what() << '\n';
    return kBudget;
  } catch (const std::bad_alloc&) {
    err << "subsetdfa: out of memory\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "subsetdfa: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace subsetdfa::cli
