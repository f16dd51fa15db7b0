#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "connectif/connectif.hpp"
#include "connectif/io.hpp"

namespace connectif::cli {

using io::json;

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Malformed flag values: reported with the offending flag and its grammar.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSetsGrammar = "sets separated by ';', elements by ',' (e.g. \"1,2;2,3\")";
inline constexpr const char* kTreeGrammar = "tree := '.' | '(' tree (',' tree)+ ')'";
inline constexpr const char* kExprGrammar =
    "expr := '.' | 'S(' expr (',' expr)* ')' | 'N(' expr ',' expr (',' expr)* ')'";

namespace detail {

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class Parse>
auto parse_flag(const char* flag, const char* grammar, Parse&& parse) {
  try {
    return parse();
  } catch (const SyntaxError& e) {
    throw UsageError(std::string(flag) + ": " + e.what() + "; grammar: " + grammar);
  } catch (const ArityError& e) {
    throw UsageError(std::string(flag) + ": " + e.what() + "; grammar: " + grammar);
  } catch (const BadArity& e) {
    throw UsageError(std::string(flag) + ": " + e.what() + "; grammar: " + grammar);
  }
}

inline std::vector<Subset> sets_flag(const std::string& text, const GroundSet& ground) {
  return parse_flag("--sets", kSetsGrammar, [&] { return io::parse_sets(text, ground); });
}

inline GroundSet ground_flag(int n) {
  if (n < 1 || n > 64) throw UsageError("--n: expected an integer in 1..64, got " + std::to_string(n));
  return GroundSet(n);
}

}  // namespace detail

/// Runs one command line. Results go to `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite connectivity spaces: enumeration, generic graphs, Brunnian spaces and link expressions",
               "connectif"};
  app.require_subcommand(1);

  int n = 0;
  std::string sets_text;
  std::string input;
  std::string format;
  std::string what;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool stretch = false;
  bool timing = false;

  auto* count = app.add_subcommand("count", "Count structures on {1..n}");
  count->add_option("--n", n, "Number of points")->required();
  count->add_option("--what", what, "Comma-separated statistics among s,c,k,f,t (default: full report)");
  count->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  count->add_flag("--stretch", stretch, "Allow n >= 6 (very long runs)");
  count->add_flag("--timing", timing, "Add elapsed_ms to the report");

  auto* enumerate = app.add_subcommand("enumerate", "Print every structure on {1..n}, one JSON object per line");
  enumerate->add_option("--n", n, "Number of points")->required();
  enumerate->add_option("--format", format, "jsonl or json")->check(CLI::IsMember({"jsonl", "json"}));
  enumerate->add_flag("--stretch", stretch, "Allow n >= 6");

  auto* gen = app.add_subcommand("generate", "Structure generated by a family of parts");
  gen->add_option("--n", n, "Number of points")->required();
  gen->add_option("--sets", sets_text, kSetsGrammar)->required();

  bool axiom = false;
  bool free = false;
  auto* check = app.add_subcommand("check", "Check the closure axiom or freeness of a family");
  auto* axiom_flag = check->add_flag("--axiom", axiom, "Family is a valid structure");
  auto* free_flag = check->add_flag("--free", free, "Family is free");
  axiom_flag->excludes(free_flag);
  free_flag->excludes(axiom_flag);
  check->add_option("--n", n, "Number of points")->required();
  check->add_option("--sets", sets_text, kSetsGrammar)->required();

  auto* graph = app.add_subcommand("generic-graph", "Generic graph of a structure");
  auto* graph_input = graph->add_option("--input", input, "Structure JSON file ('-' for stdin)");
  auto* graph_n = graph->add_option("--n", n, "Number of points");
  auto* graph_sets = graph->add_option("--sets", sets_text, kSetsGrammar);
  graph_input->excludes(graph_n)->excludes(graph_sets);
  graph_n->excludes(graph_input)->needs(graph_sets);
  graph_sets->excludes(graph_input)->needs(graph_n);
  graph->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));

  std::string tree_text;
  auto* brun = app.add_subcommand("brunnian", "Iterated Brunnian space of a tree");
  brun->add_option("--tree", tree_text, kTreeGrammar)->required();

  std::string expr_text;
  std::string expr_file;
  std::string emit = "structure";
  auto* link = app.add_subcommand("link", "Structure or order of a link expression");
  auto* expr_opt = link->add_option("--expr", expr_text, kExprGrammar);
  auto* file_opt = link->add_option("--file", expr_file, "File with one expression per line");
  expr_opt->excludes(file_opt);
  file_opt->excludes(expr_opt);
  link->add_option("--emit", emit, "structure or order")->check(CLI::IsMember({"structure", "order"}));

  auto* real = app.add_subcommand("realize", "Link expression realizing a structure");
  real->add_option("--input", input, "Structure JSON file ('-' for stdin)")->required();

  auto* ord = app.add_subcommand("order", "Order of a structure");
  ord->add_option("--input", input, "Structure JSON file ('-' for stdin)")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*count) {
      const GroundSet ground = detail::ground_flag(n);
      std::vector<std::string> keys;
      for (std::size_t pos = 0; pos <= what.size() && !what.empty();) {
        const std::size_t end = std::min(what.find(',', pos), what.size());
        const std::string key = what.substr(pos, end - pos);
        if (key != "s" && key != "c" && key != "k" && key != "f" && key != "t") {
          throw UsageError("--what: unknown statistic '" + key + "'; expected a comma list of s,c,k,f,t");
        }
        keys.push_back(key);
        pos = end + 1;
      }
      const bool wants_t = std::find(keys.begin(), keys.end(), "t") != keys.end();
      const bool wants_labeled = keys.empty() || keys.size() > static_cast<std::size_t>(wants_t);
      if (n > 8) throw UsageError("--n: enumeration supports at most 8 points");
      if (n >= 6 && !stretch) throw UsageError("--n: n >= 6 runs for hours; pass --stretch to proceed");
      if (wants_t && n > static_cast<int>(kMaxIsomorphismPoints)) {
        throw UsageError("--what t: isomorphism counting supports at most 6 points");
      }

      const auto start = std::chrono::steady_clock::now();
      std::function<void(std::size_t, std::size_t)> heartbeat;
      if (stretch) {
        heartbeat = [&err, start](std::size_t done, std::size_t total) {
          const auto secs =
              std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - start).count();
          err << "progress: " << done << "/" << total << " branches, " << secs << " s\n" << std::flush;
        };
      }
      json report = {{"n", n}};
      if (wants_labeled) {
        const EnumStats st = count_stats(ground, jobs, heartbeat);
        const json full = io::stats_json(st);
        if (keys.empty()) {
          report = full;
        } else {
          for (const auto& key : keys)
            if (key != "t") report[key] = full.at(key);
        }
      }
      if (wants_t) {
        report["t"] = n == static_cast<int>(kMaxIsomorphismPoints)
                          ? count_canonical_structures(ground, jobs, heartbeat)
                          : count_isomorphism_classes(ground, jobs);
      }
      if (timing) {
        report["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      }
      out << report.dump() << "\n";
      return kOk;
    }

    if (*enumerate) {
      const GroundSet ground = detail::ground_flag(n);
      if (n > 8) throw UsageError("--n: enumeration supports at most 8 points");
      if (n >= 6 && !stretch) throw UsageError("--n: n >= 6 produces billions of lines; pass --stretch to proceed");
      const bool as_array = format == "json";
      json all = json::array();
      enumerate_free(ground, [&](const FreeFamily&, const ConnectivityStructure& closure) {
        if (as_array) {
          all.push_back(io::to_json(closure));
        } else {
          out << io::to_json(closure).dump() << "\n";
        }
      });
      if (as_array) out << all.dump() << "\n";
      return kOk;
    }

    if (*gen) {
      const GroundSet ground = detail::ground_flag(n);
      const auto sets = detail::sets_flag(sets_text, ground);
      out << io::to_json(generate(ground, sets)).dump() << "\n";
      return kOk;
    }

    if (*check) {
      if (!axiom && !free) throw UsageError("check: pass exactly one of --axiom or --free");
      const GroundSet ground = detail::ground_flag(n);
      const auto sets = detail::sets_flag(sets_text, ground);
      if (axiom) {
        try {
          const auto s = make_structure(ground, sets);
          out << json{{"check", "axiom"}, {"ok", true}, {"structure", io::to_json(s)}}.dump() << "\n";
          return kOk;
        } catch (const AxiomViolation& e) {
          const Subset a(e.first());
          const Subset b(e.second());
          const std::string reason = "union of " + a.to_string() + " and " + b.to_string() + " missing";
          out << json{{"check", "axiom"}, {"ok", false}, {"reason", reason},
                      {"witness", io::sets_json({a, b})}}.dump()
              << "\n";
          err << "axiom violation: " << reason << "\n";
          return kDomainError;
        }
      }
      for (Subset m : sets) {
        if (m.size() < 2) throw SingletonMember("member " + m.to_string() + " has fewer than two points");
      }
      const auto closure = generate(ground, sets);
      std::vector<Subset> members = sets;
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      for (Subset m : members) {
        if (auto w = reduction_witness(closure, m)) {
          const std::string reason = "member " + m.to_string() + " reducible";
          out << json{{"check", "free"}, {"ok", false}, {"reason", reason},
                      {"witness", io::sets_json({w->first, w->second})}}.dump()
              << "\n";
          err << "not free: " << reason << "\n";
          return kDomainError;
        }
      }
      out << json{{"check", "free"}, {"ok", true}}.dump() << "\n";
      return kOk;
    }

    if (*graph) {
      io::LabeledStructure ls{discrete(1), std::nullopt};
      if (!input.empty()) {
        ls = io::parse_structure(detail::read_input(input));
      } else if (n != 0) {
        const GroundSet ground = detail::ground_flag(n);
        ls.structure = generate(ground, detail::sets_flag(sets_text, ground));
      } else {
        throw UsageError("generic-graph: pass --input FILE or --n K --sets \"...\"");
      }
      const GenericGraph g = generic_graph(ls.structure);
      if (format == "json") {
        out << io::to_json(g).dump() << "\n";
      } else {
        out << io::to_dot(g, ls.labels);
      }
      return kOk;
    }

    if (*brun) {
      const BrunnianTree tree = detail::parse_flag("--tree", kTreeGrammar, [&] { return parse_tree(tree_text); });
      out << io::to_json(iterated_brunnian(tree)).dump() << "\n";
      return kOk;
    }

    if (*link) {
      std::vector<std::string> lines;
      if (!expr_file.empty()) {
        std::istringstream in(detail::read_input(expr_file));
        for (std::string line; std::getline(in, line);) {
          if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
        }
      } else if (!expr_text.empty()) {
        lines.push_back(expr_text);
      } else {
        throw UsageError("link: pass --expr \"...\" or --file FILE");
      }
      for (const auto& line : lines) {
        const LinkExpression e = detail::parse_flag("--expr", kExprGrammar, [&] { return parse_link_expr(line); });
        if (emit == "order") {
          out << json{{"order", link_order(e)}}.dump() << "\n";
        } else {
          out << io::to_json(link_structure(e)).dump() << "\n";
        }
      }
      return kOk;
    }

    if (*real) {
      const auto ls = io::parse_structure(detail::read_input(input));
      const Realization r = realize(ls.structure);
      if (const auto* e = std::get_if<LinkExpression>(&r)) {
        out << json{{"realizable", true}, {"expr", e->to_string()}, {"leaves", e->leaves()}}.dump() << "\n";
        return kOk;
      }
      const auto& nr = std::get<NotRealizable>(r);
      json report = {{"realizable", false}, {"message", nr.message}};
      if (nr.reason == NotRealizable::Reason::Overlap) {
        report["reason"] = "overlap";
        report["witness"] = io::sets_json({nr.first, nr.second});
      } else {
        report["reason"] = "mismatch";
      }
      out << report.dump() << "\n";
      err << "not realizable: " << nr.message << "\n";
      return kDomainError;
    }

    if (*ord) {
      const auto ls = io::parse_structure(detail::read_input(input));
      out << json{{"order", space_order(ls.structure)}}.dump() << "\n";
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace connectif::cli
