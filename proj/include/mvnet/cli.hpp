#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvnet/checks.hpp"
#include "mvnet/conversion.hpp"
#include "mvnet/core.hpp"
#include "mvnet/dynamics.hpp"
#include "mvnet/interaction.hpp"
#include "mvnet/io.hpp"
#include "mvnet/mirror.hpp"

namespace mvnet {
namespace cli {

struct InputOptions {
  std::string example_id;
  std::string file;
  std::string convert;  // comma-separated stages
  std::uint64_t budget = kDefaultStateBudget;
};

// Map plus the conversion produced by the last pipeline stage, when any.
struct AnalysisTarget {
  MultivaluedMap map;
  std::optional<BooleanConversion> conversion;

  bool boolean() const { return conversion.has_value(); }

  const MultiSpace& display_space() const {
    return conversion ? conversion->bit_space() : map.space();
  }
};

namespace detail {

inline void add_input_options(CLI::App* cmd, InputOptions* opts, bool with_convert = true) {
  auto* example = cmd->add_option("--example", opts->example_id, "built-in example id");
  auto* file = cmd->add_option("--file", opts->file, "network definition file ('-' for stdin)");
  example->excludes(file);
  if (with_convert)
    cmd->add_option("--convert", opts->convert,
                    "comma-separated pipeline of stepwise, asymptotic, partial, psi, binarise");
  cmd->add_option("--budget", opts->budget, "state enumeration budget");
}

inline MultivaluedMap load_map(const InputOptions& opts, std::istream& in) {
  if (!opts.example_id.empty()) return example(opts.example_id).map;
  if (opts.file.empty()) throw Error("no input: pass --example or --file");
  std::string text;
  if (opts.file == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream stream(opts.file);
    if (!stream) throw Error("cannot open file: " + opts.file);
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    text = buffer.str();
  }
  return parse(text, opts.budget).to_map();
}

inline std::vector<std::string> split_stages(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      if (!current.empty()) out.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

inline AnalysisTarget apply_stages(MultivaluedMap f, const InputOptions& opts) {
  AnalysisTarget target{std::move(f), std::nullopt};
  for (const std::string& stage : split_stages(opts.convert)) {
    if (target.conversion)
      throw Error("conversion stage '" + stage + "' cannot follow a Boolean stage");
    if (stage == "stepwise")
      target.map = stepwise(target.map);
    else if (stage == "asymptotic")
      target.map = asymptotic(target.map);
    else if (stage == "partial")
      target.conversion = partial_conversion(target.map, opts.budget);
    else if (stage == "psi")
      target.conversion = extend_via_psi(target.map, opts.budget);
    else if (stage == "binarise")
      target.conversion = binarise(target.map, opts.budget);
    else
      throw Error("unknown conversion stage '" + stage + "'");
  }
  return target;
}

inline MultiState parse_state_arg(const std::string& text, const MultiSpace& sp) {
  MultiState x;
  if (text.find(',') != std::string::npos) {
    std::string current;
    for (char c : text + ",") {
      if (c == ',') {
        if (current.empty()) throw Error("bad state '" + text + "'");
        x.push_back(std::stoi(current));
        current.clear();
      } else {
        current += c;
      }
    }
  } else {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad state '" + text + "'");
      x.push_back(c - '0');
    }
  }
  rank(sp, x);  // validates arity and ranges
  return x;
}

inline std::string join_states(const MultiSpace& sp, const std::vector<StateRank>& states) {
  std::string out;
  for (StateRank s : states) {
    if (!out.empty()) out += ",";
    out += state_label(sp, s);
  }
  return out;
}

inline void print_graph(std::ostream& out, const SignedDigraph& g) {
  out << "vertices=" << g.vertex_count() << "\n";
  out << "edges=" << g.edge_count() << "\n";
  for (const SignedEdge& e : g.edges())
    out << "edge=" << g.vertex_name(e.from) << "->" << g.vertex_name(e.to)
        << " sign=" << (e.sign > 0 ? "+" : "-") << "\n";
}

inline AsyncDynamics dynamics_of(const AnalysisTarget& target) {
  if (!target.conversion) return build_async(target.map);
  if (target.conversion->total()) return build_async(*target.conversion);
  return build_async_admissible(*target.conversion);
}

}  // namespace detail

// Entry point shared by the binary and the tests. Exit codes: 0 on
// success/PASS, 1 on FAIL verdicts, 2 on usage or input errors.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"multivalued network analysis and Boolean conversion"};
  app.require_subcommand(1);

  InputOptions opts;

  auto* cmd_convert = app.add_subcommand("convert", "print a converted transition table");
  detail::add_input_options(cmd_convert, &opts);

  auto* cmd_attractors = app.add_subcommand("attractors", "attractors of the asynchronous dynamics");
  detail::add_input_options(cmd_attractors, &opts);

  auto* cmd_fixed = app.add_subcommand("fixed-points", "states mapped to themselves");
  detail::add_input_options(cmd_fixed, &opts);

  auto* cmd_igraph = app.add_subcommand("igraph", "signed interaction graphs");
  detail::add_input_options(cmd_igraph, &opts);
  std::string at_state;
  bool global = false;
  bool richard = false;
  std::vector<std::string> nonusual;
  cmd_igraph->add_option("--at", at_state, "state for a local graph");
  cmd_igraph->add_flag("--global", global, "global interaction graph");
  cmd_igraph->add_option("--nonusual", nonusual, "two states x y for the direction-restricted graph")
      ->expected(2);
  cmd_igraph->add_flag("--richard", richard, "single-step-update graph (needs --at)");

  auto* cmd_cycles = app.add_subcommand("cycles", "elementary cycles of interaction graphs");
  detail::add_input_options(cmd_cycles, &opts);
  std::string sign = "any";
  bool scan_local = false;
  cmd_cycles->add_option("--sign", sign, "any|pos|neg")
      ->check(CLI::IsMember({"any", "pos", "neg"}));
  cmd_cycles->add_flag("--scan-local", scan_local, "scan every local graph");

  auto* cmd_mirror = app.add_subcommand("mirror", "mirror pairs and the two-cycle statement");
  detail::add_input_options(cmd_mirror, &opts, /*with_convert=*/false);
  bool conjecture = false;
  cmd_mirror->add_flag("--conjecture", conjecture,
                       "also scan for a mirror pair whose own states carry cycles");

  auto* cmd_check = app.add_subcommand("check", "verify a named statement on an instance");
  std::string statement;
  bool use_given = false;
  cmd_check->add_option("statement", statement, "statement id (or 'all')")->required();
  detail::add_input_options(cmd_check, &opts, /*with_convert=*/false);
  cmd_check->add_flag("--use-given-conversion", use_given,
                      "verify against the instance's explicit conversion table");

  auto* cmd_example = app.add_subcommand("example", "print a built-in example as a table document");
  std::string example_arg;
  cmd_example->add_option("id", example_arg, "example id")->required();

  auto* cmd_dot = app.add_subcommand("dot", "Graphviz export");
  detail::add_input_options(cmd_dot, &opts);
  std::string what = "async";
  std::string dot_at;
  cmd_dot->add_option("--what", what, "async|admissible|global|local")
      ->check(CLI::IsMember({"async", "admissible", "global", "local"}));
  cmd_dot->add_option("--at", dot_at, "state for --what local");

  try {
    std::reverse(args.begin(), args.end());  // CLI11 takes the vector reversed
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (cmd_example->parsed()) {
      out << render_table(example(example_arg).map);
      return 0;
    }

    if (cmd_check->parsed()) {
      const ExampleInstance inst = opts.example_id.empty()
                                       ? ExampleInstance{"file", "", detail::load_map(opts, in),
                                                         std::nullopt, {}}
                                       : example(opts.example_id);
      const BooleanConversion* given = nullptr;
      if (use_given) {
        if (!inst.given_conversion) throw Error("instance has no explicit conversion table");
        given = &*inst.given_conversion;
      }
      StatementVerifier verifier(inst.map, given);
      std::vector<std::string> ids;
      if (statement == "all") {
        for (const auto& [id, description] : statement_ids()) ids.push_back(id);
      } else {
        ids.push_back(statement);
      }
      bool failed = false;
      for (const std::string& id : ids) {
        const Verdict v = verifier.verify(id);
        out << render_verdict(v, inst.id);
        failed = failed || v.failed();
      }
      return failed ? 1 : 0;
    }

    AnalysisTarget target = detail::apply_stages(detail::load_map(opts, in), opts);

    if (cmd_convert->parsed()) {
      if (target.conversion)
        out << render_table(*target.conversion);
      else
        out << render_table(target.map);
      return 0;
    }

    if (cmd_attractors->parsed()) {
      const AsyncDynamics ad = detail::dynamics_of(target);
      const std::vector<Attractor> atts = attractors(ad);
      out << "count=" << atts.size() << "\n";
      for (std::size_t k = 0; k < atts.size(); ++k) {
        out << "attractor=" << (k + 1)
            << " kind=" << (atts[k].kind == AttractorKind::kFixedPoint ? "fixed_point" : "cyclic")
            << " size=" << atts[k].states.size()
            << " states=" << detail::join_states(ad.space(), atts[k].states) << "\n";
      }
      return 0;
    }

    if (cmd_fixed->parsed()) {
      const std::vector<StateRank> fixed =
          target.conversion ? fixed_points(*target.conversion) : fixed_points(target.map);
      out << "count=" << fixed.size() << "\n";
      for (StateRank s : fixed) out << "state=" << state_label(target.display_space(), s) << "\n";
      return 0;
    }

    if (cmd_igraph->parsed()) {
      SignedDigraph g(0);
      if (!nonusual.empty()) {
        if (target.conversion) throw Error("--nonusual expects a multivalued map");
        g = nonusual_graph(target.map, detail::parse_state_arg(nonusual[0], target.map.space()),
                           detail::parse_state_arg(nonusual[1], target.map.space()));
      } else if (richard) {
        if (at_state.empty()) throw Error("--richard needs --at STATE");
        if (target.conversion) throw Error("--richard expects a multivalued map");
        g = richard_graph(target.map, detail::parse_state_arg(at_state, target.map.space()));
      } else if (!at_state.empty()) {
        if (target.conversion)
          g = local_graph(*target.conversion,
                          detail::parse_state_arg(at_state, target.conversion->bit_space()));
        else
          g = local_graph(target.map, detail::parse_state_arg(at_state, target.map.space()));
      } else if (global) {
        g = target.conversion ? global_graph(*target.conversion) : global_graph(target.map);
      } else {
        throw Error("igraph needs one of --at, --global, --nonusual, --richard");
      }
      detail::print_graph(out, g);
      return 0;
    }

    if (cmd_cycles->parsed()) {
      const SignFilter filter = sign == "any"   ? SignFilter::kAny
                                : sign == "pos" ? SignFilter::kPositive
                                                : SignFilter::kNegative;
      if (scan_local) {
        const auto found = target.conversion ? scan_local_cycles(*target.conversion, filter)
                                             : scan_local_cycles(target.map, filter);
        out << "count=" << found.size() << "\n";
        // Local graphs share one vertex naming per target.
        for (const auto& [state, cycle] : found) {
          SignedDigraph g = target.conversion
                                ? local_graph_rank(*target.conversion, state)
                                : local_graph_rank(target.map, state);
          out << "state=" << state_label(target.display_space(), state)
              << " cycle=" << cycle_label(g, cycle) << " sign=" << (cycle.sign > 0 ? "+" : "-")
              << "\n";
        }
      } else {
        const SignedDigraph g =
            target.conversion ? global_graph(*target.conversion) : global_graph(target.map);
        std::vector<SignedCycle> cycles;
        for (const SignedCycle& c : enumerate_cycles(g))
          if (matches(filter, c.sign)) cycles.push_back(c);
        out << "count=" << cycles.size() << "\n";
        for (const SignedCycle& c : cycles)
          out << "cycle=" << cycle_label(g, c) << " sign=" << (c.sign > 0 ? "+" : "-") << "\n";
      }
      return 0;
    }

    if (cmd_mirror->parsed()) {
      const std::vector<MirrorReport> pairs = find_mirror_pairs(target.map);
      const MultiSpace& sp = target.map.space();
      out << "count=" << pairs.size() << "\n";
      for (const MirrorReport& r : pairs) {
        std::string chains;
        for (std::size_t k = 0; k < r.differing.size(); ++k) {
          if (k) chains += ",";
          chains += std::to_string(r.differing[k]) + (r.orientation[k] > 0 ? "+" : "-");
        }
        out << "pair=" << state_label(sp, rank(sp, r.x)) << "/" << state_label(sp, rank(sp, r.y))
            << " chains=" << chains << "\n";
      }
      const MirrorTheoremResult theorem = check_mirror_theorem(target.map);
      switch (theorem.verdict) {
        case MirrorVerdict::kVacuous:
          out << "theorem=VACUOUS\n";
          break;
        case MirrorVerdict::kPass:
          out << "theorem=PASS\n";
          out << "cyclic_states=" << detail::join_states(sp, theorem.cyclic_states) << "\n";
          break;
        case MirrorVerdict::kFailure:
          out << "theorem=FAIL\n";
          break;
      }
      if (conjecture) {
        const MirrorConjectureScan scan = scan_mirror_conjecture(target.map);
        if (!scan.has_mirror_pair)
          out << "conjecture=VACUOUS\n";
        else if (scan.witness_pair)
          out << "conjecture_witness=" << state_label(sp, rank(sp, scan.witness_pair->x)) << "/"
              << state_label(sp, rank(sp, scan.witness_pair->y)) << "\n";
        else
          out << "conjecture_candidate=no mirror pair carries cycles at both states\n";
      }
      return theorem.verdict == MirrorVerdict::kFailure ? 1 : 0;
    }

    if (cmd_dot->parsed()) {
      if (what == "async") {
        out << export_dot(detail::dynamics_of(target));
      } else if (what == "admissible") {
        const BooleanConversion partial = target.conversion && !target.conversion->total()
                                              ? *target.conversion
                                              : partial_conversion(target.map, opts.budget);
        out << export_dot(build_async_admissible(partial));
      } else if (what == "global") {
        out << export_dot(target.conversion ? global_graph(*target.conversion)
                                            : global_graph(target.map));
      } else {
        if (dot_at.empty()) throw Error("--what local needs --at STATE");
        out << export_dot(target.conversion
                              ? local_graph(*target.conversion,
                                            detail::parse_state_arg(dot_at, target.conversion->bit_space()))
                              : local_graph(target.map,
                                            detail::parse_state_arg(dot_at, target.map.space())));
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace cli
}  // namespace mvnet
