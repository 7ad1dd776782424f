#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvnet/conversion.hpp"
#include "mvnet/core.hpp"
#include "mvnet/dynamics.hpp"
#include "mvnet/interaction.hpp"
#include "mvnet/mirror.hpp"

namespace mvnet {

struct ExampleInstance;

// One machine-checkable expectation attached to a registry instance. The
// anchor names the instance-local figure or table row the expectation was
// read from, so a transcription error is traceable to a single source row.
struct ExampleFact {
  std::string anchor;
  std::string description;
  std::function<bool(const ExampleInstance&, std::string* note)> check;
};

// Registry entry: a concrete instance transcribed row by row, an optional
// explicit conversion table, and its expected facts. Facts re-derive from
// the raw tables every time they are checked.
struct ExampleInstance {
  std::string id;
  std::string title;
  MultivaluedMap map;
  std::optional<BooleanConversion> given_conversion;
  std::vector<ExampleFact> facts;
};

struct FactResult {
  std::string anchor;
  std::string description;
  bool ok = false;
  std::string note;
};

inline std::vector<FactResult> check_example_facts(const ExampleInstance& inst) {
  std::vector<FactResult> out;
  for (const ExampleFact& fact : inst.facts) {
    FactResult r;
    r.anchor = fact.anchor;
    r.description = fact.description;
    r.ok = fact.check(inst, &r.note);
    out.push_back(std::move(r));
  }
  return out;
}

namespace detail {

inline MultivaluedMap map_from_rows(
    const MultiSpace& sp, const std::vector<std::pair<MultiState, MultiState>>& rows) {
  std::vector<StateRank> table(sp.state_count(), BooleanConversion::kUndefined);
  for (const auto& [from, to] : rows) table[rank(sp, from)] = rank(sp, to);
  for (StateRank s = 0; s < sp.state_count(); ++s)
    if (table[s] == BooleanConversion::kUndefined) throw Error("map_from_rows: missing row");
  return MultivaluedMap(sp, std::move(table));
}

inline SignedDigraph graph_from_edges(int vertex_count,
                                      const std::vector<SignedEdge>& edges) {
  SignedDigraph g(vertex_count);
  for (const SignedEdge& e : edges) g.add_edge(e.from, e.to, e.sign);
  return g;
}

inline bool note_fail(std::string* note, std::string text) {
  if (note) *note = std::move(text);
  return false;
}

// Strips variation metadata so graphs from different constructions compare
// by their signed edge sets alone.
inline bool same_edges(const SignedDigraph& a, const SignedDigraph& b) {
  if (a.edge_count() != b.edge_count()) return false;
  for (const SignedEdge& e : a.edges())
    if (!b.has_edge(e.from, e.to, e.sign)) return false;
  return true;
}

inline std::vector<std::pair<StateRank, StateRank>> async_edges(const AsyncDynamics& ad) {
  std::vector<std::pair<StateRank, StateRank>> out;
  for (int v = 0; v < ad.size(); ++v)
    for (int w : ad.successors(v)) out.emplace_back(ad.state_at(v), ad.state_at(w));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Registry instances
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = {
      "sec2_example",  "fig1",        "ex1_pos_not_preserved", "ex2_not_stepwise",
      "richard_stepwise", "two_minus_x", "fig5_asymptotic"};
  return ids;
}

inline ExampleInstance example(const std::string& id);
inline const SignedDigraph& expected_headline_global_graph();

namespace detail {

inline ExampleInstance make_sec2_example() {
  MultiSpace sp({2, 2}, {"a", "b"});
  auto f = MultivaluedMap::from_function(sp, [](const MultiState& x) -> MultiState {
    if (x == MultiState{0, 1} || x == MultiState{0, 2}) return {2, 2};
    return {1, 2};
  });
  ExampleInstance inst{"sec2_example",
                       "two-component map whose stepwise version changes the interaction graph",
                       std::move(f),
                       std::nullopt,
                       {}};
  inst.facts.push_back(
      {"sec2.graph_f", "global graph of f contains the negative loop on 1 and a positive edge 2->1",
       [](const ExampleInstance& e, std::string* note) {
         const SignedDigraph g = global_graph(e.map);
         if (!g.has_edge(1, 1, -1)) return detail::note_fail(note, "missing 1->1 negative loop");
         if (!g.has_edge(2, 1, 1)) return detail::note_fail(note, "missing positive edge 2->1");
         return true;
       }});
  inst.facts.push_back(
      {"sec2.graph_stepwise", "global graph of the stepwise version is exactly the positive loop on 2",
       [](const ExampleInstance& e, std::string* note) {
         const SignedDigraph g = global_graph(stepwise(e.map));
         const SignedDigraph expected = detail::graph_from_edges(2, {{2, 2, 1, 0}});
         if (!detail::same_edges(g, expected)) return detail::note_fail(note, "edge set differs");
         return true;
       }});
  inst.facts.push_back(
      {"sec2.stepwise_rows", "stepwise images of the bottom row are all (1,1)",
       [](const ExampleInstance& e, std::string* note) {
         const MultivaluedMap st = stepwise(e.map);
         for (int a = 0; a <= 2; ++a)
           if (st.image_state({a, 0}) != MultiState{1, 1})
             return detail::note_fail(note, "row (" + std::to_string(a) + ",0)");
         return st.image_state({0, 1}) == MultiState{1, 2};
       }});
  return inst;
}

inline ExampleInstance make_fig1() {
  MultiSpace sp({2, 1}, {"a", "b"});
  auto f = detail::map_from_rows(sp, {{{0, 0}, {1, 0}},
                                      {{0, 1}, {1, 0}},
                                      {{1, 0}, {1, 1}},
                                      {{1, 1}, {2, 1}},
                                      {{2, 0}, {1, 1}},
                                      {{2, 1}, {2, 1}}});
  // Explicit conversion table on B^3, bit order (1,1)(1,2)(2,1).
  std::vector<StateRank> conv(8);
  conv[0b000] = 0b100;
  conv[0b001] = 0b100;
  conv[0b010] = 0b100;
  conv[0b011] = 0b100;
  conv[0b100] = 0b101;
  conv[0b101] = 0b111;
  conv[0b110] = 0b101;
  conv[0b111] = 0b111;
  BooleanConversion F(sp, ConversionDomain::kTotal, std::move(conv));
  ExampleInstance inst{"fig1",
                       "stepwise map with a local positive cycle and a hand-built compatible "
                       "conversion whose interaction graph is acyclic",
                       std::move(f),
                       std::move(F),
                       {}};
  inst.facts.push_back({"fig1a.row11", "f(1,1) = (2,1)",
                        [](const ExampleInstance& e, std::string*) {
                          return e.map.image_state({1, 1}) == MultiState{2, 1};
                        }});
  inst.facts.push_back(
      {"fig1a.graph", "global graph of f is exactly {1->1 +, 1->2 +, 2->1 +}",
       [](const ExampleInstance& e, std::string* note) {
         const SignedDigraph expected =
             detail::graph_from_edges(2, {{1, 1, 1, 0}, {1, 2, 1, 0}, {2, 1, 1, 0}});
         if (!detail::same_edges(global_graph(e.map), expected))
           return detail::note_fail(note, "edge set differs");
         return true;
       }});
  inst.facts.push_back({"fig1a.local_cycle", "G_f(1,0) carries the positive two-cycle 1->2->1",
                        [](const ExampleInstance& e, std::string* note) {
                          const SignedDigraph g = local_graph(e.map, {1, 0});
                          if (!g.has_edge(1, 2, 1) || !g.has_edge(2, 1, 1))
                            return detail::note_fail(note, "missing edge of the two-cycle");
                          return true;
                        }});
  inst.facts.push_back({"fig1b.rows", "conversion table rows 000->100 and 111->111",
                        [](const ExampleInstance& e, std::string*) {
                          return e.given_conversion->image(0b000) == 0b100 &&
                                 e.given_conversion->image(0b111) == 0b111;
                        }});
  inst.facts.push_back({"fig1b.compatible", "the explicit table is a compatible conversion of f",
                        [](const ExampleInstance& e, std::string*) {
                          return is_compatible(*e.given_conversion, e.map);
                        }});
  inst.facts.push_back({"fig1b.acyclic", "global graph of the explicit conversion has no cycle",
                        [](const ExampleInstance& e, std::string*) {
                          return !has_cycle(global_graph(*e.given_conversion));
                        }});
  return inst;
}

inline ExampleInstance make_ex1() {
  MultiSpace sp({1, 2, 1}, {"a", "b", "c"});
  auto f = MultivaluedMap::from_function(sp, [](const MultiState& x) -> MultiState {
    if (x == MultiState{0, 2, 0} || x == MultiState{1, 2, 0}) return {0, 1, 0};
    if (x == MultiState{0, 2, 1} || x == MultiState{1, 1, 0}) return {1, 1, 0};
    if (x == MultiState{1, 0, 0} || x == MultiState{1, 0, 1}) return {1, 1, 1};
    if (x == MultiState{1, 1, 1} || x == MultiState{1, 2, 1}) return {1, 2, 0};
    return {1, 0, 0};
  });
  ExampleInstance inst{"ex1_pos_not_preserved",
                       "positive cycles of the extension can come from non-elementary closed "
                       "walks of the source map",
                       std::move(f),
                       std::nullopt,
                       {}};
  inst.facts.push_back(
      {"ex1.local110", "G_f(1,1,0) is exactly the two negative two-cycles through vertex 2",
       [](const ExampleInstance& e, std::string* note) {
         const SignedDigraph expected = detail::graph_from_edges(
             3, {{1, 2, 1, 0}, {2, 1, -1, 0}, {2, 3, -1, 0}, {3, 2, 1, 0}});
         if (!detail::same_edges(local_graph(e.map, {1, 1, 0}), expected))
           return detail::note_fail(note, "edge set differs");
         return true;
       }});
  inst.facts.push_back(
      {"ex1.no_multi_pos", "no local graph of f has a positive cycle through more than one vertex",
       [](const ExampleInstance& e, std::string* note) {
         for (const auto& [state, cycle] : scan_local_cycles(e.map, SignFilter::kPositive))
           if (cycle.vertices.size() > 1)
             return detail::note_fail(note, "state " + state_label(e.map.space(), state));
         return true;
       }});
  inst.facts.push_back(
      {"ex1.gF1100", "G_F(1,1,0,0) is one positive cycle through all four variables",
       [](const ExampleInstance& e, std::string* note) {
         const BooleanConversion F = extend_via_psi(e.map);
         const auto cycles = enumerate_cycles(local_graph_rank(F, 0b1100));
         if (cycles.size() != 1) return detail::note_fail(note, "expected exactly one cycle");
         return cycles[0].vertices.size() == 4 && cycles[0].sign == 1;
       }});
  inst.facts.push_back(
      {"ex1.gF1010", "G_F(1,0,1,0) contains two negative cycles",
       [](const ExampleInstance& e, std::string* note) {
         const BooleanConversion F = extend_via_psi(e.map);
         int negative = 0;
         for (const SignedCycle& c : enumerate_cycles(local_graph_rank(F, 0b1010)))
           if (c.sign < 0) ++negative;
         if (negative != 2) return detail::note_fail(note, "found " + std::to_string(negative));
         return true;
       }});
  return inst;
}

inline ExampleInstance make_ex2() {
  MultiSpace sp({2, 2}, {"a", "b"});
  auto f = MultivaluedMap::from_function(sp, [](const MultiState& x) -> MultiState {
    if (x == MultiState{1, 1}) return {1, 2};
    if (x == MultiState{1, 2}) return {2, 0};
    if (x == MultiState{2, 2}) return {0, 2};
    return {0, 0};
  });
  ExampleInstance inst{"ex2_not_stepwise",
                       "non-stepwise map whose extension loses an attractor",
                       std::move(f),
                       std::nullopt,
                       {}};
  inst.facts.push_back(
      {"ex2.attractors", "attractors of f are {(0,0)} and {(1,1),(1,2),(2,2)}",
       [](const ExampleInstance& e, std::string* note) {
         const auto atts = attractors(build_async(e.map));
         if (atts.size() != 2) return detail::note_fail(note, "count " + std::to_string(atts.size()));
         const MultiSpace& sp2 = e.map.space();
         const std::vector<StateRank> fixed = {rank(sp2, {0, 0})};
         const std::vector<StateRank> cyclic = {rank(sp2, {1, 1}), rank(sp2, {1, 2}),
                                                rank(sp2, {2, 2})};
         return atts[0].states == fixed && atts[1].states == cyclic;
       }});
  inst.facts.push_back(
      {"ex2.conversion_attractor", "the extension has the single attractor {0000}",
       [](const ExampleInstance& e, std::string*) {
         const auto atts = attractors(build_async(extend_via_psi(e.map)));
         return atts.size() == 1 && atts[0].states == std::vector<StateRank>{0};
       }});
  inst.facts.push_back({"ex2.not_stepwise", "f is not stepwise",
                        [](const ExampleInstance& e, std::string*) { return !is_stepwise(e.map); }});
  inst.facts.push_back(
      {"ex2.escape", "the admissible region is not a trap set of the extension",
       [](const ExampleInstance& e, std::string*) {
         return !is_compatible(extend_via_psi(e.map), e.map);
       }});
  inst.facts.push_back(
      {"ex2.local_pos", "some local graph of the extension has a positive cycle",
       [](const ExampleInstance& e, std::string*) {
         return !scan_local_cycles(extend_via_psi(e.map), SignFilter::kPositive).empty();
       }});
  return inst;
}

inline ExampleInstance make_richard() {
  MultiSpace sp({3, 3}, {"a", "b"});
  auto f = detail::map_from_rows(
      sp, {{{0, 0}, {0, 1}}, {{0, 1}, {0, 2}}, {{0, 2}, {0, 3}}, {{0, 3}, {1, 3}},
           {{1, 0}, {0, 0}}, {{1, 1}, {0, 0}}, {{1, 2}, {0, 3}}, {{1, 3}, {2, 3}},
           {{2, 0}, {1, 0}}, {{2, 1}, {3, 0}}, {{2, 2}, {3, 3}}, {{2, 3}, {3, 3}},
           {{3, 0}, {2, 0}}, {{3, 1}, {3, 0}}, {{3, 2}, {3, 1}}, {{3, 3}, {3, 2}}});
  ExampleInstance inst{"richard_stepwise",
                       "stepwise two-component map on {0..3}^2 with a single attractive cycle "
                       "and no negative local cycles",
                       std::move(f),
                       std::nullopt,
                       {}};
  inst.facts.push_back({"fig2a.rows", "spot rows of the transition table",
                        [](const ExampleInstance& e, std::string*) {
                          return e.map.image_state({0, 0}) == MultiState{0, 1} &&
                                 e.map.image_state({1, 1}) == MultiState{0, 0} &&
                                 e.map.image_state({2, 2}) == MultiState{3, 3} &&
                                 e.map.image_state({3, 3}) == MultiState{3, 2};
                        }});
  inst.facts.push_back({"fig2a.stepwise", "the table is its own stepwise version",
                        [](const ExampleInstance& e, std::string*) { return is_stepwise(e.map); }});
  inst.facts.push_back(
      {"fig2b.locals", "the sixteen local graphs match the six tabulated patterns",
       [](const ExampleInstance& e, std::string* note) {
         const SignedDigraph gA = detail::graph_from_edges(
             2, {{1, 1, 1, 0}, {1, 2, -1, 0}, {2, 2, 1, 0}});  // (1,1),(2,2)
         const SignedDigraph gB = detail::graph_from_edges(
             2, {{1, 1, 1, 0}, {2, 1, 1, 0}, {2, 2, 1, 0}});  // (1,2),(2,1)
         const SignedDigraph gC = detail::graph_from_edges(2, {{1, 1, 1, 0}, {1, 2, -1, 0}});
         const SignedDigraph gD = detail::graph_from_edges(2, {{2, 1, 1, 0}, {2, 2, 1, 0}});
         const SignedDigraph gE = detail::graph_from_edges(2, {{1, 2, -1, 0}, {2, 2, 1, 0}});
         const SignedDigraph gF = detail::graph_from_edges(2, {{1, 1, 1, 0}, {2, 1, 1, 0}});
         const std::vector<std::pair<MultiState, const SignedDigraph*>> rows = {
             {{1, 1}, &gA}, {{2, 2}, &gA}, {{1, 2}, &gB}, {{2, 1}, &gB},
             {{1, 0}, &gC}, {{2, 3}, &gC}, {{0, 2}, &gD}, {{3, 1}, &gD},
             {{0, 0}, &gE}, {{0, 1}, &gE}, {{3, 2}, &gE}, {{3, 3}, &gE},
             {{0, 3}, &gF}, {{1, 3}, &gF}, {{2, 0}, &gF}, {{3, 0}, &gF}};
         for (const auto& [state, expected] : rows)
           if (!detail::same_edges(local_graph(e.map, state), *expected))
             return detail::note_fail(note, "state (" + std::to_string(state[0]) + "," +
                                                std::to_string(state[1]) + ")");
         return true;
       }});
  inst.facts.push_back(
      {"fig3b.global", "global graph of the extension matches the expected edge/sign multiset",
       [](const ExampleInstance& e, std::string* note) {
         if (!detail::same_edges(global_graph(extend_via_psi(e.map)),
                                 expected_headline_global_graph()))
           return detail::note_fail(note, "edge multiset differs");
         return true;
       }});
  inst.facts.push_back(
      {"sec5.no_fixed_points", "the extension has no fixed point",
       [](const ExampleInstance& e, std::string*) {
         return fixed_points(extend_via_psi(e.map)).empty();
       }});
  inst.facts.push_back(
      {"sec5.no_negative_local", "no negative cycle in any local graph of the extension",
       [](const ExampleInstance& e, std::string*) {
         return scan_local_cycles(extend_via_psi(e.map), SignFilter::kNegative).empty();
       }});
  return inst;
}

inline ExampleInstance make_two_minus_x() {
  MultiSpace sp({2}, {"a"});
  auto f = MultivaluedMap::from_function(
      sp, [](const MultiState& x) -> MultiState { return {2 - x[0]}; });
  ExampleInstance inst{"two_minus_x", "one-component involution f(x) = 2 - x",
                       std::move(f), std::nullopt, {}};
  inst.facts.push_back({"sec7.value", "f(1) = 1",
                        [](const ExampleInstance& e, std::string*) {
                          return e.map.image_state({1}) == MultiState{1};
                        }});
  inst.facts.push_back(
      {"fig4b.dynamics", "asynchronous graph of the stepwise extension matches the figure",
       [](const ExampleInstance& e, std::string* note) {
         const auto edges = detail::async_edges(build_async(extend_via_psi(stepwise(e.map))));
         const std::vector<std::pair<StateRank, StateRank>> expected = {
             {0b00, 0b10}, {0b01, 0b00}, {0b01, 0b11}, {0b11, 0b10}};
         if (edges != expected) return detail::note_fail(note, "edge set differs");
         return true;
       }});
  inst.facts.push_back(
      {"fig4c.dynamics", "asynchronous graph of the binarisation matches the figure",
       [](const ExampleInstance& e, std::string* note) {
         const auto edges = detail::async_edges(build_async(binarise(e.map)));
         const std::vector<std::pair<StateRank, StateRank>> expected = {
             {0b00, 0b01}, {0b00, 0b10}, {0b11, 0b01}, {0b11, 0b10}};
         if (edges != expected) return detail::note_fail(note, "edge set differs");
         return true;
       }});
  inst.facts.push_back(
      {"sec7.fixed_points", "extension of the stepwise version fixes (1,0); binarisation fixes "
                            "(1,0) and (0,1)",
       [](const ExampleInstance& e, std::string*) {
         const auto a = fixed_points(extend_via_psi(stepwise(e.map)));
         const auto b = fixed_points(binarise(e.map));
         return a == std::vector<StateRank>{0b10} &&
                b == std::vector<StateRank>{0b01, 0b10};
       }});
  return inst;
}

inline ExampleInstance make_fig5() {
  MultiSpace sp({2, 1}, {"a", "b"});
  auto f = detail::map_from_rows(sp, {{{0, 0}, {0, 1}},
                                      {{0, 1}, {2, 1}},
                                      {{1, 0}, {0, 1}},
                                      {{1, 1}, {1, 1}},
                                      {{2, 0}, {0, 0}},
                                      {{2, 1}, {0, 0}}});
  ExampleInstance inst{"fig5_asymptotic",
                       "asymptotic map whose local cycle disappears under binarisation",
                       std::move(f),
                       std::nullopt,
                       {}};
  inst.facts.push_back({"fig5a.asymptotic", "the table is its own asymptotic version",
                        [](const ExampleInstance& e, std::string*) {
                          return is_asymptotic(e.map);
                        }});
  inst.facts.push_back(
      {"fig5b.local10", "G_f(1,0) is the cycle 1->2 -, 2->1 +",
       [](const ExampleInstance& e, std::string* note) {
         const SignedDigraph expected = detail::graph_from_edges(2, {{1, 2, -1, 0}, {2, 1, 1, 0}});
         if (!detail::same_edges(local_graph(e.map, {1, 0}), expected))
           return detail::note_fail(note, "edge set differs");
         return true;
       }});
  inst.facts.push_back(
      {"fig5cd.binarised", "binarisation local graphs at 010 and 100 are the symmetric acyclic "
                           "pair from the figure",
       [](const ExampleInstance& e, std::string* note) {
         const BooleanConversion B = binarise(e.map);
         // vertices: 1=(1,1), 2=(1,2), 3=(2,1)
         const SignedDigraph expected010 =
             detail::graph_from_edges(3, {{1, 3, -1, 0}, {3, 2, 1, 0}});
         const SignedDigraph expected100 =
             detail::graph_from_edges(3, {{2, 3, -1, 0}, {3, 1, 1, 0}});
         if (!detail::same_edges(local_graph_rank(B, 0b010), expected010))
           return detail::note_fail(note, "graph at 010 differs");
         if (!detail::same_edges(local_graph_rank(B, 0b100), expected100))
           return detail::note_fail(note, "graph at 100 differs");
         return !has_cycle(local_graph_rank(B, 0b010)) && !has_cycle(local_graph_rank(B, 0b100));
       }});
  inst.facts.push_back(
      {"fig5ef.extension", "the extension keeps a cycle at 010 and none at 100",
       [](const ExampleInstance& e, std::string* note) {
         const BooleanConversion F = extend_via_psi(e.map);
         const SignedDigraph expected010 =
             detail::graph_from_edges(3, {{1, 3, -1, 0}, {3, 1, 1, 0}});
         const SignedDigraph expected100 =
             detail::graph_from_edges(3, {{2, 3, -1, 0}, {3, 1, 1, 0}});
         if (!detail::same_edges(local_graph_rank(F, 0b010), expected010))
           return detail::note_fail(note, "graph at 010 differs");
         if (!detail::same_edges(local_graph_rank(F, 0b100), expected100))
           return detail::note_fail(note, "graph at 100 differs");
         return has_cycle(local_graph_rank(F, 0b010)) && !has_cycle(local_graph_rank(F, 0b100));
       }});
  return inst;
}

}  // namespace detail

// Expected global interaction graph of the headline six-variable conversion,
// read off the published drawing: positive loops everywhere, all positive
// edges inside each block, negative edges from block 1 to block 2, positive
// edges back. Vertices 1..3 are (1,1)..(1,3); vertices 4..6 are (2,1)..(2,3).
inline const SignedDigraph& expected_headline_global_graph() {
  static const SignedDigraph g = [] {
    SignedDigraph graph(6);
    for (int v = 1; v <= 6; ++v) graph.add_edge(v, v, 1);
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) {
        if (a != b) {
          graph.add_edge(a, b, 1);
          graph.add_edge(a + 3, b + 3, 1);
        }
        graph.add_edge(a, b + 3, -1);
        graph.add_edge(b + 3, a, 1);
      }
    return graph;
  }();
  return g;
}

inline ExampleInstance example(const std::string& id) {
  if (id == "sec2_example") return detail::make_sec2_example();
  if (id == "fig1") return detail::make_fig1();
  if (id == "ex1_pos_not_preserved") return detail::make_ex1();
  if (id == "ex2_not_stepwise") return detail::make_ex2();
  if (id == "richard_stepwise") return detail::make_richard();
  if (id == "two_minus_x") return detail::make_two_minus_x();
  if (id == "fig5_asymptotic") return detail::make_fig5();
  throw UnknownExample("unknown example id: " + id);
}

// ---------------------------------------------------------------------------
// Statement verification
// ---------------------------------------------------------------------------

struct Verdict {
  enum class Outcome { kPass, kFail, kVacuous };

  std::string statement;
  Outcome outcome = Outcome::kPass;
  bool hypothesis_ok = true;
  std::string hypothesis_note;
  std::vector<std::pair<std::string, std::string>> details;

  bool failed() const { return outcome == Outcome::kFail; }

  void detail(std::string key, std::string value) {
    if (details.size() < 64) details.emplace_back(std::move(key), std::move(value));
  }
};

inline std::string to_string(Verdict::Outcome o) {
  switch (o) {
    case Verdict::Outcome::kPass:
      return "PASS";
    case Verdict::Outcome::kFail:
      return "FAIL";
    case Verdict::Outcome::kVacuous:
      return "VACUOUS";
  }
  return "?";
}

inline const std::vector<std::pair<std::string, std::string>>& statement_ids() {
  static const std::vector<std::pair<std::string, std::string>> ids = {
      {"prop1", "admissible region is a trap set for conversions of stepwise maps"},
      {"prop2", "admissible-image conversions with unit block-sum steps reach the admissible region"},
      {"prop3", "cycles of direction-restricted graphs reappear at the embedded state"},
      {"lemma1", "edges of local graphs transfer to the partial conversion"},
      {"lemma2", "edges of the partial conversion come from source edges"},
      {"lemma3", "partial-conversion edges lift along sum-preserving fibres"},
      {"lemma4", "extension edges project back to the partial conversion"},
      {"lemma5", "mirror pairs correspond across the embedding"},
      {"thm1", "cycles of the source map reappear in the extension"},
      {"thm2", "cycles of the extension come from source cycles; negative stays negative"},
      {"thm4", "a mirror pair forces two states with local cycles"},
      {"thm5", "acyclic direction-restricted graphs force a unique fixed point"},
      {"thm6", "two attractors force a positive direction-restricted cycle"},
      {"thm7", "acyclic partial-conversion graphs force a unique fixed point"},
      {"thm8", "two attractors force a positive cycle at an admissible state"},
      {"thm9", "a cyclic attractor forces negative cycles in the single-step and partial graphs"}};
  return ids;
}

// Runs the named statement checkers against one instance, sharing the
// derived objects (partial conversion, extension, local graphs, fibres)
// between statements.
class StatementVerifier {
 public:
  explicit StatementVerifier(MultivaluedMap f, const BooleanConversion* given = nullptr)
      : f_(std::move(f)) {
    const MultiSpace& sp = f_.space();
    if (sp.state_count() > 4096 || sp.boolean_dim() > 14)
      throw BudgetExceeded("statement verification: instance exceeds the enumeration budget");
    if (given) {
      if (!(given->source_space() == sp))
        throw SpaceMismatch("statement verification: conversion space mismatch");
      given_ = *given;
    }
  }

  const MultivaluedMap& map() const { return f_; }

  Verdict verify(const std::string& id) {
    Verdict v;
    v.statement = id;
    if (id == "prop1") return check_prop1(std::move(v));
    if (id == "prop2") return check_prop2(std::move(v));
    if (id == "prop3") return check_prop3(std::move(v));
    if (id == "lemma1") return check_lemma1(std::move(v));
    if (id == "lemma2") return check_lemma2(std::move(v));
    if (id == "lemma3") return check_lemma3(std::move(v));
    if (id == "lemma4") return check_lemma4(std::move(v));
    if (id == "lemma5") return check_lemma5(std::move(v));
    if (id == "thm1") return check_thm1(std::move(v));
    if (id == "thm2") return check_thm2(std::move(v));
    if (id == "thm4") return check_thm4(std::move(v));
    if (id == "thm5") return check_thm5(std::move(v));
    if (id == "thm6") return check_thm6(std::move(v));
    if (id == "thm7") return check_thm7(std::move(v));
    if (id == "thm8") return check_thm8(std::move(v));
    if (id == "thm9") return check_thm9(std::move(v));
    throw Error("unknown statement id: " + id);
  }

 private:
  const MultiSpace& space() const { return f_.space(); }

  const BooleanConversion& psi_extension() {
    if (!psi_ext_) psi_ext_ = extend_via_psi(f_);
    return *psi_ext_;
  }

  // Conversion under test for the trap/reachability statements: the explicit
  // table when one was supplied, the extension otherwise.
  const BooleanConversion& conversion_under_test() {
    if (given_) return *given_;
    return psi_extension();
  }

  const BooleanConversion& partial() {
    if (!partial_) partial_ = partial_conversion(f_);
    return *partial_;
  }

  const SignedDigraph& source_local(StateRank x) {
    if (source_local_.empty()) {
      source_local_.reserve(space().state_count());
      for (StateRank s = 0; s < space().state_count(); ++s)
        source_local_.push_back(local_graph_rank(f_, s));
    }
    return source_local_[x];
  }

  // Local graph of the partial conversion at the embedded state b(x),
  // indexed by the multivalued rank x.
  const SignedDigraph& partial_local(StateRank x) {
    if (partial_local_.empty()) {
      partial_local_.reserve(space().state_count());
      for (StateRank s = 0; s < space().state_count(); ++s)
        partial_local_.push_back(local_graph_rank(partial(), bits::embed_rank(space(), s)));
    }
    return partial_local_[x];
  }

  const SignedDigraph& extension_local(StateRank y) {
    if (extension_local_.empty()) {
      const StateRank size = static_cast<StateRank>(psi_extension().bit_space().state_count());
      extension_local_.reserve(size);
      for (StateRank s = 0; s < size; ++s)
        extension_local_.push_back(local_graph_rank(psi_extension(), s));
    }
    return extension_local_[y];
  }

  // Boolean states grouped by the admissible state psi maps them to,
  // indexed by the multivalued rank of that admissible state.
  const std::vector<StateRank>& fibre(StateRank x) {
    if (fibres_.empty()) {
      fibres_.resize(space().state_count());
      const StateRank size = static_cast<StateRank>(StateRank{1} << space().boolean_dim());
      for (StateRank y = 0; y < size; ++y)
        fibres_[bits::psi_project_rank(space(), y)].push_back(y);
    }
    return fibres_[x];
  }

  std::string label(StateRank x) const { return state_label(space(), x); }
  std::string bit_label(StateRank y) { return state_label(psi_extension().bit_space(), y); }

  int pair_vertex(int component, int level) const {
    return space().pair_position(IndexPair{component, level}) + 1;
  }

  Verdict check_prop1(Verdict v) {
    const BooleanConversion& F = conversion_under_test();
    const MultiSpace& sp = space();
    v.detail("conversion", given_ ? "given_table" : "psi_extension");
    if (!is_stepwise(f_)) {
      v.hypothesis_ok = false;
      v.hypothesis_note = "map is not stepwise";
    } else if (!is_boolean_conversion_of(F, f_)) {
      v.hypothesis_ok = false;
      v.hypothesis_note = "table is not a conversion of the map";
    }
    const int m = sp.boolean_dim();
    std::size_t checked = 0;
    for (StateRank x = 0; x < sp.state_count(); ++x) {
      const StateRank y = bits::embed_rank(sp, x);
      const StateRank img = F.image(y);
      for (int p = 0; p < m; ++p) {
        const StateRank mask = StateRank{1} << (m - 1 - p);
        if (((y ^ img) & mask) == 0) continue;
        ++checked;
        const StateRank z = y ^ mask;
        if (!bits::is_admissible_rank(sp, z)) {
          v.outcome = Verdict::Outcome::kFail;
          v.detail("counterexample.escaping_edge", bit_label(y) + "->" + bit_label(z));
          return v;
        }
      }
    }
    v.detail("witness.trap_edges_checked", std::to_string(checked));
    return v;
  }

  Verdict check_prop2(Verdict v) {
    const BooleanConversion& F = conversion_under_test();
    const MultiSpace& sp = space();
    v.detail("conversion", given_ ? "given_table" : "psi_extension");
    const StateRank size = static_cast<StateRank>(F.bit_space().state_count());
    for (StateRank y = 0; y < size && v.hypothesis_ok; ++y) {
      const StateRank img = F.image(y);
      if (!bits::is_admissible_rank(sp, img)) {
        v.hypothesis_ok = false;
        v.hypothesis_note = "image of " + bit_label(y) + " is not admissible";
        break;
      }
      for (int i = 1; i <= sp.component_count(); ++i)
        if (std::abs(bits::block_sum(sp, img, i) - bits::block_sum(sp, y, i)) > 1) {
          v.hypothesis_ok = false;
          v.hypothesis_note = "block sum of " + bit_label(y) + " moves by more than one";
          break;
        }
    }
    // Backward reachability from the admissible region.
    const int m = sp.boolean_dim();
    std::vector<char> reached(size, 0);
    std::vector<StateRank> queue;
    for (StateRank x = 0; x < sp.state_count(); ++x) {
      const StateRank y = bits::embed_rank(sp, x);
      reached[y] = 1;
      queue.push_back(y);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const StateRank z = queue[head];
      for (int p = 0; p < m; ++p) {
        const StateRank mask = StateRank{1} << (m - 1 - p);
        const StateRank pred = z ^ mask;
        if (reached[pred]) continue;
        if (((pred ^ F.image(pred)) & mask) != 0) {
          reached[pred] = 1;
          queue.push_back(pred);
        }
      }
    }
    for (StateRank y = 0; y < size; ++y)
      if (!reached[y]) {
        v.outcome = Verdict::Outcome::kFail;
        v.detail("counterexample.unreachable", bit_label(y));
        return v;
      }
    v.detail("witness.states_reaching_admissible", std::to_string(size));
    return v;
  }

  Verdict check_lemma1(Verdict v) {
    const MultiSpace& sp = space();
    std::size_t checked = 0;
    for (StateRank x = 0; x < sp.state_count(); ++x) {
      const SignedDigraph& gf = source_local(x);
      const SignedDigraph& gb = partial_local(x);
      for (const SignedEdge& e : gf.edges()) {
        for (int s1 = -1; s1 <= 1; s1 += 2) {
          if ((e.variations & (s1 < 0 ? kVariationMinus : kVariationPlus)) == 0) continue;
          const int xj = sp.coordinate(x, e.from);
          const StateRank moved = static_cast<StateRank>(
              static_cast<long long>(x) + static_cast<long long>(s1) * sp.place(e.from));
          const int fi_x = f_.image_component(x, e.to);
          const int fi_moved = f_.image_component(moved, e.to);
          const int lo = std::min(fi_x, fi_moved);
          const int hi = std::max(fi_x, fi_moved);
          const int k = xj + (s1 + 1) / 2;
          for (int kp = lo + 1; kp <= hi; ++kp) {
            ++checked;
            if (!gb.has_edge(pair_vertex(e.from, k), pair_vertex(e.to, kp), e.sign)) {
              v.outcome = Verdict::Outcome::kFail;
              v.detail("counterexample.state", label(x));
              v.detail("counterexample.missing_edge",
                       "(" + std::to_string(e.from) + "," + std::to_string(k) + ")->(" +
                           std::to_string(e.to) + "," + std::to_string(kp) + ")");
              return v;
            }
          }
        }
      }
    }
    v.detail("witness.edges_checked", std::to_string(checked));
    return v;
  }

  Verdict check_lemma2(Verdict v) {
    const MultiSpace& sp = space();
    std::size_t checked = 0;
    for (StateRank x = 0; x < sp.state_count(); ++x) {
      const SignedDigraph& gb = partial_local(x);
      const SignedDigraph& gf = source_local(x);
      for (const SignedEdge& e : gb.edges()) {
        ++checked;
        if (!gf.has_edge(gb.block_of(e.from), gb.block_of(e.to), e.sign)) {
          v.outcome = Verdict::Outcome::kFail;
          v.detail("counterexample.state", label(x));
          v.detail("counterexample.edge", gb.vertex_name(e.from) + "->" + gb.vertex_name(e.to));
          return v;
        }
      }
    }
    v.detail("witness.edges_checked", std::to_string(checked));
    return v;
  }

  Verdict check_lemma3(Verdict v) {
    const MultiSpace& sp = space();
    std::size_t checked = 0;
    for (StateRank x = 0; x < sp.state_count(); ++x) {
      const StateRank a = bits::embed_rank(sp, x);
      const SignedDigraph& gb = partial_local(x);
      for (const SignedEdge& e : gb.edges()) {
        const IndexPair from = gb.pair_label(e.from);
        const int k_pos = sp.pair_position(from);
        for (StateRank y : fibre(x)) {
          for (int t = 1; t <= sp.level(from.component); ++t) {
            const int t_pos = sp.pair_position(IndexPair{from.component, t});
            if (bits::bit_at(sp, y, t_pos) != bits::bit_at(sp, a, k_pos)) continue;
            ++checked;
            if (!extension_local(y).has_edge(t_pos + 1, e.to, e.sign)) {
              v.outcome = Verdict::Outcome::kFail;
              v.detail("counterexample.state", bit_label(y));
              v.detail("counterexample.edge",
                       "(" + std::to_string(from.component) + "," + std::to_string(t) + ")->" +
                           gb.vertex_name(e.to));
              return v;
            }
          }
        }
      }
    }
    v.detail("witness.edges_checked", std::to_string(checked));
    return v;
  }

  Verdict check_lemma4(Verdict v) {
    const MultiSpace& sp = space();
    const StateRank size = static_cast<StateRank>(psi_extension().bit_space().state_count());
    std::size_t checked = 0;
    for (StateRank y = 0; y < size; ++y) {
      const SignedDigraph& gF = extension_local(y);
      if (gF.edge_count() == 0) continue;
      const StateRank x = bits::psi_project_rank(sp, y);
      const SignedDigraph& gb = partial_local(x);
      for (const SignedEdge& e : gF.edges()) {
        ++checked;
        const int j = gF.block_of(e.from);
        bool found = false;
        for (int k = 1; k <= sp.level(j) && !found; ++k)
          found = gb.has_edge(pair_vertex(j, k), e.to, e.sign);
        if (!found) {
          v.outcome = Verdict::Outcome::kFail;
          v.detail("counterexample.state", bit_label(y));
          v.detail("counterexample.edge", gF.vertex_name(e.from) + "->" + gF.vertex_name(e.to));
          return v;
        }
      }
    }
    v.detail("witness.edges_checked", std::to_string(checked));
    return v;
  }

  Verdict check_lemma5(Verdict v) {
    const MultiSpace& sp = space();
    const BooleanConversion& fb = partial();
    std::size_t pairs = 0;
    for (StateRank a = 0; a < sp.state_count(); ++a) {
      const MultiState x = sp.coordinates(a);
      const BoolState bx = bits::unrank(sp, bits::embed_rank(sp, a));
      for (StateRank b = a + 1; b < sp.state_count(); ++b) {
        const MultiState y = sp.coordinates(b);
        const BoolState by = bits::unrank(sp, bits::embed_rank(sp, b));
        ++pairs;
        const bool multi = is_mirror_pair(f_, x, y).has_value();
        const bool boolean = is_mirror_pair(fb, bx, by).has_value();
        if (multi != boolean) {
          v.outcome = Verdict::Outcome::kFail;
          v.detail("counterexample.pair", label(a) + "/" + label(b));
          v.detail("counterexample.multivalued", multi ? "mirror" : "not_mirror");
          v.detail("counterexample.boolean", boolean ? "mirror" : "not_mirror");
          return v;
        }
      }
    }
    v.detail("witness.pairs_checked", std::to_string(pairs));
    return v;
  }

  // Constructive transfer of one source cycle into the extension: pick a
  // variation per edge, derive the lifted edge endpoints, swap bits inside
  // each block so the lifted edges chain up, then check them all.
  bool transfer_cycle(StateRank x, const SignedCycle& cycle, StateRank* witness,
                      std::string* missing) {
    const MultiSpace& sp = space();
    const int length = static_cast<int>(cycle.vertices.size());
    std::vector<int> src_level(length), tgt_level(length);
    for (int h = 0; h < length; ++h) {
      const int j = cycle.vertices[h];
      const int i = cycle.vertices[(h + 1) % length];
      const int s = cycle.signs[h];
      // Recover a variation that produced this edge.
      int s1 = 0;
      for (int cand = -1; cand <= 1 && s1 == 0; cand += 2) {
        const int xj = sp.coordinate(x, j);
        if (xj + cand < 0 || xj + cand > sp.level(j)) continue;
        const StateRank moved = static_cast<StateRank>(
            static_cast<long long>(x) + static_cast<long long>(cand) * sp.place(j));
        if (cand * sign_of(f_.image_component(moved, i) - f_.image_component(x, i)) == s)
          s1 = cand;
      }
      if (s1 == 0) return false;  // edge not reproducible; should not happen
      const StateRank moved = static_cast<StateRank>(
          static_cast<long long>(x) + static_cast<long long>(s1) * sp.place(j));
      src_level[h] = sp.coordinate(x, j) + (s1 + 1) / 2;
      tgt_level[h] = std::max(f_.image_component(x, i), f_.image_component(moved, i));
    }
    // Incoming level at vertex position h comes from the edge entering it.
    std::vector<int> level_at(length);
    for (int h = 0; h < length; ++h) level_at[(h + 1) % length] = tgt_level[h];
    // Swap bits inside each block of b(x) so y agrees where the lift needs.
    BoolState y = bits::unrank(sp, bits::embed_rank(sp, x));
    for (int h = 0; h < length; ++h) {
      const int block = cycle.vertices[h];
      const int p = sp.pair_position(IndexPair{block, level_at[h]});
      const int q = sp.pair_position(IndexPair{block, src_level[h]});
      std::swap(y[p], y[q]);
    }
    const StateRank yr = bits::rank_of(sp, y);
    if (witness) *witness = yr;
    if (bits::psi_rank(sp, yr) != bits::embed_rank(sp, x)) return false;
    const SignedDigraph& gF = extension_local(yr);
    for (int h = 0; h < length; ++h) {
      const int from = pair_vertex(cycle.vertices[h], level_at[h]);
      const int to = pair_vertex(cycle.vertices[(h + 1) % length], level_at[(h + 1) % length]);
      if (!gF.has_edge(from, to, cycle.signs[h])) {
        if (missing) *missing = gF.vertex_name(from) + "->" + gF.vertex_name(to);
        return false;
      }
    }
    return true;
  }

  Verdict check_thm1(Verdict v) {
    const MultiSpace& sp = space();
    std::size_t transferred = 0;
    for (StateRank x = 0; x < sp.state_count(); ++x) {
      for (const SignedCycle& cycle : enumerate_cycles(source_local(x))) {
        StateRank witness = 0;
        std::string missing;
        if (!transfer_cycle(x, cycle, &witness, &missing)) {
          v.outcome = Verdict::Outcome::kFail;
          v.detail("counterexample.state", label(x));
          v.detail("counterexample.cycle", cycle_label(source_local(x), cycle));
          v.detail("counterexample.fibre_state", bit_label(witness));
          if (!missing.empty()) v.detail("counterexample.missing_edge", missing);
          return v;
        }
        ++transferred;
      }
    }
    // Global part: cycle signs present for f must be present for F.
    const SignedDigraph gf_global = global_graph(f_);
    const SignedDigraph gF_global = global_graph(psi_extension());
    for (const SignFilter filter : {SignFilter::kPositive, SignFilter::kNegative}) {
      if (has_cycle(gf_global, filter) && !has_cycle(gF_global, filter)) {
        v.outcome = Verdict::Outcome::kFail;
        v.detail("counterexample.global_sign",
                 filter == SignFilter::kPositive ? "positive" : "negative");
        return v;
      }
    }
    v.detail("witness.local_cycles_transferred", std::to_string(transferred));
    return v;
  }

  Verdict check_thm2(Verdict v) {
    const MultiSpace& sp = space();
    const StateRank size = static_cast<StateRank>(psi_extension().bit_space().state_count());
    std::size_t carried = 0;
    for (StateRank y = 0; y < size; ++y) {
      const SignedDigraph& gF = extension_local(y);
      if (gF.edge_count() == 0) continue;
      const bool any = has_cycle(gF, SignFilter::kAny);
      if (!any) continue;
      ++carried;
      const StateRank x = bits::psi_project_rank(sp, y);
      if (!has_cycle(source_local(x), SignFilter::kAny)) {
        v.outcome = Verdict::Outcome::kFail;
        v.detail("counterexample.state", bit_label(y));
        v.detail("counterexample.kind", "cycle_lost");
        return v;
      }
      if (has_cycle(gF, SignFilter::kNegative) &&
          !has_cycle(source_local(x), SignFilter::kNegative)) {
        v.outcome = Verdict::Outcome::kFail;
        v.detail("counterexample.state", bit_label(y));
        v.detail("counterexample.kind", "negative_cycle_lost");
        return v;
      }
    }
    const SignedDigraph gF_global = global_graph(psi_extension());
    const SignedDigraph gf_global = global_graph(f_);
    if (has_cycle(gF_global) && !has_cycle(gf_global)) {
      v.outcome = Verdict::Outcome::kFail;
      v.detail("counterexample.kind", "global_cycle_lost");
      return v;
    }
    if (has_cycle(gF_global, SignFilter::kNegative) &&
        !has_cycle(gf_global, SignFilter::kNegative)) {
      v.outcome = Verdict::Outcome::kFail;
      v.detail("counterexample.kind", "global_negative_cycle_lost");
      return v;
    }
    v.detail("witness.states_with_cycles", std::to_string(carried));
    return v;
  }

  Verdict check_thm4(Verdict v) {
    const MirrorTheoremResult result = check_mirror_theorem(f_);
    if (result.verdict == MirrorVerdict::kVacuous) {
      v.outcome = Verdict::Outcome::kVacuous;
      v.hypothesis_ok = false;
      v.hypothesis_note = "no mirror pair";
      return v;
    }
    v.detail("witness.mirror_pair", state_label(space(), rank(space(), result.pair->x)) + "/" +
                                        state_label(space(), rank(space(), result.pair->y)));
    if (result.verdict == MirrorVerdict::kFailure) {
      v.outcome = Verdict::Outcome::kFail;
      v.detail("counterexample.cyclic_states", std::to_string(result.cyclic_states.size()));
      return v;
    }
    v.detail("witness.cyclic_state_count", std::to_string(result.cyclic_states.size()));
    v.detail("witness.first_state", label(result.cyclic_states[0]));
    v.detail("witness.second_state", label(result.cyclic_states[1]));
    return v;
  }

  Verdict check_prop3(Verdict v) {
    const MultiSpace& sp = space();
    std::size_t checked = 0;
    for (StateRank a = 0; a < sp.state_count(); ++a) {
      const MultiState x = sp.coordinates(a);
      for (StateRank b = 0; b < sp.state_count(); ++b) {
        if (a == b) continue;
        const SignedDigraph g = nonusual_graph(f_, x, sp.coordinates(b));
        if (g.edge_count() == 0) continue;
        bool pos = false, neg = false;
        detail::for_each_cycle(
            g,
            [&](const SignedCycle& c) {
              (c.sign > 0 ? pos : neg) = true;
              return !(pos && neg);
            },
            kDefaultCycleBudget);
        for (int s = -1; s <= 1; s += 2) {
          if (!(s > 0 ? pos : neg)) continue;
          ++checked;
          if (!has_cycle(partial_local(a), s > 0 ? SignFilter::kPositive : SignFilter::kNegative)) {
            v.outcome = Verdict::Outcome::kFail;
            v.detail("counterexample.pair", label(a) + "/" + label(b));
            v.detail("counterexample.sign", s > 0 ? "positive" : "negative");
            return v;
          }
        }
      }
    }
    v.detail("witness.cycle_signs_checked", std::to_string(checked));
    return v;
  }

  // Hypothesis shared by thm5: no cycle in any direction-restricted graph.
  bool nonusual_all_acyclic(std::string* where) {
    const MultiSpace& sp = space();
    for (StateRank a = 0; a < sp.state_count(); ++a) {
      const MultiState x = sp.coordinates(a);
      for (StateRank b = 0; b < sp.state_count(); ++b) {
        if (a == b) continue;
        if (has_cycle(nonusual_graph(f_, x, sp.coordinates(b)))) {
          if (where) *where = label(a) + "/" + label(b);
          return false;
        }
      }
    }
    return true;
  }

  Verdict check_thm5(Verdict v) {
    std::string where;
    if (!nonusual_all_acyclic(&where)) {
      v.outcome = Verdict::Outcome::kVacuous;
      v.hypothesis_ok = false;
      v.hypothesis_note = "direction-restricted cycle at " + where;
      return v;
    }
    const auto fixed = fixed_points(f_);
    if (fixed.size() != 1) {
      v.outcome = Verdict::Outcome::kFail;
      v.detail("counterexample.fixed_point_count", std::to_string(fixed.size()));
      return v;
    }
    v.detail("witness.fixed_point", label(fixed[0]));
    return v;
  }

  Verdict check_thm6(Verdict v) {
    const auto atts = attractors(build_async(f_));
    if (atts.size() < 2) {
      v.outcome = Verdict::Outcome::kVacuous;
      v.hypothesis_ok = false;
      v.hypothesis_note = "fewer than two attractors";
      return v;
    }
    const MultiSpace& sp = space();
    for (StateRank a = 0; a < sp.state_count(); ++a) {
      const MultiState x = sp.coordinates(a);
      for (StateRank b = 0; b < sp.state_count(); ++b) {
        if (a == b) continue;
        if (has_cycle(nonusual_graph(f_, x, sp.coordinates(b)), SignFilter::kPositive)) {
          v.detail("witness.pair", label(a) + "/" + label(b));
          return v;
        }
      }
    }
    v.outcome = Verdict::Outcome::kFail;
    v.detail("counterexample.attractors", std::to_string(atts.size()));
    return v;
  }

  Verdict check_thm7(Verdict v) {
    const MultiSpace& sp = space();
    for (StateRank x = 0; x < sp.state_count(); ++x)
      if (has_cycle(partial_local(x))) {
        v.outcome = Verdict::Outcome::kVacuous;
        v.hypothesis_ok = false;
        v.hypothesis_note = "cycle at admissible state " + label(x);
        return v;
      }
    const auto fixed = fixed_points(f_);
    if (fixed.size() != 1) {
      v.outcome = Verdict::Outcome::kFail;
      v.detail("counterexample.fixed_point_count", std::to_string(fixed.size()));
      return v;
    }
    v.detail("witness.fixed_point", label(fixed[0]));
    return v;
  }

  Verdict check_thm8(Verdict v) {
    const auto atts = attractors(build_async(f_));
    if (atts.size() < 2) {
      v.outcome = Verdict::Outcome::kVacuous;
      v.hypothesis_ok = false;
      v.hypothesis_note = "fewer than two attractors";
      return v;
    }
    const MultiSpace& sp = space();
    for (StateRank x = 0; x < sp.state_count(); ++x)
      if (has_cycle(partial_local(x), SignFilter::kPositive)) {
        v.detail("witness.admissible_state", label(x));
        return v;
      }
    v.outcome = Verdict::Outcome::kFail;
    v.detail("counterexample.attractors", std::to_string(atts.size()));
    return v;
  }

  Verdict check_thm9(Verdict v) {
    const auto atts = attractors(build_async(f_));
    bool any_cyclic = false;
    for (const Attractor& att : atts) {
      if (att.kind != AttractorKind::kCyclic) continue;
      any_cyclic = true;
      const SignedDigraph single_step = richard_graph_union(f_, att.states);
      if (!has_cycle(single_step, SignFilter::kNegative)) {
        v.outcome = Verdict::Outcome::kFail;
        v.detail("counterexample.kind", "single_step_graph_without_negative_cycle");
        v.detail("counterexample.attractor_size", std::to_string(att.states.size()));
        return v;
      }
      SignedDigraph embedded(space().boolean_dim(), pair_labels_for(space()));
      for (StateRank x : att.states) embedded.merge(partial_local(x));
      if (!has_cycle(embedded, SignFilter::kNegative)) {
        v.outcome = Verdict::Outcome::kFail;
        v.detail("counterexample.kind", "partial_graph_without_negative_cycle");
        v.detail("counterexample.attractor_size", std::to_string(att.states.size()));
        return v;
      }
      v.detail("witness.cyclic_attractor_size", std::to_string(att.states.size()));
    }
    if (!any_cyclic) {
      v.outcome = Verdict::Outcome::kVacuous;
      v.hypothesis_ok = false;
      v.hypothesis_note = "no cyclic attractor";
    }
    return v;
  }

  MultivaluedMap f_;
  std::optional<BooleanConversion> given_;
  std::optional<BooleanConversion> psi_ext_;
  std::optional<BooleanConversion> partial_;
  std::vector<SignedDigraph> source_local_;
  std::vector<SignedDigraph> partial_local_;
  std::vector<SignedDigraph> extension_local_;
  std::vector<std::vector<StateRank>> fibres_;
};

inline Verdict verify_statement(const std::string& id, const MultivaluedMap& f,
                                const BooleanConversion* given = nullptr) {
  StatementVerifier verifier(f, given);
  return verifier.verify(id);
}

inline std::string render_verdict(const Verdict& v, const std::string& instance = "") {
  std::string out = "statement=" + v.statement + "\n";
  if (!instance.empty()) out += "instance=" + instance + "\n";
  out += "hypothesis=";
  out += v.hypothesis_ok ? "ok" : ("violated:" + v.hypothesis_note);
  out += "\n";
  out += "verdict=" + to_string(v.outcome) + "\n";
  for (const auto& [key, value] : v.details) out += key + "=" + value + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Headline counterexample report
// ---------------------------------------------------------------------------

// Summary of the two flagship instances: the six-bit extension of the
// stepwise two-by-four-level map (no fixed points, one attractor, no
// negative local cycles) and the binarisation of its asymptotic version
// (one 28-state attractor that is not a plain cycle).
struct CounterexampleReport {
  int fixed_point_count = -1;
  int attractor_count = -1;
  std::vector<StateRank> attractor_states;
  std::size_t negative_local_cycles = 0;
  bool global_graph_matches_expected = false;
  int binarised_attractor_count = -1;
  int binarised_attractor_size = -1;
  bool binarised_attractor_single_cycle = true;
};

inline CounterexampleReport counterexample_report() {
  CounterexampleReport report;
  const ExampleInstance inst = example("richard_stepwise");
  const BooleanConversion F = extend_via_psi(inst.map);

  report.fixed_point_count = static_cast<int>(fixed_points(F).size());
  const AsyncDynamics ad = build_async(F);
  const std::vector<Attractor> atts = attractors(ad);
  report.attractor_count = static_cast<int>(atts.size());
  if (!atts.empty()) report.attractor_states = atts[0].states;
  report.negative_local_cycles = scan_local_cycles(F, SignFilter::kNegative).size();
  report.global_graph_matches_expected =
      detail::same_edges(global_graph(F), expected_headline_global_graph());

  const BooleanConversion B = binarise(asymptotic(inst.map));
  const AsyncDynamics bad = build_async(B);
  const std::vector<Attractor> batts = attractors(bad);
  report.binarised_attractor_count = static_cast<int>(batts.size());
  if (!batts.empty()) {
    const Attractor& att = batts[0];
    report.binarised_attractor_size = static_cast<int>(att.states.size());
    // A plain cycle would give every member exactly one successor inside
    // the attractor.
    std::vector<char> member(bad.size(), 0);
    for (StateRank s : att.states) member[bad.index_of(s)] = 1;
    report.binarised_attractor_single_cycle = true;
    for (StateRank s : att.states) {
      int internal = 0;
      for (int w : bad.successors(bad.index_of(s)))
        if (member[w]) ++internal;
      if (internal != 1) {
        report.binarised_attractor_single_cycle = false;
        break;
      }
    }
  }
  return report;
}

inline std::string render_report(const CounterexampleReport& r, const MultiSpace& bit_space) {
  std::string out;
  out += "fixed_points=" + std::to_string(r.fixed_point_count) + "\n";
  out += "attractors=" + std::to_string(r.attractor_count) + "\n";
  out += "attractor_size=" + std::to_string(r.attractor_states.size()) + "\n";
  std::string members;
  for (StateRank s : r.attractor_states) {
    if (!members.empty()) members += ",";
    members += state_label(bit_space, s);
  }
  out += "attractor_members=" + members + "\n";
  out += "negative_local_cycles=" + std::to_string(r.negative_local_cycles) + "\n";
  out += std::string("global_graph_expected=") +
         (r.global_graph_matches_expected ? "yes" : "no") + "\n";
  out += "binarised_attractors=" + std::to_string(r.binarised_attractor_count) + "\n";
  out += "binarised_attractor_size=" + std::to_string(r.binarised_attractor_size) + "\n";
  out += std::string("binarised_attractor_single_cycle=") +
         (r.binarised_attractor_single_cycle ? "yes" : "no") + "\n";
  return out;
}

}  // namespace mvnet
