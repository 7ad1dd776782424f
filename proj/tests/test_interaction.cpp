#include <catch2/catch_amalgamated.hpp>

#include "mvnet/checks.hpp"
#include "mvnet/interaction.hpp"
#include "support.hpp"

using namespace mvnet;

namespace {

SignedDigraph graph_of(int n, std::initializer_list<SignedEdge> edges) {
  SignedDigraph g(n);
  for (const SignedEdge& e : edges) g.add_edge(e.from, e.to, e.sign);
  return g;
}

bool same_edges(const SignedDigraph& a, const SignedDigraph& b) {
  if (a.edge_count() != b.edge_count()) return false;
  for (const SignedEdge& e : a.edges())
    if (!b.has_edge(e.from, e.to, e.sign)) return false;
  return true;
}

}  // namespace

TEST_CASE("local graph of the four-level map at (1,1)") {
  const auto richard = example("richard_stepwise").map;
  const SignedDigraph g = local_graph(richard, {1, 1});
  CHECK(same_edges(g, graph_of(2, {{1, 1, 1, 0}, {1, 2, -1, 0}, {2, 2, 1, 0}})));
}

TEST_CASE("global graph spot checks") {
  const auto sec2 = example("sec2_example").map;
  const SignedDigraph gf = global_graph(sec2);
  CHECK(gf.has_edge(1, 1, -1));
  CHECK(gf.has_edge(2, 1, 1));
  CHECK(same_edges(global_graph(stepwise(sec2)), graph_of(2, {{2, 2, 1, 0}})));

  MultiSpace boolean({1, 1, 1});
  const SignedDigraph id_graph = global_graph(MultivaluedMap::identity(boolean));
  CHECK(same_edges(id_graph, graph_of(3, {{1, 1, 1, 0}, {2, 2, 1, 0}, {3, 3, 1, 0}})));
}

TEST_CASE("constant maps have empty local graphs") {
  MultiSpace sp({2, 2});
  auto f = MultivaluedMap::from_function(sp, [](const MultiState&) -> MultiState {
    return {1, 1};
  });
  for (StateRank x = 0; x < sp.state_count(); ++x)
    CHECK(local_graph_rank(f, x).edge_count() == 0);
}

TEST_CASE("local graphs of partial conversions stay inside the admissible region") {
  const auto fig1 = example("fig1").map;
  const BooleanConversion fb = partial_conversion(fig1);
  CHECK_THROWS_AS(local_graph_rank(fb, 0b010), NonAdmissibleState);
  const SignedDigraph g = local_graph_rank(fb, 0b000);
  CHECK(g.pair_labeled());
  CHECK(g.vertex_name(2) == "(1,2)");
}

TEST_CASE("direction-restricted graph of the worked example") {
  const auto fig1 = example("fig1").map;
  const SignedDigraph g = nonusual_graph(fig1, {1, 0}, {0, 1});
  CHECK(g.has_edge(1, 2, 1));
  CHECK_FALSE(g.has_edge_any_sign(2, 1));
  CHECK_THROWS_AS(nonusual_graph(fig1, {1, 0}, {1, 0}), IdenticalStates);

  // No direction-restricted graph of this map contains a cycle.
  const MultiSpace& sp = fig1.space();
  for (StateRank a = 0; a < sp.state_count(); ++a)
    for (StateRank b = 0; b < sp.state_count(); ++b) {
      if (a == b) continue;
      CHECK_FALSE(has_cycle(nonusual_graph(fig1, sp.coordinates(a), sp.coordinates(b))));
    }
}

TEST_CASE("direction-restricted graphs ignore constant components") {
  MultiSpace sp({2, 2});
  auto f = MultivaluedMap::from_function(sp, [](const MultiState&) -> MultiState {
    return {1, 1};
  });
  CHECK(nonusual_graph(f, {0, 0}, {0, 1}).edge_count() == 0);
}

TEST_CASE("single-step graph") {
  const auto fig1 = example("fig1").map;
  CHECK(same_edges(richard_graph(fig1, {1, 0}), graph_of(2, {{2, 1, 1, 0}})));
  // Fixed points yield empty graphs.
  CHECK(richard_graph(fig1, {2, 1}).edge_count() == 0);
}

TEST_CASE("single-step graphs are subgraphs of the local graphs") {
  for (std::uint32_t seed = 0; seed < 60; ++seed) {
    const auto f = testutil::random_instance(seed);
    const MultiSpace& sp = f.space();
    for (StateRank x = 0; x < sp.state_count(); ++x) {
      const SignedDigraph sub = richard_graph_rank(f, x);
      const SignedDigraph full = local_graph_rank(f, x);
      for (const SignedEdge& e : sub.edges()) {
        CHECK(full.has_edge(e.from, e.to, e.sign));
        // Directions always move: f_j(x) != x_j.
        CHECK(f.image_component(x, e.from) != sp.coordinate(x, e.from));
      }
    }
  }
}

TEST_CASE("cycle enumeration on the four-level map") {
  const auto richard = example("richard_stepwise").map;
  const auto cycles = enumerate_cycles(local_graph(richard, {1, 1}));
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0].vertices == std::vector<int>{1});
  CHECK(cycles[0].sign == 1);
  CHECK(cycles[1].vertices == std::vector<int>{2});
  CHECK(cycles[1].sign == 1);
}

TEST_CASE("cycle enumeration on the extension of the positive example") {
  const auto ex1 = example("ex1_pos_not_preserved").map;
  const BooleanConversion F = extend_via_psi(ex1);
  const auto cycles = enumerate_cycles(local_graph_rank(F, 0b1100));
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].vertices.size() == 4);
  CHECK(cycles[0].sign == 1);

  CHECK(has_cycle(local_graph_rank(F, 0b1010), SignFilter::kNegative));
  int negatives = 0;
  for (const SignedCycle& c : enumerate_cycles(local_graph_rank(F, 0b1010)))
    if (c.sign < 0) ++negatives;
  CHECK(negatives == 2);
}

TEST_CASE("edgeless graphs have no cycles") {
  CHECK(enumerate_cycles(SignedDigraph(4)).empty());
  CHECK_FALSE(has_cycle(SignedDigraph(4)));
}

TEST_CASE("sign filters") {
  SignedDigraph loop(1);
  loop.add_edge(1, 1, 1);
  CHECK(has_cycle(loop, SignFilter::kPositive));
  CHECK_FALSE(has_cycle(loop, SignFilter::kNegative));

  const auto fig1 = example("fig1");
  CHECK_FALSE(has_cycle(global_graph(*fig1.given_conversion)));
}

TEST_CASE("parallel opposite edges give distinct cycles") {
  SignedDigraph g(2);
  g.add_edge(1, 2, 1);
  g.add_edge(1, 2, -1);
  g.add_edge(2, 1, 1);
  const auto cycles = enumerate_cycles(g);
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0].sign != cycles[1].sign);
}

TEST_CASE("cycle budget") {
  SignedDigraph g(3);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) g.add_edge(a, b, 1);
  CHECK_THROWS_AS(enumerate_cycles(g, 2), CycleBudgetExceeded);
}

TEST_CASE("local cycle scans") {
  const auto richard = example("richard_stepwise").map;
  CHECK(scan_local_cycles(extend_via_psi(richard), SignFilter::kNegative).empty());

  const auto fig1 = example("fig1").map;
  const BooleanConversion F = extend_via_psi(fig1);
  const auto found = scan_local_cycles(F, SignFilter::kAny);
  // Loop (1,2)->(1,2) at 001 and the two-cycle (1,2)->(2,1)->(1,2) at 010.
  bool loop_at_001 = false;
  bool cycle_at_010 = false;
  for (const auto& [state, cycle] : found) {
    if (state == 0b001 && cycle.vertices == std::vector<int>{2}) loop_at_001 = true;
    if (state == 0b010 && cycle.vertices == std::vector<int>{2, 3}) cycle_at_010 = true;
  }
  CHECK(loop_at_001);
  CHECK(cycle_at_010);

  MultiSpace sp({2, 2});
  auto constant = MultivaluedMap::from_function(sp, [](const MultiState&) -> MultiState {
    return {0, 0};
  });
  CHECK(scan_local_cycles(constant).empty());
}

TEST_CASE("stepwise local edges embed into the source local graph") {
  // Off-diagonal edges of the stepwise version always appear in the source
  // local graph with the same sign.
  for (std::uint32_t seed = 0; seed < 60; ++seed) {
    const auto f = testutil::random_instance(seed);
    const auto st = stepwise(f);
    for (StateRank x = 0; x < f.space().state_count(); ++x) {
      const SignedDigraph gs = local_graph_rank(st, x);
      const SignedDigraph gf = local_graph_rank(f, x);
      for (const SignedEdge& e : gs.edges())
        if (e.from != e.to) CHECK(gf.has_edge(e.from, e.to, e.sign));
    }
  }
}

TEST_CASE("edge transfer between source and partial conversion") {
  // Every local edge of f lifts to the stated block edges of the partial
  // conversion, and every partial-conversion edge projects back.
  for (std::uint32_t seed = 0; seed < 40; ++seed) {
    const auto f = testutil::random_instance(seed);
    const MultiSpace& sp = f.space();
    const BooleanConversion fb = partial_conversion(f);
    for (StateRank x = 0; x < sp.state_count(); ++x) {
      const SignedDigraph gf = local_graph_rank(f, x);
      const SignedDigraph gb = local_graph_rank(fb, bits::embed_rank(sp, x));
      for (const SignedEdge& e : gf.edges()) {
        for (int s1 = -1; s1 <= 1; s1 += 2) {
          if ((e.variations & (s1 < 0 ? kVariationMinus : kVariationPlus)) == 0) continue;
          const StateRank moved = static_cast<StateRank>(
              static_cast<long long>(x) + static_cast<long long>(s1) * sp.place(e.from));
          const int lo = std::min(f.image_component(x, e.to), f.image_component(moved, e.to));
          const int hi = std::max(f.image_component(x, e.to), f.image_component(moved, e.to));
          const int k = sp.coordinate(x, e.from) + (s1 + 1) / 2;
          for (int kp = lo + 1; kp <= hi; ++kp) {
            CHECK(gb.has_edge(sp.pair_position({e.from, k}) + 1,
                              sp.pair_position({e.to, kp}) + 1, e.sign));
          }
        }
      }
      for (const SignedEdge& e : gb.edges())
        CHECK(gf.has_edge(gb.block_of(e.from), gb.block_of(e.to), e.sign));
    }
  }
}
