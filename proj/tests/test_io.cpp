#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "mvnet/checks.hpp"
#include "mvnet/io.hpp"
#include "support.hpp"

using namespace mvnet;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream stream(path);
  REQUIRE(stream.good());
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

std::string source_path(const std::string& relative) {
  return std::string(MVNET_SOURCE_DIR) + "/" + relative;
}

}  // namespace

TEST_CASE("every registry document parses back to the registry table") {
  for (const std::string& id : example_ids()) {
    CAPTURE(id);
    const NetworkDocument doc = parse(read_file(source_path("networks/" + id + ".net")));
    CHECK(doc.to_map() == example(id).map);
  }
}

TEST_CASE("the explicit conversion document matches the registry table") {
  const NetworkDocument doc = parse(read_file(source_path("networks/fig1_conversion.net")));
  const MultivaluedMap boolean_map = doc.to_map();
  const ExampleInstance fig1 = example("fig1");
  CHECK(boolean_map.table() == fig1.given_conversion->table());
}

TEST_CASE("rule documents evaluate like their table form") {
  const NetworkDocument rules = parse("components: a:2\nrules:\na = 2 - a\n");
  CHECK(rules.mode == NetworkDocument::Mode::kRules);
  const NetworkDocument table = parse("components: a:2\nmap:\n0 -> 2\n1 -> 1\n2 -> 0\n");
  CHECK(rules.to_map() == table.to_map());
  CHECK(rules.to_map() == example("two_minus_x").map);
}

TEST_CASE("rule builtins") {
  const auto doc = parse(
      "components: a:2 b:3\n"
      "rules:\n"
      "a = min(a + 1, 2)\n"
      "b = ite(a >= 1, max(b - 1, 1), 0)\n");
  const MultivaluedMap f = doc.to_map();
  CHECK(f.image_state({0, 0}) == MultiState{1, 0});
  CHECK(f.image_state({2, 0}) == MultiState{2, 1});
  CHECK(f.image_state({1, 3}) == MultiState{2, 2});
  CHECK(f.image_state({2, 1}) == MultiState{2, 1});
}

TEST_CASE("clamp-free saturation example") {
  const MultivaluedMap f = parse("components: a:2\nrules:\na = min(a + 1, 2)\n").to_map();
  CHECK(f.image_state({0}) == MultiState{1});
  CHECK(f.image_state({1}) == MultiState{2});
  CHECK(f.image_state({2}) == MultiState{2});
}

TEST_CASE("comparison operators and nesting") {
  const auto eval_one = [](const std::string& rule, int value) {
    const MultivaluedMap f = parse("components: a:3\nrules:\na = " + rule + "\n").to_map();
    return f.image_state({value})[0];
  };
  CHECK(eval_one("ite(a == 1, 3, 0)", 1) == 3);
  CHECK(eval_one("ite(a == 1, 3, 0)", 2) == 0);
  CHECK(eval_one("ite(a < 2, 0, a)", 1) == 0);
  CHECK(eval_one("ite(a < 2, 0, a)", 2) == 2);
  CHECK(eval_one("ite(a > 1, a - 1, a + 1)", 3) == 2);
  CHECK(eval_one("ite(a <= 0, 1, 2)", 0) == 1);
  CHECK(eval_one("-(1 - a) + 1", 3) == 3);
  CHECK(eval_one("max(-a, min(a, 1))", 2) == 1);
}

TEST_CASE("rule evaluation clamps the final value only") {
  const auto doc = parse("components: a:2\nrules:\na = a + 5\n");
  const MultivaluedMap f = doc.to_map();
  for (int v = 0; v <= 2; ++v) CHECK(f.image_state({v}) == MultiState{2});
  const auto negative = parse("components: a:2\nrules:\na = -1\n").to_map();
  for (int v = 0; v <= 2; ++v) CHECK(negative.image_state({v}) == MultiState{0});
}

TEST_CASE("parse errors carry positions") {
  auto expect_error = [](const std::string& text, int line) {
    try {
      parse(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_error("components: a:2\nmap:\n0 -> 0\n1 -> 0\n", 4);           // missing state 2
  expect_error("components: a:2\nmap:\n0 -> 0\n0 -> 1\n1 -> 0\n2 -> 0\n", 4);  // duplicate
  expect_error("components: a:2\nmap:\n0 0 -> 0\n", 3);                 // arity
  expect_error("components: a:2\nmap:\n3 -> 0\n", 3);                   // out of range
  expect_error("components: a:2\nmap:\n0 -> 3\n", 3);                   // image out of range
  expect_error("components: a:0\nmap:\n", 1);                           // bad level
  expect_error("components: a:2\nrules:\na = b\n", 3);                  // unknown name
  expect_error("components: a:2\nrules:\na = 1 +\n", 3);                // bad expression
  expect_error("components: a:2\nrules:\na = 1\na = 2\n", 4);           // duplicate rule
  expect_error("components: a:2\nrules:\n", 2);                         // missing rule
  expect_error("map:\n0 -> 0\n", 1);                                    // no components
  expect_error("components: a:2\n@\n", 2);                              // bad character
}

TEST_CASE("column positions point at the offending token") {
  try {
    parse("components: a:2\nmap:\n0 -> 9\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 6);
  }
}

TEST_CASE("render and parse round-trip byte for byte") {
  for (const std::string& id : example_ids()) {
    const MultivaluedMap f = example(id).map;
    const std::string once = render_table(f);
    const NetworkDocument doc = parse(once);
    CHECK(doc.to_map() == f);
    CHECK(render_table(doc.to_map()) == once);
  }
}

TEST_CASE("partial conversions print only their defined rows") {
  const auto fig1 = example("fig1").map;
  const std::string text = render_table(partial_conversion(fig1));
  CHECK(text.find("0 1 0 ->") == std::string::npos);  // non-admissible row absent
  CHECK(text.find("1 1 1 -> 1 1 1") != std::string::npos);
}

TEST_CASE("DOT export of an empty graph") {
  const std::string dot = export_dot(SignedDigraph(0));
  CHECK(dot == "digraph interaction {\n}\n");
}

TEST_CASE("DOT exports match the golden files") {
  const auto fig1 = example("fig1").map;
  CHECK(export_dot(global_graph(fig1)) == read_file(source_path("tests/golden/fig1_global.dot")));

  const auto richard = example("richard_stepwise").map;
  CHECK(export_dot(global_graph(extend_via_psi(richard))) ==
        read_file(source_path("tests/golden/richard_extension_global.dot")));

  const auto two_minus_x = example("two_minus_x").map;
  CHECK(export_dot(build_async(two_minus_x)) ==
        read_file(source_path("tests/golden/two_minus_x_async.dot")));
}

TEST_CASE("DOT output is stable across runs") {
  const auto richard = example("richard_stepwise").map;
  const std::string first = export_dot(global_graph(extend_via_psi(richard)));
  const std::string second = export_dot(global_graph(extend_via_psi(example("richard_stepwise").map)));
  CHECK(first == second);
  CHECK(first.find("style=dashed") != std::string::npos);
}

TEST_CASE("negative edges are dashed exactly on the cross-block interactions") {
  const auto richard = example("richard_stepwise").map;
  const SignedDigraph g = global_graph(extend_via_psi(richard));
  for (const SignedEdge& e : g.edges()) {
    const bool cross_down = g.block_of(e.from) == 1 && g.block_of(e.to) == 2;
    CHECK((e.sign < 0) == cross_down);
  }
}
