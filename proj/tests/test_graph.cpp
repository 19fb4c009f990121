#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ducci/dynamics.hpp"
#include "ducci/error.hpp"
#include "ducci/graph.hpp"
#include "ducci/predecessors.hpp"
#include "oracle.hpp"

using namespace ducci;

namespace {

Tuple T(std::uint64_t m, std::vector<Residue> e) { return Tuple(Modulus(m), std::move(e)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("Z_4^3 full graph") {
  const TransitionGraph g = TransitionGraph::build(Modulus(4), 3);
  REQUIRE(g.node_count() == 64);
  std::map<TransitionGraph::Node, int> comps;
  for (TransitionGraph::Node v = 0; v < 64; ++v) {
    CHECK(g.tuple(g.successor(v)) == ducci_step(g.tuple(v)));
    CHECK(g.node(g.tuple(v)) == v);
    ++comps[g.component(v)];
  }
  const auto labels = g.component_labels();
  CHECK(labels.size() == comps.size());
  const auto v001 = g.node(T(4, {0, 0, 1}));
  const auto label = g.component(v001);
  CHECK(g.component(g.node(T(4, {3, 0, 3}))) == label);
  CHECK(g.component(g.node(T(4, {1, 1, 0}))) == label);
  CHECK(comps[label] == 24);
  CHECK(label == 1);  // smallest index in the component is (0,0,1)

  const ComponentSummary s = g.summarize(label);
  CHECK(s.node_count == 24);
  CHECK(s.cycle_length == 6);
  REQUIRE(s.tree_size);
  CHECK(*s.tree_size == 4);
  CHECK(s.max_depth == 2);
  CHECK(g.component_nodes(label).size() == 24);
}

TEST_CASE("depth, in-degree and leaves agree with the other modules") {
  for (auto [m, n] : {std::pair<std::uint64_t, std::size_t>{4, 3}, {6, 3}, {8, 3}, {2, 5}, {3, 3},
                      {6, 4}, {5, 2}, {12, 3}}) {
    CAPTURE(m);
    CAPTURE(n);
    const TransitionGraph g = TransitionGraph::build(Modulus(m), n);
    const unsigned l = Modulus(m).two_adic();
    for (TransitionGraph::Node v = 0; v < g.node_count(); ++v) {
      const Tuple u = g.tuple(v);
      REQUIRE(g.depth(v) == len_per(u).len);
      REQUIRE(g.in_cycle(v) == (g.depth(v) == 0));
      REQUIRE(g.in_degree(v) == predecessors(u, 1'000'000).count);
      REQUIRE(g.in_cycle(g.cycle_root(v)));
      if (n % 2 == 1 && l > 0) {
        REQUIRE((g.in_degree(v) == 0) == !u.coordinate_sum().even);
      }
    }
    if (n % 2 == 1) {
      for (auto label : g.component_labels()) {
        const ComponentSummary s = g.summarize(label);
        CHECK(s.max_depth == l);
        REQUIRE(s.tree_size);
        if (l > 0) CHECK(*s.tree_size == (1u << l));
        CHECK(s.node_count == s.cycle_length * *s.tree_size);
      }
    }
  }
}

TEST_CASE("odd modulus and odd n: a permutation") {
  const TransitionGraph g = TransitionGraph::build(Modulus(3), 3);
  for (TransitionGraph::Node v = 0; v < g.node_count(); ++v) CHECK(g.depth(v) == 0);
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(TransitionGraph::build(Modulus(4), 11, 1000), BudgetError);
  CHECK_THROWS_AS(component_of(T(1024, {0, 0, 1}), 100), BudgetError);
}

TEST_CASE("component_of matches the full graph") {
  for (auto [m, n] : {std::pair<std::uint64_t, std::size_t>{4, 3}, {6, 3}, {2, 5}, {6, 4}}) {
    const TransitionGraph g = TransitionGraph::build(Modulus(m), n);
    for (auto label : g.component_labels()) {
      const Tuple seed = g.tuple(g.component_nodes(label).back());
      const Component c = component_of(seed);
      const auto nodes = g.component_nodes(label);
      REQUIRE(c.nodes.size() == nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        REQUIRE(c.nodes[i] == g.tuple(nodes[i]));
        CHECK(c.nodes[c.successor[i]] == g.tuple(g.successor(nodes[i])));
        CHECK(c.depth[i] == g.depth(nodes[i]));
        CHECK(c.in_degree[i] == g.in_degree(nodes[i]));
      }
      const ComponentSummary s = g.summarize(label);
      CHECK(c.summary.cycle_length == s.cycle_length);
      CHECK(c.summary.node_count == s.node_count);
      CHECK(c.summary.tree_size == s.tree_size);
      CHECK(c.summary.max_depth == s.max_depth);
    }
  }
}

TEST_CASE("worked example component") {
  const Component c = component_of(T(4, {3, 0, 3}));
  CHECK(c.nodes.size() == 24);
  CHECK(c.find(T(4, {0, 0, 1})));
  CHECK(c.find(T(4, {1, 1, 0})));
  CHECK_FALSE(c.find(T(4, {0, 0, 0})));
  CHECK(c.summary.cycle_length == 6);

  // A few edges of this component, checked by hand.
  const std::vector<std::pair<std::vector<Residue>, std::vector<Residue>>> edges = {
      {{3, 0, 3}, {3, 3, 2}}, {{3, 0, 0}, {3, 0, 3}}, {{1, 2, 2}, {3, 0, 3}},
      {{1, 1, 0}, {2, 1, 1}}, {{0, 0, 1}, {0, 1, 1}}, {{2, 3, 3}, {1, 2, 1}}};
  for (const auto& [a, b] : edges) {
    const auto i = c.find(T(4, a));
    REQUIRE(i);
    CHECK(c.nodes[c.successor[*i]] == T(4, b));
  }

  const Component z = component_of(T(2, {0, 0, 0}));
  CHECK(z.nodes == std::vector<Tuple>{T(2, {0, 0, 0}), T(2, {1, 1, 1})});
  CHECK(z.summary.cycle_length == 1);
}

TEST_CASE("DOT export") {
  std::ostringstream fixed;
  export_dot(component_of(T(3, {0})), fixed);
  CHECK(fixed.str() ==
        "digraph ducci {\n  \"(0)\" [shape=doublecircle];\n  \"(0)\" -> \"(0)\";\n}\n");

  std::ostringstream empty;
  export_dot(Component{}, empty);
  CHECK(empty.str() == "digraph ducci {\n}\n");

  std::ostringstream fig;
  export_dot(component_of(T(4, {0, 0, 1})), fig);
  const std::string golden = read_file(DUCCI_GOLDEN_DIR "/z4_n3_component_001.dot");
  REQUIRE_FALSE(golden.empty());
  CHECK(fig.str() == golden);

  // Node and edge counts, independent of the golden bytes.
  std::size_t arrows = 0, cycles = 0, lines = 0;
  std::istringstream in(fig.str());
  for (std::string line; std::getline(in, line); ++lines) {
    if (line.find("->") != std::string::npos) ++arrows;
    if (line.find("doublecircle") != std::string::npos) ++cycles;
  }
  CHECK(arrows == 24);
  CHECK(cycles == 6);
  CHECK(lines == 24 + 24 + 2);

  std::ostringstream bad;
  bad.setstate(std::ios::badbit);
  CHECK_THROWS_AS(export_dot(component_of(T(3, {0})), bad), IoError);
}

}  // TEST_SUITE
