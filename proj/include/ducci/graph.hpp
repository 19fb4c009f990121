#pragma once

// Functional graph of D: one edge u -> D(u) per tuple. Each weakly connected
// component is a single cycle with trees hanging off its nodes.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ducci/tuple.hpp"

namespace ducci {

inline constexpr std::uint64_t kDefaultNodeBudget = std::uint64_t{1} << 20;

struct ComponentSummary {
  std::uint64_t cycle_length = 0;
  std::uint64_t node_count = 0;
  // Size of each cycle node's hanging tree, counting the cycle node itself.
  // Set only when every cycle node has the same tree size.
  std::optional<std::uint64_t> tree_size;
  std::uint64_t max_depth = 0;
};

// Full graph on Z_m^n. Node ids are TupleSpace indices (x_1 most
// significant), so id order is lexicographic order.
class TransitionGraph {
 public:
  using Node = std::uint32_t;

  // Throws BudgetError when m^n > budget.
  static TransitionGraph build(Modulus modulus, std::size_t n,
                               std::uint64_t budget = kDefaultNodeBudget);

  const TupleSpace& space() const noexcept { return space_; }
  std::uint64_t node_count() const noexcept { return successor_.size(); }
  Tuple tuple(Node v) const { return space_.at(v); }
  Node node(const Tuple& u) const;

  Node successor(Node v) const { return successor_[v]; }
  // Distance along the forward orbit to the cycle; equals Len.
  std::uint32_t depth(Node v) const { return depth_[v]; }
  bool in_cycle(Node v) const { return depth_[v] == 0; }
  std::uint32_t in_degree(Node v) const { return in_degree_[v]; }
  // The cycle node whose hanging tree contains v.
  Node cycle_root(Node v) const { return root_[v]; }
  // Smallest node id in v's component.
  Node component(Node v) const { return component_[v]; }

  // Component labels in ascending order.
  std::vector<Node> component_labels() const;
  // Nodes of a component, ascending.
  std::vector<Node> component_nodes(Node label) const;
  ComponentSummary summarize(Node label) const;

 private:
  explicit TransitionGraph(TupleSpace space) : space_(std::move(space)) {}

  TupleSpace space_;
  std::vector<Node> successor_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> in_degree_;
  std::vector<Node> root_;
  std::vector<Node> component_;
};

// One component, found from a member without materializing Z_m^n: walk to the
// cycle, then grow the hanging trees backwards with the predecessor solver.
struct Component {
  Modulus modulus{2};
  std::size_t n = 1;
  // Ascending lexicographic order.
  std::vector<Tuple> nodes;
  // Positions into `nodes`.
  std::vector<std::size_t> successor;
  std::vector<std::uint64_t> depth;
  std::vector<std::uint32_t> in_degree;
  ComponentSummary summary;

  bool in_cycle(std::size_t i) const { return depth[i] == 0; }
  // Position of u in `nodes`, or nullopt.
  std::optional<std::size_t> find(const Tuple& u) const;
};

// Throws BudgetError if the component has more than `budget` nodes.
Component component_of(const Tuple& u, std::uint64_t budget = kDefaultNodeBudget);

// DOT digraph: node declarations in lexicographic order (cycle nodes get
// shape=doublecircle), then one successor edge per node in the same order.
// Throws IoError if the stream fails.
void export_dot(const TransitionGraph& graph, std::ostream& out);
void export_dot(const Component& component, std::ostream& out);

}  // namespace ducci
