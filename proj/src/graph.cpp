#include "ducci/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "ducci/dynamics.hpp"
#include "ducci/error.hpp"
#include "ducci/predecessors.hpp"

namespace ducci {

namespace {

constexpr std::uint32_t kUnset = ~std::uint32_t{0};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::uint32_t find(std::uint32_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // The smaller root wins, so every root is its set's smallest member.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// Per-cycle-node tree sizes -> (uniform size or nullopt).
std::optional<std::uint64_t> uniform_size(const std::vector<std::uint64_t>& sizes) {
  if (sizes.empty()) return std::nullopt;
  for (std::uint64_t s : sizes) {
    if (s != sizes.front()) return std::nullopt;
  }
  return sizes.front();
}

void write_dot(std::ostream& out, std::size_t count, auto label, auto successor, auto cycle) {
  out << "digraph ducci {\n";
  for (std::size_t i = 0; i < count; ++i) {
    out << "  \"" << label(i) << "\"";
    if (cycle(i)) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (std::size_t i = 0; i < count; ++i) {
    out << "  \"" << label(i) << "\" -> \"" << label(successor(i)) << "\";\n";
  }
  out << "}\n";
  if (!out) throw IoError("failed to write DOT output");
}

}  // namespace

TransitionGraph TransitionGraph::build(Modulus modulus, std::size_t n, std::uint64_t budget) {
  const std::uint64_t size = space_size(modulus, n);
  if (size > budget) {
    throw BudgetError("transition graph on " + std::to_string(size) +
                      " nodes exceeds the budget of " + std::to_string(budget));
  }
  if (size >= kUnset) throw BudgetError("transition graph too large for 32-bit node ids");

  TransitionGraph g{TupleSpace(modulus, n)};
  g.successor_.resize(size);
  successor_indices(g.space_, 0, g.successor_);

  g.in_degree_.assign(size, 0);
  for (Node s : g.successor_) ++g.in_degree_[s];

  // Cycle nodes: follow each unvisited path until it meets a visited node;
  // if it meets its own path, the tail from that point is a cycle.
  g.depth_.assign(size, kUnset);
  g.root_.assign(size, kUnset);
  std::vector<std::uint32_t> path_mark(size, kUnset);
  std::vector<Node> path;
  for (Node start = 0; start < size; ++start) {
    if (path_mark[start] != kUnset) continue;
    path.clear();
    Node v = start;
    while (path_mark[v] == kUnset) {
      path_mark[v] = start;
      path.push_back(v);
      v = g.successor_[v];
    }
    if (path_mark[v] == start) {
      for (auto it = std::find(path.begin(), path.end(), v); it != path.end(); ++it) {
        g.depth_[*it] = 0;
        g.root_[*it] = *it;
      }
    }
  }

  // Reverse BFS from the cycles over predecessor lists.
  std::vector<std::uint32_t> start_at(size + 1, 0);
  for (Node s : g.successor_) ++start_at[s + 1];
  for (std::uint64_t i = 0; i < size; ++i) start_at[i + 1] += start_at[i];
  std::vector<Node> preds(size);
  {
    std::vector<std::uint32_t> fill(start_at.begin(), start_at.end() - 1);
    for (Node v = 0; v < size; ++v) preds[fill[g.successor_[v]]++] = v;
  }
  std::deque<Node> queue;
  for (Node v = 0; v < size; ++v) {
    if (g.depth_[v] == 0) queue.push_back(v);
  }
  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop_front();
    for (std::uint32_t k = start_at[v]; k < start_at[v + 1]; ++k) {
      const Node p = preds[k];
      if (g.depth_[p] != kUnset) continue;
      g.depth_[p] = g.depth_[v] + 1;
      g.root_[p] = g.root_[v];
      queue.push_back(p);
    }
  }

  DisjointSets sets(size);
  for (Node v = 0; v < size; ++v) sets.unite(v, g.successor_[v]);
  g.component_.resize(size);
  for (Node v = 0; v < size; ++v) g.component_[v] = sets.find(v);
  return g;
}

TransitionGraph::Node TransitionGraph::node(const Tuple& u) const {
  if (!(u.modulus() == space_.modulus()) || u.size() != space_.dimension()) {
    throw DimensionError("tuple " + to_string(u) + " is not a node of this graph");
  }
  return static_cast<Node>(space_.encode(u));
}

std::vector<TransitionGraph::Node> TransitionGraph::component_labels() const {
  std::vector<Node> labels;
  for (Node v = 0; v < node_count(); ++v) {
    if (component_[v] == v) labels.push_back(v);
  }
  return labels;
}

std::vector<TransitionGraph::Node> TransitionGraph::component_nodes(Node label) const {
  std::vector<Node> nodes;
  for (Node v = 0; v < node_count(); ++v) {
    if (component_[v] == label) nodes.push_back(v);
  }
  return nodes;
}

ComponentSummary TransitionGraph::summarize(Node label) const {
  ComponentSummary s;
  std::unordered_map<Node, std::uint64_t> tree;
  for (Node v : component_nodes(label)) {
    ++s.node_count;
    ++tree[root_[v]];
    if (depth_[v] == 0) ++s.cycle_length;
    s.max_depth = std::max<std::uint64_t>(s.max_depth, depth_[v]);
  }
  std::vector<std::uint64_t> sizes;
  for (const auto& [root, count] : tree) sizes.push_back(count);
  s.tree_size = uniform_size(sizes);
  return s;
}

std::optional<std::size_t> Component::find(const Tuple& u) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
  if (it == nodes.end() || !(*it == u)) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

Component component_of(const Tuple& u, std::uint64_t budget) {
  const CycleInfo info = len_per(u);
  if (info.per > budget) {
    throw BudgetError("cycle of length " + std::to_string(info.per) +
                      " exceeds the node budget of " + std::to_string(budget));
  }

  struct Found {
    std::uint64_t depth;
    std::size_t root;  // discovery position of the cycle node
  };
  std::unordered_map<Tuple, Found, TupleHash> found;
  std::vector<Tuple> order;
  std::deque<std::size_t> queue;

  Tuple w = iterate(u, info.len);
  for (std::uint64_t i = 0; i < info.per; ++i) {
    found.emplace(w, Found{0, order.size()});
    queue.push_back(order.size());
    order.push_back(w);
    w = ducci_step(w);
  }
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    const Tuple v = order[at];
    const Found here = found.at(v);
    const PredecessorSet preds = predecessors(v, budget);
    if (!preds.listed) throw BudgetError("predecessor list exceeds the node budget");
    for (const Tuple& p : preds.solutions) {
      if (found.contains(p)) continue;
      if (order.size() >= budget) {
        throw BudgetError("component exceeds the node budget of " + std::to_string(budget));
      }
      found.emplace(p, Found{here.depth + 1, here.root});
      queue.push_back(order.size());
      order.push_back(p);
    }
  }

  Component c;
  c.modulus = u.modulus();
  c.n = u.size();
  c.nodes = order;
  std::sort(c.nodes.begin(), c.nodes.end());
  const std::size_t count = c.nodes.size();
  c.successor.resize(count);
  c.depth.resize(count);
  c.in_degree.assign(count, 0);
  std::vector<std::uint64_t> tree(info.per, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const Found& f = found.at(c.nodes[i]);
    c.depth[i] = f.depth;
    ++tree[f.root];
    c.successor[i] = *c.find(ducci_step(c.nodes[i]));
    ++c.in_degree[c.successor[i]];
    c.summary.max_depth = std::max(c.summary.max_depth, f.depth);
  }
  c.summary.cycle_length = info.per;
  c.summary.node_count = count;
  c.summary.tree_size = uniform_size(tree);
  return c;
}

void export_dot(const TransitionGraph& graph, std::ostream& out) {
  using Node = TransitionGraph::Node;
  write_dot(
      out, graph.node_count(), [&](std::size_t i) { return to_string(graph.tuple(static_cast<Node>(i))); },
      [&](std::size_t i) { return graph.successor(static_cast<Node>(i)); },
      [&](std::size_t i) { return graph.in_cycle(static_cast<Node>(i)); });
}

void export_dot(const Component& component, std::ostream& out) {
  write_dot(
      out, component.nodes.size(), [&](std::size_t i) { return to_string(component.nodes[i]); },
      [&](std::size_t i) { return component.successor[i]; },
      [&](std::size_t i) { return component.in_cycle(i); });
}

}  // namespace ducci
