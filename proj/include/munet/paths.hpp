#pragma once

// Counting semidirected paths. A path traverses directed edges forward only
// and undirected edges either way, and repeats no node; the zero-length path
// counts. Undirected edges live only inside root components of a complete
// network, so a path wanders the tree of at most one class and then descends
// through the directed part, never re-entering any class. That makes counts
// computable by one reverse-topological sweep of the contraction:
//
//   count(v, x) = base(v, x) + sum over exits w->z with w ~ v of count(z, x)
//
// where base contributes 1 when v itself matches the target, and classes with
// more than one node share one exit sum. One sweep per target coordinate
// gives all n+1 coordinates in O(n * |E|).

#include <optional>
#include <string>
#include <vector>

#include "munet/counts.hpp"
#include "munet/errors.hpp"
#include "munet/network.hpp"
#include "munet/structure.hpp"

namespace munet {

// Leaf(i) for coordinate i in 1..n, or AnyHybrid (coordinate 0).
struct PathTarget {
  int coord = 0;
  static PathTarget any_hybrid() { return {0}; }
  static PathTarget leaf(int coord) { return {coord}; }
};

using CountVector = std::vector<Count>;  // length n+1, coordinate 0 = hybrids

namespace detail {

// count(v, x) for every node v and every coordinate x at once.
inline std::vector<CountVector> all_path_counts(const Network& net, const Contraction& g) {
  int n = static_cast<int>(net.taxa().size());
  std::vector<CountVector> vec(net.node_count(), CountVector(n + 1, 0));
  for (auto it = g.topo_order.rbegin(); it != g.topo_order.rend(); ++it) {
    int c = *it;
    CountVector sum(n + 1, 0);
    for (int w : g.classes.members[c])
      for (int e : net.incident_edges(w)) {
        const Edge& ed = net.edge(e);
        if (ed.kind != EdgeKind::Directed || ed.u != w) continue;
        for (int x = 0; x <= n; ++x) sum[x] = checked_add(sum[x], vec[ed.v][x]);
      }
    for (int w : g.classes.members[c]) {
      vec[w] = sum;
      if (net.is_hybrid(w)) vec[w][0] = checked_add(vec[w][0], 1);
      if (const std::string* lab = net.label_of(w)) {
        int coord = net.taxon_coord(*lab);
        if (coord > 0) vec[w][coord] = checked_add(vec[w][coord], 1);
      }
    }
  }
  return vec;
}

inline std::vector<CountVector> all_path_counts(const Network& net) {
  return all_path_counts(net, contraction(net));
}

// count(v, target-node p) for every v: 1 exactly when p is reachable, and p
// is reachable from v iff v ~ p or some exit of [v] reaches it.
inline std::vector<Count> counts_to_node(const Network& net, const Contraction& g, int p) {
  std::vector<Count> cnt(net.node_count(), 0);
  for (auto it = g.topo_order.rbegin(); it != g.topo_order.rend(); ++it) {
    int c = *it;
    Count sum = 0;
    for (int w : g.classes.members[c])
      for (int e : net.incident_edges(w)) {
        const Edge& ed = net.edge(e);
        if (ed.kind == EdgeKind::Directed && ed.u == w) sum = checked_add(sum, cnt[ed.v]);
      }
    bool contains_p = g.classes.class_of[p] == c;
    for (int w : g.classes.members[c]) cnt[w] = contains_p ? 1 : sum;
  }
  return cnt;
}

// Nodes on `side_node`'s side of the class tree once `split_edge` is removed.
inline std::vector<int> class_side(const Network& net, int side_node, int split_edge) {
  std::vector<int> side{side_node};
  std::vector<bool> seen(net.node_count(), false);
  seen[side_node] = true;
  for (size_t i = 0; i < side.size(); ++i)
    for (int e : net.incident_edges(side[i])) {
      if (e == split_edge || net.edge(e).kind != EdgeKind::Undirected) continue;
      int o = net.edge(e).other(side[i]);
      if (!seen[o]) {
        seen[o] = true;
        side.push_back(o);
      }
    }
  return side;
}

}  // namespace detail

inline int require_node(const Network& net, const std::string& id) {
  int v = net.node_index(id);
  if (v < 0) throw PreconditionError("unknown node '" + id + "'");
  return v;
}

inline void require_target(const Network& net, PathTarget target) {
  if (target.coord < 0 || target.coord > static_cast<int>(net.taxa().size()))
    throw PreconditionError("path target coordinate out of range");
}

inline Count count_paths(const Network& net, const std::string& from, PathTarget target) {
  int v = require_node(net, from);
  require_target(net, target);
  return detail::all_path_counts(net)[v][target.coord];
}

// Paths from `from` to the target that avoid edge e. For a directed edge
// p -> q every path through e factors uniquely into a prefix reaching p and a
// suffix from q, disjoint by acyclicity, so the count is
// count(from, x) - count(from, p) * count(q, x). For an undirected edge the
// restriction only bites when `from` lies in the same class, where it limits
// the tree wander to one side of the split.
inline Count count_paths_avoiding(const Network& net, const std::string& from, PathTarget target,
                                  int avoid_edge) {
  int v = require_node(net, from);
  require_target(net, target);
  if (avoid_edge < 0 || avoid_edge >= net.edge_count())
    throw PreconditionError("unknown edge " + std::to_string(avoid_edge));
  Contraction g = contraction(net);
  auto vec = detail::all_path_counts(net, g);
  const Edge& e = net.edge(avoid_edge);
  int x = target.coord;
  if (e.kind == EdgeKind::Directed) {
    Count through = checked_mul(detail::counts_to_node(net, g, e.u)[v], vec[e.v][x]);
    return checked_sub(vec[v][x], through);
  }
  if (g.classes.class_of[v] != g.classes.class_of[e.u]) return vec[v][x];
  Count total = 0;
  for (int w : detail::class_side(net, v, avoid_edge))
    for (int ei : net.incident_edges(w)) {
      const Edge& ed = net.edge(ei);
      if (ed.kind == EdgeKind::Directed && ed.u == w) total = checked_add(total, vec[ed.v][x]);
    }
  return total;
}

// Exhaustive depth-first enumeration of the same path sets, used as the
// independent oracle for the sweep above. Returns each path as its edge-id
// sequence (the zero-length path is the empty sequence).
inline std::vector<std::vector<int>> enumerate_paths_oracle(const Network& net,
                                                            const std::string& from,
                                                            PathTarget target,
                                                            std::optional<int> avoid = {}) {
  if (net.edge_count() > 64)
    throw GuardError("enumerate_paths_oracle: network exceeds 64-edge guard");
  int start = require_node(net, from);
  require_target(net, target);
  if (avoid && (*avoid < 0 || *avoid >= net.edge_count()))
    throw PreconditionError("unknown edge " + std::to_string(*avoid));

  auto matches = [&](int v) {
    if (target.coord == 0) return net.is_hybrid(v);
    const std::string* lab = net.label_of(v);
    return lab && net.taxon_coord(*lab) == target.coord;
  };

  std::vector<std::vector<int>> result;
  std::vector<int> path;
  std::vector<bool> visited(net.node_count(), false);

  auto dfs = [&](auto&& self, int v) -> void {
    visited[v] = true;
    if (matches(v)) result.push_back(path);
    for (int e : net.incident_edges(v)) {
      if (avoid && e == *avoid) continue;
      const Edge& ed = net.edge(e);
      if (ed.kind == EdgeKind::Directed && ed.u != v) continue;
      int o = ed.other(v);
      if (visited[o]) continue;
      path.push_back(e);
      self(self, o);
      path.pop_back();
    }
    visited[v] = false;
  };
  dfs(dfs, start);
  return result;
}

}  // namespace munet
