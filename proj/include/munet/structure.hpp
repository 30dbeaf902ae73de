#pragma once

// Structural analysis of a semidirected network: undirected-connectivity
// classes, the contraction digraph over classes, root components, and
// validation.
//
// Acyclicity is decided as: every class induces an undirected tree, and the
// contraction is a DAG. An undirected cycle is itself a semidirected cycle,
// and once the undirected parts are forests any remaining semidirected cycle
// survives contraction, so the two checks together are equivalent to the
// absence of semidirected cycles.

#include <algorithm>
#include <queue>
#include <string>
#include <vector>

#include "munet/network.hpp"

namespace munet {

// Partition of the nodes into undirected-connectivity classes.
struct UndirectedClasses {
  int count = 0;
  std::vector<int> class_of;                    // node -> class
  std::vector<std::vector<int>> members;        // class -> nodes
  std::vector<std::vector<int>> internal_edges; // class -> undirected edge ids
  std::vector<bool> is_tree;                    // class induces a tree?
};

inline UndirectedClasses undirected_classes(const Network& net) {
  UndirectedClasses c;
  int n = net.node_count();
  c.class_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (c.class_of[v] >= 0) continue;
    int id = c.count++;
    std::vector<int> stack{v};
    c.class_of[v] = id;
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      for (int e : net.incident_edges(w)) {
        if (net.edge(e).kind != EdgeKind::Undirected) continue;
        int o = net.edge(e).other(w);
        if (c.class_of[o] < 0) {
          c.class_of[o] = id;
          stack.push_back(o);
        }
      }
    }
  }
  c.members.assign(c.count, {});
  for (int v = 0; v < n; ++v) c.members[c.class_of[v]].push_back(v);
  c.internal_edges.assign(c.count, {});
  for (int e = 0; e < net.edge_count(); ++e)
    if (net.edge(e).kind == EdgeKind::Undirected)
      c.internal_edges[c.class_of[net.edge(e).u]].push_back(e);
  c.is_tree.assign(c.count, true);
  for (int k = 0; k < c.count; ++k)
    c.is_tree[k] = c.internal_edges[k].size() + 1 == c.members[k].size();
  return c;
}

// Directed graph over classes: one arc per directed edge (multi-arcs and
// self-loops preserved; a self-loop marks a directed edge inside a class).
struct Contraction {
  UndirectedClasses classes;
  struct Arc {
    int from, to, edge;
  };
  std::vector<Arc> arcs;
  std::vector<int> in_degree;          // per class, self-loops included
  std::vector<int> topo_order;         // classes, sources first (valid iff acyclic)
  bool acyclic = false;
  bool has_self_loop = false;
};

inline Contraction contraction(const Network& net) {
  Contraction g;
  g.classes = undirected_classes(net);
  int k = g.classes.count;
  g.in_degree.assign(k, 0);
  std::vector<std::vector<int>> out(k);
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    if (ed.kind != EdgeKind::Directed) continue;
    int cu = g.classes.class_of[ed.u], cv = g.classes.class_of[ed.v];
    g.arcs.push_back({cu, cv, e});
    out[cu].push_back(cv);
    ++g.in_degree[cv];
    if (cu == cv) g.has_self_loop = true;
  }
  // Kahn's algorithm.
  std::vector<int> indeg = g.in_degree;
  std::queue<int> q;
  for (int c = 0; c < k; ++c)
    if (indeg[c] == 0) q.push(c);
  while (!q.empty()) {
    int c = q.front();
    q.pop();
    g.topo_order.push_back(c);
    for (int d : out[c])
      if (--indeg[d] == 0) q.push(d);
  }
  g.acyclic = static_cast<int>(g.topo_order.size()) == k && !g.has_self_loop;
  return g;
}

// A source class of the contraction: an undirected tree marking the possible
// root placements. Admissible edges are its internal edges plus the edges of
// the network adjacent to it (all outgoing).
struct RootComponent {
  int class_id = -1;
  std::vector<int> nodes;
  std::vector<int> internal_edges;
  std::vector<int> admissible_edges;
  bool trivial = false;
  bool resolved = false;
};

inline std::vector<RootComponent> root_components(const Network& net, const Contraction& g) {
  std::vector<RootComponent> comps;
  for (int c = 0; c < g.classes.count; ++c) {
    if (g.in_degree[c] != 0) continue;
    RootComponent rc;
    rc.class_id = c;
    rc.nodes = g.classes.members[c];
    rc.internal_edges = g.classes.internal_edges[c];
    rc.admissible_edges = rc.internal_edges;
    for (int v : rc.nodes)
      for (int e : net.incident_edges(v))
        if (net.edge(e).kind == EdgeKind::Directed) rc.admissible_edges.push_back(e);
    std::sort(rc.admissible_edges.begin(), rc.admissible_edges.end());
    rc.trivial = rc.nodes.size() == 1;
    int deg = rc.trivial ? net.degree(rc.nodes[0]) : -1;
    rc.resolved = rc.trivial && (deg == 0 || deg == 2);
    comps.push_back(std::move(rc));
  }
  return comps;
}

inline std::vector<RootComponent> root_components(const Network& net) {
  return root_components(net, contraction(net));
}

// --- Validation -------------------------------------------------------------

enum class ViolationCode {
  UndirectedCycle,
  DirectedCycleInContraction,
  NotComplete,
  NotBinary,
  LabelReuse,
  DanglingEdge,
  UnlabeledLeaf,
  LabelOnNonLeaf,
  HybridLeaf,
};

inline const char* to_string(ViolationCode c) {
  switch (c) {
    case ViolationCode::UndirectedCycle: return "UndirectedCycle";
    case ViolationCode::DirectedCycleInContraction: return "DirectedCycleInContraction";
    case ViolationCode::NotComplete: return "NotComplete";
    case ViolationCode::NotBinary: return "NotBinary";
    case ViolationCode::LabelReuse: return "LabelReuse";
    case ViolationCode::DanglingEdge: return "DanglingEdge";
    case ViolationCode::UnlabeledLeaf: return "UnlabeledLeaf";
    case ViolationCode::LabelOnNonLeaf: return "LabelOnNonLeaf";
    case ViolationCode::HybridLeaf: return "HybridLeaf";
  }
  return "?";
}

struct Violation {
  ViolationCode code;
  std::string message;
  std::vector<std::string> ids;  // offending node ids
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(ViolationCode code, std::string message, std::vector<std::string> ids = {}) {
    ok = false;
    violations.push_back({code, std::move(message), std::move(ids)});
  }
};

// Checks, in order: each class is an undirected tree, the contraction is a
// DAG, labeling is leaf-only and total on leaves, completeness (multi-node
// classes have no incoming arcs), and the binary degree constraints unless
// allow_nonbinary. Isolated labeled nodes are both roots and leaves and pass
// every check.
inline ValidationReport validate(const Network& net, bool allow_nonbinary = false) {
  ValidationReport rep;
  Contraction g = contraction(net);

  for (int c = 0; c < g.classes.count; ++c)
    if (!g.classes.is_tree[c]) {
      std::vector<std::string> ids;
      for (int v : g.classes.members[c]) ids.push_back(net.node_id(v));
      rep.add(ViolationCode::UndirectedCycle, "undirected-connectivity class is not a tree",
              std::move(ids));
    }
  if (!g.acyclic)
    rep.add(ViolationCode::DirectedCycleInContraction,
            g.has_self_loop ? "directed edge inside an undirected class"
                            : "contraction contains a directed cycle");

  for (int v = 0; v < net.node_count(); ++v) {
    const std::string* label = net.label_of(v);
    if (label) {
      if (net.deg_out(v) > 0 || net.deg_und(v) > 0)
        rep.add(ViolationCode::LabelOnNonLeaf, "labeled node '" + net.node_id(v) + "' is not a leaf",
                {net.node_id(v)});
      else if (net.deg_in(v) > 1)
        rep.add(ViolationCode::HybridLeaf, "labeled node '" + net.node_id(v) + "' has in-degree > 1",
                {net.node_id(v)});
    } else if (net.is_leaf(v)) {
      rep.add(ViolationCode::UnlabeledLeaf, "leaf '" + net.node_id(v) + "' has no label",
              {net.node_id(v)});
    }
  }

  for (int c = 0; c < g.classes.count; ++c)
    if (g.classes.members[c].size() > 1 && g.in_degree[c] > 0) {
      std::vector<std::string> ids;
      for (int v : g.classes.members[c]) ids.push_back(net.node_id(v));
      rep.add(ViolationCode::NotComplete,
              "undirected class with more than one node has incoming directed edges",
              std::move(ids));
    }

  if (!allow_nonbinary) {
    for (int v = 0; v < net.node_count(); ++v) {
      int deg = net.degree(v);
      if (net.is_root(v)) {
        if (deg != 0 && deg != 2 && deg != 3)
          rep.add(ViolationCode::NotBinary,
                  "root '" + net.node_id(v) + "' has degree " + std::to_string(deg),
                  {net.node_id(v)});
      } else if (net.is_leaf(v)) {
        if (deg != 1)
          rep.add(ViolationCode::NotBinary,
                  "leaf '" + net.node_id(v) + "' has degree " + std::to_string(deg),
                  {net.node_id(v)});
      } else if (deg != 3) {
        rep.add(ViolationCode::NotBinary,
                "internal node '" + net.node_id(v) + "' has degree " + std::to_string(deg),
                {net.node_id(v)});
      }
    }
  }
  return rep;
}

inline void require_valid(const Network& net, bool allow_nonbinary = false) {
  ValidationReport rep = validate(net, allow_nonbinary);
  if (!rep.ok)
    throw PreconditionError(std::string("invalid network: ") + rep.violations.front().message);
}

}  // namespace munet
