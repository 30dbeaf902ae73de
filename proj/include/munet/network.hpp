#pragma once

// Data model for semidirected networks over a fixed, ordered taxon set.
//
// A network is a multigraph whose edges are either directed or undirected.
// Nodes carry opaque string ids (preserved verbatim from input); leaves may
// carry a taxon label. The taxon list fixes the coordinate order used by all
// path-count vectors: coordinate 0 counts paths to hybrid nodes, coordinate
// i >= 1 counts paths to the leaf labeled taxa()[i-1]. Labels are drawn from
// the taxon list but need not exhaust it, so a network can lose leaves under
// reduction while its coordinate system stays put.
//
// Values are immutable once built; every algorithm in this library takes a
// const Network& and returns fresh values.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "munet/errors.hpp"

namespace munet {

enum class EdgeKind { Directed, Undirected };

struct Edge {
  int u = -1;  // tail for directed edges, first endpoint otherwise
  int v = -1;  // head for directed edges, second endpoint otherwise
  EdgeKind kind = EdgeKind::Directed;

  int other(int node) const { return node == u ? v : u; }
};

class NetworkBuilder;

class Network {
 public:
  int node_count() const { return static_cast<int>(ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& node_id(int v) const { return ids_[v]; }
  int node_index(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
  }

  // Label of node v, or nullptr if unlabeled.
  const std::string* label_of(int v) const {
    return labels_[v].has_value() ? &*labels_[v] : nullptr;
  }
  // Node currently labeled `label`, or -1.
  int node_with_label(const std::string& label) const {
    auto it = label_index_.find(label);
    return it == label_index_.end() ? -1 : it->second;
  }

  const std::vector<std::string>& taxa() const { return taxa_; }
  // 1-based vector coordinate of a taxon, 0 if not a taxon of this network.
  int taxon_coord(const std::string& label) const {
    auto it = taxon_coord_.find(label);
    return it == taxon_coord_.end() ? 0 : it->second;
  }

  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& incident_edges(int v) const { return incident_[v]; }

  int deg_in(int v) const { return deg_in_[v]; }
  int deg_out(int v) const { return deg_out_[v]; }
  int deg_und(int v) const { return deg_und_[v]; }
  int degree(int v) const { return deg_in_[v] + deg_out_[v] + deg_und_[v]; }

  bool is_root(int v) const { return deg_in_[v] == 0 && deg_und_[v] == 0; }
  bool is_leaf(int v) const { return deg_out_[v] == 0 && deg_und_[v] == 0; }
  bool is_hybrid(int v) const { return deg_in_[v] > 1; }
  bool is_isolated(int v) const { return degree(v) == 0; }

  // Unique incoming directed edge of v, or -1 when deg_in(v) != 1.
  int parent_edge(int v) const {
    if (deg_in_[v] != 1) return -1;
    for (int e : incident_[v])
      if (edges_[e].kind == EdgeKind::Directed && edges_[e].v == v) return e;
    return -1;
  }
  // Tail of the unique incoming edge, or -1.
  int parent_of(int v) const {
    int e = parent_edge(v);
    return e < 0 ? -1 : edges_[e].u;
  }

  std::vector<int> leaves() const {
    std::vector<int> out;
    for (int v = 0; v < node_count(); ++v)
      if (is_leaf(v) && labels_[v].has_value()) out.push_back(v);
    return out;
  }

  bool is_trivial_forest() const {
    for (int v = 0; v < node_count(); ++v)
      if (!is_isolated(v) || !labels_[v].has_value()) return false;
    return true;
  }

 private:
  friend class NetworkBuilder;
  std::vector<std::string> ids_;
  std::vector<std::optional<std::string>> labels_;
  std::map<std::string, int> index_;
  std::map<std::string, int> label_index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> deg_in_, deg_out_, deg_und_;
  std::vector<std::string> taxa_;
  std::map<std::string, int> taxon_coord_;
};

class NetworkBuilder {
 public:
  // Declares a node; no-op if already present.
  int node(const std::string& id) {
    auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    int v = static_cast<int>(ids_.size());
    ids_.push_back(id);
    labels_.emplace_back();
    index_[id] = v;
    return v;
  }

  void leaf(const std::string& id, const std::string& label) {
    int v = node(id);
    if (labels_[v].has_value()) {
      if (*labels_[v] != label)
        throw PreconditionError("node '" + id + "' declared with two labels");
      return;
    }
    if (used_labels_.count(label))
      throw PreconditionError("duplicate leaf label '" + label + "'");
    labels_[v] = label;
    used_labels_.insert(label);
  }

  void directed(const std::string& u, const std::string& v) {
    edges_.push_back({node(u), node(v), EdgeKind::Directed});
  }

  void undirected(const std::string& u, const std::string& v) {
    edges_.push_back({node(u), node(v), EdgeKind::Undirected});
  }

  void taxa(std::vector<std::string> order) { taxa_order_ = std::move(order); }

  Network build() const {
    Network net;
    net.ids_ = ids_;
    net.labels_ = labels_;
    net.index_ = index_;
    net.edges_ = edges_;
    for (int v = 0; v < static_cast<int>(ids_.size()); ++v)
      if (labels_[v].has_value()) net.label_index_[*labels_[v]] = v;

    if (taxa_order_.has_value()) {
      std::set<std::string> seen;
      for (const auto& t : *taxa_order_)
        if (!seen.insert(t).second)
          throw PreconditionError("duplicate taxon '" + t + "' in taxon ordering");
      for (const auto& l : used_labels_)
        if (!seen.count(l))
          throw PreconditionError("taxon ordering is missing used label '" + l + "'");
      net.taxa_ = *taxa_order_;
    } else {
      net.taxa_.assign(used_labels_.begin(), used_labels_.end());  // sorted by set order
    }
    for (int i = 0; i < static_cast<int>(net.taxa_.size()); ++i)
      net.taxon_coord_[net.taxa_[i]] = i + 1;

    int n = net.node_count();
    net.incident_.assign(n, {});
    net.deg_in_.assign(n, 0);
    net.deg_out_.assign(n, 0);
    net.deg_und_.assign(n, 0);
    for (int e = 0; e < net.edge_count(); ++e) {
      const Edge& ed = net.edges_[e];
      net.incident_[ed.u].push_back(e);
      if (ed.v != ed.u) net.incident_[ed.v].push_back(e);
      if (ed.kind == EdgeKind::Directed) {
        ++net.deg_out_[ed.u];
        ++net.deg_in_[ed.v];
      } else {
        ++net.deg_und_[ed.u];
        ++net.deg_und_[ed.v];
      }
    }
    return net;
  }

 private:
  std::vector<std::string> ids_;
  std::vector<std::optional<std::string>> labels_;
  std::map<std::string, int> index_;
  std::set<std::string> used_labels_;
  std::vector<Edge> edges_;
  std::optional<std::vector<std::string>> taxa_order_;
};

// --- .sdnet file format ---------------------------------------------------
//
// Line-oriented, UTF-8, '#' starts a comment. Tokens are whitespace-separated
// and may not contain whitespace or '#'.
//   L <nodeid> <label>     leaf label (alone, declares an isolated leaf)
//   D <u> <v>              directed edge u -> v
//   U <u> <v>              undirected edge
//   T <label1> <label2>... explicit taxon ordering (superset of used labels)
// Duplicate D/U lines create parallel edges.

inline Network parse_sdnet(const std::string& text) {
  NetworkBuilder b;
  bool have_taxa = false;
  int line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "L") {
      std::string id, label;
      if (!(ls >> id >> label)) throw ParseError("L line needs <nodeid> <label>", line_no, 1);
      try {
        b.leaf(id, label);
      } catch (const PreconditionError& e) {
        throw ParseError(e.what(), line_no, 1);
      }
    } else if (tok == "D" || tok == "U") {
      std::string u, v;
      if (!(ls >> u >> v)) throw ParseError(tok + " line needs <u> <v>", line_no, 1);
      if (tok == "D")
        b.directed(u, v);
      else
        b.undirected(u, v);
    } else if (tok == "T") {
      if (have_taxa) throw ParseError("duplicate T line", line_no, 1);
      std::vector<std::string> order;
      std::string t;
      while (ls >> t) order.push_back(t);
      if (order.empty()) throw ParseError("T line needs at least one label", line_no, 1);
      b.taxa(order);
      have_taxa = true;
    } else {
      throw ParseError("unknown record '" + tok + "'", line_no, 1);
    }
    std::string extra;
    if (tok != "T" && (ls >> extra)) throw ParseError("trailing token '" + extra + "'", line_no, 1);
  }
  try {
    return b.build();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), line_no, 1);
  }
}

inline std::string serialize_sdnet(const Network& net) {
  std::ostringstream out;
  out << "T";
  for (const auto& t : net.taxa()) out << ' ' << t;
  out << '\n';
  for (const auto& t : net.taxa()) {
    int v = net.node_with_label(t);
    if (v >= 0) out << "L " << net.node_id(v) << ' ' << t << '\n';
  }
  for (const Edge& e : net.edges())
    out << (e.kind == EdgeKind::Directed ? "D " : "U ") << net.node_id(e.u) << ' '
        << net.node_id(e.v) << '\n';
  return out.str();
}

}  // namespace munet
