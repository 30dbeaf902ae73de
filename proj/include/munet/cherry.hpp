#pragma once

// Cherries and their typed reductions/additions, both on networks and
// directly on mu-representations.
//
// A cherry is an ordered pair of leaves (a, b). Tree cherry: a and b share a
// parent. Reticulate cherry: a's parent is hybrid and b's parent feeds it;
// the feeding edge is the cherry's internal edge, the other edge into a's
// parent its external edge. The context of b's parent p picks one of four
// suffixes:
//   (r2) p is a resolved root         (r3) p is an unresolved root
//   (d)  p's third edge is directed   (u)  p's third edge is undirected
// prefixed by T or R, giving the eight types.
//
// Reducing a cherry deletes the local structure and suppresses the freed
// degree-2 nodes; each type has an inverse addition that rebuilds it, which
// is what reconstruction replays.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "munet/mu.hpp"
#include "munet/network.hpp"
#include "munet/paths.hpp"
#include "munet/structure.hpp"

namespace munet {

enum class CherryType { TR2, TR3, TD, TU, RR2, RR3, RD, RU };

inline bool is_tree_type(CherryType t) {
  return t == CherryType::TR2 || t == CherryType::TR3 || t == CherryType::TD ||
         t == CherryType::TU;
}

inline const char* to_string(CherryType t) {
  switch (t) {
    case CherryType::TR2: return "T(r2)";
    case CherryType::TR3: return "T(r3)";
    case CherryType::TD: return "T(d)";
    case CherryType::TU: return "T(u)";
    case CherryType::RR2: return "R(r2)";
    case CherryType::RR3: return "R(r3)";
    case CherryType::RD: return "R(d)";
    case CherryType::RU: return "R(u)";
  }
  return "?";
}

inline std::optional<CherryType> cherry_type_from_string(const std::string& s) {
  for (CherryType t : {CherryType::TR2, CherryType::TR3, CherryType::TD, CherryType::TU,
                       CherryType::RR2, CherryType::RR3, CherryType::RD, CherryType::RU})
    if (s == to_string(t)) return t;
  return std::nullopt;
}

struct Cherry {
  std::string a, b;
  CherryType type = CherryType::TR2;
  // Set by network-level detection for reticulate cherries.
  int internal_edge = -1;
  int external_edge = -1;
  // Set by mu-level detection for reticulate cherries.
  std::optional<MuEntry> internal_entry;
  std::optional<MuEntry> external_entry;
};

// --- detection on networks --------------------------------------------------

namespace detail {

// Context suffix for b's parent p. third_edges = edges at p other than the
// cherry's own two. A non-root p in a complete binary network has its third
// edge either incoming directed (d) or undirected (u).
inline CherryType classify_context(const Network& net, bool tree, int p,
                                   const std::vector<int>& cherry_edges) {
  bool resolved_root = net.is_root(p) && (net.degree(p) == 0 || net.degree(p) == 2);
  if (net.is_root(p))
    return resolved_root ? (tree ? CherryType::TR2 : CherryType::RR2)
                         : (tree ? CherryType::TR3 : CherryType::RR3);
  for (int e : net.incident_edges(p)) {
    if (std::find(cherry_edges.begin(), cherry_edges.end(), e) != cherry_edges.end()) continue;
    if (net.edge(e).kind == EdgeKind::Undirected) return tree ? CherryType::TU : CherryType::RU;
    return tree ? CherryType::TD : CherryType::RD;
  }
  throw PreconditionError("cherry context: parent node has no third edge");
}

}  // namespace detail

// All ordered leaf pairs (a, b) that are cherries, sorted by taxon coordinates.
inline std::vector<Cherry> find_cherries_net(const Network& net) {
  require_valid(net);
  std::vector<Cherry> out;
  std::vector<int> leaves = net.leaves();
  for (int va : leaves) {
    int ea = net.parent_edge(va);
    if (ea < 0) continue;  // isolated
    int pa = net.edge(ea).u;
    for (int vb : leaves) {
      if (va == vb) continue;
      int eb = net.parent_edge(vb);
      if (eb < 0) continue;
      int pb = net.edge(eb).u;
      Cherry c;
      c.a = *net.label_of(va);
      c.b = *net.label_of(vb);
      if (pa == pb) {
        c.type = detail::classify_context(net, true, pb, {ea, eb});
        out.push_back(std::move(c));
      } else if (net.is_hybrid(pa)) {
        // in-edges of pa: internal from pb (smallest id if parallel), external the other
        std::vector<int> in_edges;
        for (int e : net.incident_edges(pa))
          if (net.edge(e).kind == EdgeKind::Directed && net.edge(e).v == pa) in_edges.push_back(e);
        std::sort(in_edges.begin(), in_edges.end());
        int internal = -1;
        for (int e : in_edges)
          if (net.edge(e).u == pb) {
            internal = e;
            break;
          }
        if (internal < 0) continue;
        for (int e : in_edges)
          if (e != internal) c.external_edge = e;
        c.internal_edge = internal;
        c.type = detail::classify_context(net, false, pb, {internal, eb});
        out.push_back(std::move(c));
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const Cherry& x, const Cherry& y) {
    int ax = net.taxon_coord(x.a), ay = net.taxon_coord(y.a);
    if (ax != ay) return ax < ay;
    return net.taxon_coord(x.b) < net.taxon_coord(y.b);
  });
  return out;
}

// --- reduction on networks --------------------------------------------------

namespace detail {

// Mutable copy of a network for the local surgery of reductions/additions.
struct NetEditor {
  struct ENode {
    std::string id;
    std::optional<std::string> label;
    bool alive = true;
  };
  struct EEdge {
    int u, v;
    EdgeKind kind;
    bool alive = true;
  };
  std::vector<ENode> nodes;
  std::vector<EEdge> edges;
  std::vector<std::string> taxa;
  int fresh_counter = 0;

  explicit NetEditor(const Network& net) {
    for (int v = 0; v < net.node_count(); ++v) {
      ENode n;
      n.id = net.node_id(v);
      if (const std::string* l = net.label_of(v)) n.label = *l;
      nodes.push_back(std::move(n));
      // reserved fresh-id scheme: skip past any _r<k> already present
      const std::string& id = nodes.back().id;
      if (id.size() > 2 && id[0] == '_' && id[1] == 'r') {
        int k = std::atoi(id.c_str() + 2);
        fresh_counter = std::max(fresh_counter, k);
      }
    }
    for (const Edge& e : net.edges()) edges.push_back({e.u, e.v, e.kind, true});
    taxa = net.taxa();
  }

  int fresh_node() {
    nodes.push_back({"_r" + std::to_string(++fresh_counter), std::nullopt, true});
    return static_cast<int>(nodes.size()) - 1;
  }

  int add_leaf_node(const std::string& label) {
    std::string id = label;
    for (const ENode& n : nodes)
      if (n.alive && n.id == id) {
        id = "_r" + std::to_string(++fresh_counter);
        break;
      }
    nodes.push_back({id, label, true});
    return static_cast<int>(nodes.size()) - 1;
  }

  std::vector<int> live_incident(int v) const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (edges[e].alive && (edges[e].u == v || edges[e].v == v)) out.push_back(e);
    return out;
  }

  int add_edge(int u, int v, EdgeKind kind) {
    edges.push_back({u, v, kind, true});
    return static_cast<int>(edges.size()) - 1;
  }

  void delete_node(int v) {
    nodes[v].alive = false;
    for (auto& e : edges)
      if (e.alive && (e.u == v || e.v == v)) e.alive = false;
  }

  bool is_root(int v) const {
    for (const auto& e : edges) {
      if (!e.alive) continue;
      if (e.kind == EdgeKind::Undirected && (e.u == v || e.v == v)) return false;
      if (e.kind == EdgeKind::Directed && e.v == v) return false;
    }
    return true;
  }

  // Suppression: a non-leaf node of degree 2 whose singleton is not a root
  // component, or a degree-1 root whose child edge is a tree edge. The new
  // edge keeps the direction implied by the deleted ones.
  bool suppress_if_suppressible(int v) {
    if (nodes[v].label.has_value()) return false;
    std::vector<int> inc = live_incident(v);
    if (inc.size() == 1 && is_root(v)) {
      const EEdge& e = edges[inc[0]];
      int child = e.u == v ? e.v : e.u;
      bool child_is_hybrid = false;
      int in_deg = 0;
      for (const auto& o : edges)
        if (o.alive && o.kind == EdgeKind::Directed && o.v == child) ++in_deg;
      child_is_hybrid = in_deg > 1;
      if (e.kind == EdgeKind::Directed && e.u == v && !child_is_hybrid) {
        delete_node(v);
        return true;
      }
      return false;
    }
    if (inc.size() != 2) return false;
    if (is_root(v)) return false;  // {v} would be a root component
    const EEdge e1 = edges[inc[0]], e2 = edges[inc[1]];
    int n1 = e1.u == v ? e1.v : e1.u;
    int n2 = e2.u == v ? e2.v : e2.u;
    int out_to = -1, in_from = -1;
    if (e1.kind == EdgeKind::Directed && e1.u == v) out_to = e1.v;
    if (e2.kind == EdgeKind::Directed && e2.u == v) out_to = e2.v;
    if (e1.kind == EdgeKind::Directed && e1.v == v) in_from = e1.u;
    if (e2.kind == EdgeKind::Directed && e2.v == v) in_from = e2.u;
    edges[inc[0]].alive = false;
    edges[inc[1]].alive = false;
    nodes[v].alive = false;
    if (out_to >= 0) {
      add_edge(out_to == n1 ? n2 : n1, out_to, EdgeKind::Directed);
    } else if (in_from >= 0) {
      // complete networks never reach this shape; kept for safety
      add_edge(in_from, in_from == n1 ? n2 : n1, EdgeKind::Directed);
    } else {
      add_edge(n1, n2, EdgeKind::Undirected);
    }
    return true;
  }

  Network build() const {
    NetworkBuilder b;
    for (const ENode& n : nodes) {
      if (!n.alive) continue;
      if (n.label.has_value())
        b.leaf(n.id, *n.label);
      else
        b.node(n.id);
    }
    for (const EEdge& e : edges) {
      if (!e.alive) continue;
      if (e.kind == EdgeKind::Directed)
        b.directed(nodes[e.u].id, nodes[e.v].id);
      else
        b.undirected(nodes[e.u].id, nodes[e.v].id);
    }
    b.taxa(taxa);
    return b.build();
  }
};

}  // namespace detail

inline Network reduce_cherry_net(const Network& net, const Cherry& cherry) {
  std::optional<Cherry> found;
  for (const Cherry& c : find_cherries_net(net))
    if (c.a == cherry.a && c.b == cherry.b && c.type == cherry.type) {
      found = c;
      break;
    }
  if (!found)
    throw PreconditionError("cherry (" + cherry.a + "," + cherry.b + ") of type " +
                            to_string(cherry.type) + " is not present");

  detail::NetEditor ed(net);
  int va = net.node_with_label(cherry.a);
  int vb = net.node_with_label(cherry.b);
  int pa = net.parent_of(va);
  int pb = net.parent_of(vb);
  if (is_tree_type(cherry.type)) {
    ed.delete_node(va);
    ed.suppress_if_suppressible(pa);
  } else {
    ed.edges[found->internal_edge].alive = false;
    ed.suppress_if_suppressible(pb);
    ed.suppress_if_suppressible(pa);
  }
  return ed.build();
}

inline Network reduce_cherry_net(const Network& net, const std::string& a, const std::string& b) {
  for (const Cherry& c : find_cherries_net(net))
    if (c.a == a && c.b == b) return reduce_cherry_net(net, c);
  throw PreconditionError("(" + a + "," + b + ") is not a cherry");
}

// --- addition on networks ---------------------------------------------------

struct AdditionResult {
  Network network;
  bool applied = false;  // false: case conditions did not hold, input returned
};

// Typed cherry addition, the inverse of the reduction of the same type. Tree
// additions introduce taxon a as a new leaf; reticulate additions subdivide
// a's pendant edge with a fresh node that becomes hybrid. When the case
// conditions of the requested type do not hold the input is returned
// untouched with applied = false.
inline AdditionResult add_cherry_net(const Network& net, const std::string& a,
                                     const std::string& b, CherryType type) {
  if (a == b) throw PreconditionError("cherry taxa must differ");
  int vb = net.node_with_label(b);
  if (vb < 0 || !net.is_leaf(vb)) throw PreconditionError("'" + b + "' is not a leaf");
  int va = net.node_with_label(a);
  bool tree = is_tree_type(type);
  if (tree && va >= 0)
    throw PreconditionError("tree addition: '" + a + "' is already present");
  if (!tree && (va < 0 || !net.is_leaf(va)))
    throw PreconditionError("reticulate addition: '" + a + "' is not a leaf");
  bool a_known_taxon = false;
  for (const auto& t : net.taxa()) a_known_taxon |= (t == a);
  if (!a_known_taxon) throw PreconditionError("'" + a + "' is not in the taxon set");

  bool b_isolated = net.is_isolated(vb);
  int w = b_isolated ? -1 : net.parent_of(vb);
  bool w_resolved_root = w >= 0 && net.is_root(w) && (net.degree(w) == 0 || net.degree(w) == 2);

  // The (d) cases demand only a pendant edge to subdivide: a (d)-reduction
  // can leave b under a resolved degree-2 root, and its recorded inverse must
  // still apply there or reconstruction traces would not replay. The (u)
  // cases do exclude a resolved w (the new undirected edge would strand a
  // degree-2 non-root node), and no (u)-reduction ever lands there.
  bool conditions_ok = false;
  switch (type) {
    case CherryType::TR2:
    case CherryType::RR2: conditions_ok = b_isolated; break;
    case CherryType::TR3:
    case CherryType::RR3: conditions_ok = !b_isolated && w_resolved_root; break;
    case CherryType::TD:
    case CherryType::RD: conditions_ok = !b_isolated; break;
    case CherryType::TU:
    case CherryType::RU: conditions_ok = !b_isolated && !w_resolved_root; break;
  }
  if (!tree && va >= 0 && net.is_isolated(va)) conditions_ok = false;  // no pendant to subdivide
  if (!conditions_ok) return {net, false};

  detail::NetEditor ed(net);
  int target = -1;  // node the new edge from b's side points at: a or p_a
  if (tree) {
    target = ed.add_leaf_node(a);
  } else {
    int pendant = net.parent_edge(va);
    int p_a = ed.fresh_node();
    int tail = net.edge(pendant).u;
    ed.edges[pendant].alive = false;
    ed.add_edge(tail, p_a, EdgeKind::Directed);
    ed.add_edge(p_a, va, EdgeKind::Directed);
    target = p_a;
  }
  switch (type) {
    case CherryType::TR2:
    case CherryType::RR2: {
      int p_b = ed.fresh_node();
      ed.add_edge(p_b, target, EdgeKind::Directed);
      ed.add_edge(p_b, vb, EdgeKind::Directed);
      break;
    }
    case CherryType::TR3:
    case CherryType::RR3:
      ed.add_edge(w, target, EdgeKind::Directed);
      break;
    case CherryType::TD:
    case CherryType::TU:
    case CherryType::RD:
    case CherryType::RU: {
      int wb = net.parent_edge(vb);
      int p_b = ed.fresh_node();
      ed.edges[wb].alive = false;
      ed.add_edge(w, p_b, type == CherryType::TU || type == CherryType::RU
                              ? EdgeKind::Undirected
                              : EdgeKind::Directed);
      ed.add_edge(p_b, target, EdgeKind::Directed);
      ed.add_edge(p_b, vb, EdgeKind::Directed);
      break;
    }
  }
  return {ed.build(), true};
}

// --- detection on mu-representations ----------------------------------------

namespace detail {

// Shape tests for the delta vectors that drive detection.
inline bool is_delta_of(const MuVector& v, std::initializer_list<int> coords) {
  for (size_t i = 0; i < v.size(); ++i) {
    bool want = false;
    for (int c : coords) want |= static_cast<size_t>(c) == i;
    if (v[i] != (want ? 1u : 0u)) return false;
  }
  return true;
}

struct VecOccurrence {
  int entry = -1;
  int part = -1;
};

// Entries containing the simple vector (an entry counts once even if the
// vector appears on both of its sides).
inline std::vector<VecOccurrence> occurrences(const MuRepresentation& rep, const MuVector& v) {
  std::vector<VecOccurrence> occ;
  for (int e = 0; e < static_cast<int>(rep.entries.size()); ++e)
    for (int p = 0; p < static_cast<int>(rep.entries[e].parts.size()); ++p)
      if (rep.entries[e].parts[p].vec == v) {
        occ.push_back({e, p});
        break;
      }
  return occ;
}

// Tag of the single occurrence plus its partner in the same entry (the
// "inverse"), when the entry has two parts.
struct SingleOccurrence {
  Tag tag;
  std::optional<TaggedMu> inverse;
  int entry;
};

inline std::optional<SingleOccurrence> single_occurrence(const MuRepresentation& rep,
                                                         const MuVector& v) {
  auto occ = occurrences(rep, v);
  if (occ.size() != 1) return std::nullopt;
  const MuEntry& e = rep.entries[occ[0].entry];
  SingleOccurrence s{e.parts[occ[0].part].tag, std::nullopt, occ[0].entry};
  if (e.parts.size() == 2) s.inverse = e.parts[1 - occ[0].part];
  return s;
}

inline CherryType type_from_tag(bool tree, Tag tag, const std::optional<TaggedMu>& inverse) {
  if (tag == Tag::Root) return tree ? CherryType::TR2 : CherryType::RR2;
  if (tag == Tag::Ignore) return tree ? CherryType::TR3 : CherryType::RR3;
  if (tag == Tag::Tree && (!inverse.has_value() || inverse->tag == Tag::Ignore))
    return tree ? CherryType::TD : CherryType::RD;
  return tree ? CherryType::TU : CherryType::RU;
}

}  // namespace detail

// Cherries of a mu-representation. Tree cherry (a,b): delta_{a,b} occurs in
// exactly one entry. Reticulate cherry (a,b): delta_{0,a} occurs in exactly
// two entries and delta_{0,a,b} occurs once, or twice both i-tagged (the
// parallel-edge shape). Reticulate detection also computes the internal
// entry (the entry the internal edge would contribute) and the external
// entry (the other entry containing delta_{0,a}).
inline std::vector<Cherry> find_cherries_mu(const MuRepresentation& rep) {
  int n = static_cast<int>(rep.taxa.size());
  std::vector<Cherry> out;
  for (int ca = 1; ca <= n; ++ca) {
    for (int cb = 1; cb <= n; ++cb) {
      if (ca == cb) continue;
      // tree
      auto tocc = detail::single_occurrence(rep, delta(n, {ca, cb}));
      if (tocc) {
        Cherry c;
        c.a = rep.taxa[ca - 1];
        c.b = rep.taxa[cb - 1];
        c.type = detail::type_from_tag(true, tocc->tag, tocc->inverse);
        out.push_back(std::move(c));
      }
      // reticulate
      auto aocc = detail::occurrences(rep, delta(n, {0, ca}));
      if (aocc.size() != 2) continue;
      MuVector dab = delta(n, {0, ca, cb});
      auto docc = detail::occurrences(rep, dab);
      Tag tag;
      std::optional<TaggedMu> inverse;
      if (docc.size() == 1) {
        auto s = detail::single_occurrence(rep, dab);
        tag = s->tag;
        inverse = s->inverse;
      } else if (docc.size() == 2) {
        bool both_ignore = true;
        for (const auto& o : docc) {
          const MuEntry& e = rep.entries[o.entry];
          bool has_i = false;
          for (const auto& p : e.parts) has_i |= (p.vec == dab && p.tag == Tag::Ignore);
          both_ignore &= has_i;
        }
        if (!both_ignore) continue;
        tag = Tag::Ignore;
        inverse = TaggedMu{delta(n, {0, ca}), Tag::Hybrid};  // delta_{0,a,b}^{-1} := delta_{0,a}
      } else {
        continue;
      }
      Cherry c;
      c.a = rep.taxa[ca - 1];
      c.b = rep.taxa[cb - 1];
      c.type = detail::type_from_tag(false, tag, inverse);
      // internal mu-entry
      MuVector d0a = delta(n, {0, ca});
      if (docc.size() == 1 && (!inverse.has_value() || inverse->tag == Tag::Ignore)) {
        c.internal_entry = MuEntry({d0a, Tag::Hybrid});
      } else {
        MuVector sum = detail::vec_sub(detail::vec_add(dab, inverse->vec), d0a);
        c.internal_entry = MuEntry({d0a, Tag::Hybrid}, {std::move(sum), Tag::Ignore});
      }
      // external mu-entry: the other entry containing delta_{0,a}
      std::optional<int> internal_at;
      for (const auto& o : aocc)
        if (!internal_at.has_value() && rep.entries[o.entry] == *c.internal_entry)
          internal_at = o.entry;
      for (const auto& o : aocc)
        if (!internal_at.has_value() || o.entry != *internal_at) {
          c.external_entry = rep.entries[o.entry];
          break;
        }
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [&](const Cherry& x, const Cherry& y) {
    int ax = rep.taxon_coord(x.a), ay = rep.taxon_coord(y.a);
    if (ax != ay) return ax < ay;
    int bx = rep.taxon_coord(x.b), by = rep.taxon_coord(y.b);
    if (bx != by) return bx < by;
    return is_tree_type(x.type) && !is_tree_type(y.type);
  });
  return out;
}

// --- reduction on mu-representations ----------------------------------------

namespace detail {

inline int find_entry_of_vec(const MuRepresentation& rep, const MuVector& v,
                             const char* what) {
  auto occ = occurrences(rep, v);
  if (occ.size() != 1)
    throw PreconditionError(std::string("mu reduction: ") + what + " does not have multiplicity 1");
  return occ[0].entry;
}

// Drop one tagged vector from the entry holding `v`, keeping the entry.
inline void remove_partner_of(MuRepresentation& rep, const MuVector& v, const char* what) {
  int e = find_entry_of_vec(rep, v, what);
  MuEntry& entry = rep.entries[e];
  if (entry.parts.size() != 2)
    throw PreconditionError(std::string("mu reduction: ") + what + " has no inverse");
  int keep = entry.parts[0].vec == v ? 0 : 1;
  entry.parts = {entry.parts[keep]};
}

inline void erase_entry(MuRepresentation& rep, int index) {
  rep.entries.erase(rep.entries.begin() + index);
}

}  // namespace detail

// Reduction of a detected cherry directly on the multiset, following the
// per-type recipe: prune b's side, remove a's pendant entry (and for
// reticulate cherries the internal entry plus the hybrid tag flip), then
// rewrite every remaining vector. Tree rewrite zeroes coordinate a;
// reticulate rewrite maps (m0, ma, mb) to (m0 - ma, ma - mb, mb).
inline MuRepresentation reduce_cherry_mu(const MuRepresentation& rep_in, const Cherry& cherry) {
  int n = static_cast<int>(rep_in.taxa.size());
  int ca = rep_in.taxon_coord(cherry.a);
  int cb = rep_in.taxon_coord(cherry.b);
  if (ca == 0 || cb == 0 || ca == cb)
    throw PreconditionError("cherry taxa not in the representation's taxon set");

  std::optional<Cherry> found;
  for (const Cherry& c : find_cherries_mu(rep_in))
    if (c.a == cherry.a && c.b == cherry.b && c.type == cherry.type) {
      found = c;
      break;
    }
  if (!found)
    throw PreconditionError("cherry (" + cherry.a + "," + cherry.b + ") of type " +
                            to_string(cherry.type) + " is not present in the representation");

  MuRepresentation rep = rep_in;
  MuVector d_a = delta(n, {ca});
  MuVector d_b = delta(n, {cb});
  MuVector d_ab = delta(n, {ca, cb});
  MuVector d_0a = delta(n, {0, ca});
  MuVector d_0ab = delta(n, {0, ca, cb});

  switch (cherry.type) {
    case CherryType::TR2:
    case CherryType::TD:
      detail::erase_entry(rep, detail::find_entry_of_vec(rep, d_b, "delta_b"));
      break;
    case CherryType::TR3: {
      detail::remove_partner_of(rep, d_b, "delta_b");
      int e = detail::find_entry_of_vec(rep, d_ab, "delta_ab");
      MuEntry& entry = rep.entries[e];
      int drop = entry.parts[0].vec == d_ab ? 0 : 1;
      entry.parts.erase(entry.parts.begin() + drop);
      if (entry.parts.empty()) detail::erase_entry(rep, e);
      break;
    }
    case CherryType::TU: {
      int e = detail::find_entry_of_vec(rep, d_ab, "delta_ab");
      MuEntry& entry = rep.entries[e];
      if (entry.parts.size() != 2)
        throw PreconditionError("mu reduction: delta_ab has no inverse for T(u)");
      entry.parts[entry.parts[0].vec == d_ab ? 1 : 0].tag = Tag::Ignore;
      detail::erase_entry(rep, detail::find_entry_of_vec(rep, d_b, "delta_b"));
      break;
    }
    case CherryType::RR2:
    case CherryType::RD:
      detail::erase_entry(rep, detail::find_entry_of_vec(rep, d_b, "delta_b"));
      break;
    case CherryType::RR3: {
      detail::remove_partner_of(rep, d_b, "delta_b");
      // remove one (delta_0ab, i); when multiplicity is 2 both copies agree
      bool removed = false;
      for (auto& entry : rep.entries) {
        for (size_t p = 0; p < entry.parts.size(); ++p)
          if (entry.parts[p].vec == d_0ab && entry.parts[p].tag == Tag::Ignore) {
            entry.parts.erase(entry.parts.begin() + p);
            removed = true;
            break;
          }
        if (removed) break;
      }
      if (!removed) throw PreconditionError("mu reduction: no (delta_0ab, i) to remove");
      for (size_t e = 0; e < rep.entries.size(); ++e)
        if (rep.entries[e].parts.empty()) {
          detail::erase_entry(rep, static_cast<int>(e));
          break;
        }
      break;
    }
    case CherryType::RU: {
      int e = detail::find_entry_of_vec(rep, d_0ab, "delta_0ab");
      MuEntry& entry = rep.entries[e];
      if (entry.parts.size() != 2)
        throw PreconditionError("mu reduction: delta_0ab has no inverse for R(u)");
      entry.parts[entry.parts[0].vec == d_0ab ? 1 : 0].tag = Tag::Ignore;
      detail::erase_entry(rep, detail::find_entry_of_vec(rep, d_b, "delta_b"));
      break;
    }
  }

  detail::erase_entry(rep, detail::find_entry_of_vec(rep, d_a, "delta_a"));

  if (!is_tree_type(cherry.type)) {
    // remove one copy of the internal mu-entry
    MuEntry internal = *found->internal_entry;
    internal.canonicalize();
    bool removed = false;
    for (size_t e = 0; e < rep.entries.size(); ++e) {
      MuEntry copy = rep.entries[e];
      copy.canonicalize();
      if (copy == internal) {
        detail::erase_entry(rep, static_cast<int>(e));
        removed = true;
        break;
      }
    }
    if (!removed) throw PreconditionError("mu reduction: internal mu-entry not found");
    // flip the unique remaining (delta_0a, h) to a tree tag
    bool flipped = false;
    for (auto& entry : rep.entries)
      for (auto& part : entry.parts)
        if (part.vec == d_0a && part.tag == Tag::Hybrid) {
          if (flipped)
            throw PreconditionError("mu reduction: (delta_0a, h) is not unique after removals");
          part.tag = Tag::Tree;
          flipped = true;
        }
    if (!flipped) throw PreconditionError("mu reduction: no (delta_0a, h) left to retag");
  }

  for (auto& entry : rep.entries)
    for (auto& part : entry.parts) {
      MuVector& v = part.vec;
      if (is_tree_type(cherry.type)) {
        v[ca] = 0;
      } else {
        // The rewrite subtracts, per path source, the paths that ran through
        // the deleted internal edge and the suppressed hybrid. The one
        // survivor whose source is b itself is its pendant head delta_b,
        // whose zero-length path never saw either; it passes unchanged.
        if (v == d_b) continue;
        v[0] = checked_sub(v[0], v[ca]);
        v[ca] = checked_sub(v[ca], v[cb]);
      }
    }

  rep.canonicalize();
  return rep;
}

inline MuRepresentation reduce_cherry_mu(const MuRepresentation& rep, const std::string& a,
                                         const std::string& b) {
  for (const Cherry& c : find_cherries_mu(rep))
    if (c.a == a && c.b == b) return reduce_cherry_mu(rep, c);
  throw PreconditionError("(" + a + "," + b + ") is not a cherry of the representation");
}

}  // namespace munet
