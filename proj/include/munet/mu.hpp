#pragma once

// Edge-based mu-representations. Every edge and every root component of a
// network contributes one mu-entry, a multiset of one or two tagged count
// vectors:
//
//   directed u->v, not admissible for an unresolved root component:
//       { (count-vector from v, t|h) }                 h iff v is hybrid
//   directed u->v, admissible for an unresolved root component T:
//       { (count-vector from v, t|h), (mu(T) - that, i) }
//   undirected u-v:
//       { (one side, t), (other side, t) }
//   root component T:
//       { (mu(T), r) }       mu(T) = total counts from any node of T
//
// The i-tagged component is the tail-side vector: it is what the edge would
// contribute toward the root component if the network were rooted along it.
// Entries form a multiset ordered by a fixed total order (tag rank t<h<r<i,
// vectors lexicographic) so representations compare, hash and serialize
// canonically.

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "munet/counts.hpp"
#include "munet/errors.hpp"
#include "munet/network.hpp"
#include "munet/paths.hpp"
#include "munet/structure.hpp"

namespace munet {

using MuVector = std::vector<Count>;

enum class Tag { Tree, Hybrid, Root, Ignore };

inline char tag_letter(Tag t) {
  switch (t) {
    case Tag::Tree: return 't';
    case Tag::Hybrid: return 'h';
    case Tag::Root: return 'r';
    case Tag::Ignore: return 'i';
  }
  return '?';
}

inline int tag_rank(Tag t) { return static_cast<int>(t); }

// Indicator vector of A as a subset of {0, 1, ..., n}.
inline MuVector delta(int n, std::initializer_list<int> coords) {
  MuVector v(n + 1, 0);
  for (int c : coords) v[c] = 1;
  return v;
}

struct TaggedMu {
  MuVector vec;
  Tag tag = Tag::Tree;

  friend bool operator==(const TaggedMu& a, const TaggedMu& b) {
    return a.tag == b.tag && a.vec == b.vec;
  }
  friend bool operator<(const TaggedMu& a, const TaggedMu& b) {
    if (a.vec != b.vec) return a.vec < b.vec;
    return tag_rank(a.tag) < tag_rank(b.tag);
  }
};

// Multiset of 1 or 2 tagged vectors, kept sorted.
struct MuEntry {
  std::vector<TaggedMu> parts;

  MuEntry() = default;
  explicit MuEntry(TaggedMu a) : parts{std::move(a)} {}
  MuEntry(TaggedMu a, TaggedMu b) : parts{std::move(a), std::move(b)} { canonicalize(); }

  void canonicalize() { std::sort(parts.begin(), parts.end()); }

  bool contains_vec(const MuVector& v) const {
    for (const auto& p : parts)
      if (p.vec == v) return true;
    return false;
  }

  friend bool operator==(const MuEntry& a, const MuEntry& b) { return a.parts == b.parts; }
  friend bool operator<(const MuEntry& a, const MuEntry& b) {
    return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(),
                                        b.parts.end());
  }
};

struct MuRepresentation {
  std::vector<std::string> taxa;
  std::vector<MuEntry> entries;  // canonically sorted

  int coord_count() const { return static_cast<int>(taxa.size()) + 1; }
  int taxon_coord(const std::string& label) const {
    for (size_t i = 0; i < taxa.size(); ++i)
      if (taxa[i] == label) return static_cast<int>(i) + 1;
    return 0;
  }

  void canonicalize() {
    for (auto& e : entries) e.canonicalize();
    std::sort(entries.begin(), entries.end());
  }

  friend bool operator==(const MuRepresentation& a, const MuRepresentation& b) {
    return a.taxa == b.taxa && a.entries == b.entries;
  }
};

namespace detail {

inline MuVector vec_add(const MuVector& a, const MuVector& b) {
  MuVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

inline MuVector vec_sub(const MuVector& a, const MuVector& b) {
  MuVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

// Context shared by the per-edge and per-root entry builders. Undirected
// edges split their class tree in two; one rooted pass per class (subtree
// sums of the per-node exit vectors) yields both sides of every internal
// edge, keeping the whole representation at O(n * |E|).
struct MuContext {
  Contraction g;
  std::vector<CountVector> counts;           // per node
  std::vector<bool> unresolved_source_class; // class id -> admissible-for-i-tag?
  // per undirected edge: the side vector seen from each endpoint (u, v)
  std::vector<std::pair<MuVector, MuVector>> undirected_sides;

  explicit MuContext(const Network& net) : g(contraction(net)) {
    counts = all_path_counts(net, g);
    unresolved_source_class.assign(g.classes.count, false);
    for (const RootComponent& rc : root_components(net, g))
      unresolved_source_class[rc.class_id] = !rc.resolved;

    int n = static_cast<int>(net.taxa().size());
    undirected_sides.assign(net.edge_count(), {});
    auto exits = [&](int w) {
      MuVector s(n + 1, 0);
      for (int e : net.incident_edges(w)) {
        const Edge& ed = net.edge(e);
        if (ed.kind == EdgeKind::Directed && ed.u == w) s = vec_add(s, counts[ed.v]);
      }
      return s;
    };
    for (int c = 0; c < g.classes.count; ++c) {
      if (g.classes.members[c].size() < 2 || !g.classes.is_tree[c]) continue;
      int root = g.classes.members[c][0];
      // parent pointers by BFS over the class tree
      std::vector<int> order{root};
      std::map<int, int> parent_edge{{root, -1}};
      for (size_t i = 0; i < order.size(); ++i)
        for (int e : net.incident_edges(order[i])) {
          if (net.edge(e).kind != EdgeKind::Undirected) continue;
          int o = net.edge(e).other(order[i]);
          if (!parent_edge.count(o)) {
            parent_edge[o] = e;
            order.push_back(o);
          }
        }
      std::map<int, MuVector> down;
      for (int w : order) down[w] = exits(w);
      for (size_t i = order.size(); i-- > 1;) {
        int w = order[i];
        int up = net.edge(parent_edge[w]).other(w);
        down[up] = vec_add(down[up], down[w]);
      }
      const MuVector& total = down[root];
      for (size_t i = 1; i < order.size(); ++i) {
        int w = order[i];
        int e = parent_edge[w];
        MuVector other = vec_sub(total, down[w]);
        if (net.edge(e).u == w)
          undirected_sides[e] = {down[w], std::move(other)};
        else
          undirected_sides[e] = {std::move(other), down[w]};
      }
    }
  }
};

inline MuEntry edge_mu_entry(const Network& net, const MuContext& ctx, int e) {
  const Edge& ed = net.edge(e);
  if (ed.kind == EdgeKind::Undirected) {
    const auto& [side_u, side_v] = ctx.undirected_sides[e];
    return MuEntry({side_u, Tag::Tree}, {side_v, Tag::Tree});
  }
  TaggedMu head{ctx.counts[ed.v], net.is_hybrid(ed.v) ? Tag::Hybrid : Tag::Tree};
  if (ctx.unresolved_source_class[ctx.g.classes.class_of[ed.u]]) {
    // mu(T) is the full count vector from the tail's class.
    MuVector tail_side = vec_sub(ctx.counts[ed.u], ctx.counts[ed.v]);
    return MuEntry(std::move(head), {std::move(tail_side), Tag::Ignore});
  }
  return MuEntry(std::move(head));
}

}  // namespace detail

inline MuEntry edge_mu_entry(const Network& net, int e) {
  if (e < 0 || e >= net.edge_count())
    throw PreconditionError("unknown edge " + std::to_string(e));
  detail::MuContext ctx(net);
  return detail::edge_mu_entry(net, ctx, e);
}

inline MuEntry root_mu_entry(const Network& net, const RootComponent& rc) {
  detail::MuContext ctx(net);
  return MuEntry({ctx.counts[rc.nodes.at(0)], Tag::Root});
}

inline MuRepresentation mu_representation(const Network& net) {
  detail::MuContext ctx(net);
  MuRepresentation rep;
  rep.taxa = net.taxa();
  for (int c = 0; c < ctx.g.classes.count; ++c)
    if (ctx.g.in_degree[c] == 0)
      rep.entries.push_back(MuEntry({ctx.counts[ctx.g.classes.members[c][0]], Tag::Root}));
  for (int e = 0; e < net.edge_count(); ++e)
    rep.entries.push_back(detail::edge_mu_entry(net, ctx, e));
  rep.canonicalize();
  return rep;
}

// Labels L0 such that the representation is exactly {(delta_i, r) | i in L0},
// or nothing if it is not a trivial forest.
inline std::optional<std::vector<std::string>> is_trivial_forest(const MuRepresentation& rep) {
  std::vector<bool> seen(rep.taxa.size() + 1, false);
  std::vector<std::string> labels;
  for (const MuEntry& e : rep.entries) {
    if (e.parts.size() != 1 || e.parts[0].tag != Tag::Root) return std::nullopt;
    const MuVector& v = e.parts[0].vec;
    int coord = -1;
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (v[i] != 1 || coord >= 0) return std::nullopt;
      coord = static_cast<int>(i);
    }
    if (coord < 1 || seen[coord]) return std::nullopt;
    seen[coord] = true;
    labels.push_back(rep.taxa[coord - 1]);
  }
  std::sort(labels.begin(), labels.end());
  return labels;
}

// --- .murep text format -----------------------------------------------------
//
//   taxa <l1> <l2> ...
//   m0,m1,...,mn:t[;m0,...,mn:i]     one canonical entry per line
//
// Serialization emits entries in canonical order; equal multisets produce
// byte-identical text.

inline std::string canonical_serialize(const MuRepresentation& rep_in) {
  MuRepresentation rep = rep_in;
  rep.canonicalize();
  std::ostringstream out;
  out << "taxa";
  for (const auto& t : rep.taxa) out << ' ' << t;
  out << '\n';
  for (const MuEntry& e : rep.entries) {
    bool first_part = true;
    for (const TaggedMu& p : e.parts) {
      if (!first_part) out << ';';
      first_part = false;
      for (size_t i = 0; i < p.vec.size(); ++i) {
        if (i) out << ',';
        out << p.vec[i];
      }
      out << ':' << tag_letter(p.tag);
    }
    out << '\n';
  }
  return out.str();
}

inline MuRepresentation parse_mu(const std::string& text) {
  MuRepresentation rep;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      std::istringstream ls(line);
      std::string tok;
      ls >> tok;
      if (tok != "taxa") throw ParseError("expected 'taxa' header", line_no, 1);
      std::string t;
      while (ls >> t) rep.taxa.push_back(t);
      have_header = true;
      continue;
    }
    MuEntry entry;
    size_t pos = 0;
    while (pos < line.size()) {
      TaggedMu part;
      while (true) {
        size_t start = pos;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos == start)
          throw ParseError("expected coordinate digit", line_no, static_cast<int>(pos) + 1);
        part.vec.push_back(std::stoull(line.substr(start, pos - start)));
        if (pos < line.size() && line[pos] == ',') {
          ++pos;
          continue;
        }
        break;
      }
      if (pos >= line.size() || line[pos] != ':')
        throw ParseError("expected ':' before tag", line_no, static_cast<int>(pos) + 1);
      ++pos;
      if (pos >= line.size()) throw ParseError("missing tag letter", line_no, static_cast<int>(pos) + 1);
      switch (line[pos]) {
        case 't': part.tag = Tag::Tree; break;
        case 'h': part.tag = Tag::Hybrid; break;
        case 'r': part.tag = Tag::Root; break;
        case 'i': part.tag = Tag::Ignore; break;
        default:
          throw ParseError(std::string("unknown tag '") + line[pos] + "'", line_no,
                           static_cast<int>(pos) + 1);
      }
      ++pos;
      if (part.vec.size() != rep.taxa.size() + 1)
        throw ParseError("vector has " + std::to_string(part.vec.size()) + " coordinates, expected " +
                             std::to_string(rep.taxa.size() + 1),
                         line_no, 1);
      entry.parts.push_back(std::move(part));
      if (pos < line.size()) {
        if (line[pos] != ';')
          throw ParseError("expected ';' between tagged vectors", line_no,
                           static_cast<int>(pos) + 1);
        ++pos;
      }
    }
    if (entry.parts.empty() || entry.parts.size() > 2)
      throw ParseError("entry must hold 1 or 2 tagged vectors", line_no, 1);
    entry.canonicalize();
    rep.entries.push_back(std::move(entry));
  }
  if (!have_header) throw ParseError("missing 'taxa' header", line_no, 1);
  rep.canonicalize();
  return rep;
}

}  // namespace munet
