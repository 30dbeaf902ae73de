#pragma once

// The mu-distance: cardinality of the multiset symmetric difference of two
// edge-based mu-representations, with the differing entries kept as a
// diagnostic witness.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "munet/counts.hpp"
#include "munet/mu.hpp"
#include "munet/network.hpp"

namespace munet {

struct DistanceResult {
  Count value = 0;
  std::vector<MuEntry> only_in_first;
  std::vector<MuEntry> only_in_second;
};

// Sort + linear merge scan over canonically ordered entries.
inline DistanceResult multiset_sym_diff(std::vector<MuEntry> a, std::vector<MuEntry> b) {
  size_t width = 0;
  for (auto* list : {&a, &b})
    for (auto& e : *list) {
      for (const auto& p : e.parts) {
        if (width == 0) width = p.vec.size();
        if (p.vec.size() != width)
          throw PreconditionError("multiset_sym_diff: entries have mismatched vector lengths");
      }
      e.canonicalize();
    }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  DistanceResult res;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      res.only_in_first.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      res.only_in_second.push_back(b[j++]);
    } else {
      ++i;
      ++j;
    }
  }
  res.value = checked_add(res.only_in_first.size(), res.only_in_second.size());
  return res;
}

// Rebuilds a network's representation over an enlarged, ordered taxon list.
inline MuRepresentation mu_over_taxa(const Network& net, const std::vector<std::string>& taxa) {
  NetworkBuilder b;
  for (int v = 0; v < net.node_count(); ++v) {
    if (const std::string* l = net.label_of(v))
      b.leaf(net.node_id(v), *l);
    else
      b.node(net.node_id(v));
  }
  for (const Edge& e : net.edges()) {
    if (e.kind == EdgeKind::Directed)
      b.directed(net.node_id(e.u), net.node_id(e.v));
    else
      b.undirected(net.node_id(e.u), net.node_id(e.v));
  }
  b.taxa(taxa);
  return mu_representation(b.build());
}

// d_mu over the sorted union of the two taxon sets: coordinates for labels
// absent from one network are zero columns, so enlarging the supertaxon set
// never changes which entries coincide.
inline DistanceResult mu_distance(const Network& n1, const Network& n2) {
  std::set<std::string> all(n1.taxa().begin(), n1.taxa().end());
  all.insert(n2.taxa().begin(), n2.taxa().end());
  std::vector<std::string> taxa(all.begin(), all.end());
  MuRepresentation r1 = mu_over_taxa(n1, taxa);
  MuRepresentation r2 = mu_over_taxa(n2, taxa);
  return multiset_sym_diff(r1.entries, r2.entries);
}

}  // namespace munet
