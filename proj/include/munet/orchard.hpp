#pragma once

// The complete-reduction loop, the orchard decision, reconstruction from a
// mu-representation, a seeded random generator of orchard networks, and a
// brute-force isomorphism oracle for small instances.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "munet/cherry.hpp"
#include "munet/mu.hpp"
#include "munet/network.hpp"
#include "munet/structure.hpp"

namespace munet {

struct ReductionStep {
  Cherry cherry;  // pair and type as detected at that step
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  MuRepresentation final_state;
  bool complete = false;
};

// Repeatedly reduces the first cherry until the multiset is a trivial forest
// (complete) or has no cherry left (stuck). Which cherry gets picked never
// affects completeness, so the default order is the deterministic smallest
// pair; a shuffle seed picks uniformly instead, for exercising alternative
// orders.
inline ReductionTrace reduce_completely(const MuRepresentation& rep,
                                        std::optional<std::uint64_t> shuffle_seed = {}) {
  ReductionTrace trace;
  MuRepresentation cur = rep;
  cur.canonicalize();
  std::mt19937_64 rng(shuffle_seed.value_or(0));
  while (true) {
    if (is_trivial_forest(cur).has_value()) {
      trace.complete = true;
      break;
    }
    std::vector<Cherry> cherries = find_cherries_mu(cur);
    if (cherries.empty()) break;
    size_t pick = 0;
    if (shuffle_seed.has_value())
      pick = std::uniform_int_distribution<size_t>(0, cherries.size() - 1)(rng);
    Cherry chosen = cherries[pick];
    cur = reduce_cherry_mu(cur, chosen);
    trace.steps.push_back({std::move(chosen)});
  }
  trace.final_state = std::move(cur);
  return trace;
}

inline bool is_orchard(const Network& net) {
  require_valid(net);
  return reduce_completely(mu_representation(net)).complete;
}

struct NotOrchardError : std::runtime_error {
  MuRepresentation stuck;
  explicit NotOrchardError(MuRepresentation stuck_)
      : std::runtime_error("representation is not orchard: reduction stuck"),
        stuck(std::move(stuck_)) {}
};

struct VerificationFailedError : std::runtime_error {
  VerificationFailedError()
      : std::runtime_error(
            "reconstructed network does not reproduce the input representation") {}
};

inline Network trivial_forest_network(const std::vector<std::string>& taxa,
                                      const std::vector<std::string>& labels) {
  NetworkBuilder b;
  for (const std::string& l : labels) b.leaf(l, l);
  b.taxa(taxa);
  return b.build();
}

// Completely reduces the representation, then replays the recorded steps in
// reverse as typed cherry additions on the final trivial forest. The result
// is verified by recomputing its representation; a mismatch means the input
// was not the representation of any orchard network. Multisets that detect a
// cherry but cannot carry out its reduction, or whose replay goes wrong, are
// rejected the same way.
inline Network reconstruct(const MuRepresentation& rep) {
  MuRepresentation input = rep;
  input.canonicalize();
  try {
    ReductionTrace trace = reduce_completely(input);
    if (!trace.complete) throw NotOrchardError(trace.final_state);
    Network net = trivial_forest_network(input.taxa, *is_trivial_forest(trace.final_state));
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
      AdditionResult res = add_cherry_net(net, it->cherry.a, it->cherry.b, it->cherry.type);
      if (!res.applied) throw VerificationFailedError();
      net = std::move(res.network);
    }
    MuRepresentation check = mu_representation(net);
    if (!(check == input)) throw VerificationFailedError();
    return net;
  } catch (const PreconditionError&) {
    throw VerificationFailedError();
  } catch (const OverflowError&) {
    throw VerificationFailedError();
  }
}

// --- random orchard generation ----------------------------------------------

struct RandomOrchardParams {
  int n_taxa = 5;
  int n_reticulations = 0;
  std::uint64_t seed = 0;
  // Relative weight per addition type, indexed by CherryType.
  std::array<double, 8> type_weights{1, 1, 1, 1, 1, 1, 1, 1};
  int max_attempts = 64;
};

namespace detail {

inline bool node_in_root_component(const Contraction& g, int v) {
  return g.in_degree[g.classes.class_of[v]] == 0;
}

}  // namespace detail

// Grows a network from a trivial forest by feasible typed cherry additions,
// orchard by construction, until all taxa are present and the reticulation
// target is met. Deterministic for a fixed parameter set.
inline Network random_orchard(const RandomOrchardParams& params,
                              std::vector<CherryType>* used_types = nullptr) {
  if (params.n_taxa < 1) throw PreconditionError("random_orchard: need at least one taxon");
  std::mt19937_64 rng(params.seed);

  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    std::vector<std::string> taxa;
    for (int i = 1; i <= params.n_taxa; ++i) taxa.push_back(std::to_string(i));
    std::vector<std::string> order = taxa;
    std::shuffle(order.begin(), order.end(), rng);

    int start = 1 + static_cast<int>(rng() % std::min<std::size_t>(order.size(), 2));
    std::vector<std::string> pending(order.begin() + start, order.end());
    NetworkBuilder fb;
    for (int i = 0; i < start; ++i) fb.leaf(order[i], order[i]);
    fb.taxa(taxa);
    Network net = fb.build();

    int retics = 0;
    bool dead = false;
    while (!dead && (!pending.empty() || retics < params.n_reticulations)) {
      Contraction g = contraction(net);
      std::vector<int> leaves = net.leaves();
      bool want_tree = !pending.empty() && (retics >= params.n_reticulations || rng() % 2 == 0);

      struct Move {
        std::string a, b;
        CherryType type;
        double weight;
      };
      std::vector<Move> moves;
      auto push_types = [&](const std::string& a, const std::string& b, int vb, bool tree) {
        auto add = [&](CherryType t) {
          double w = params.type_weights[static_cast<size_t>(t)];
          if (w > 0) moves.push_back({a, b, t, w});
        };
        if (net.is_isolated(vb)) {
          add(tree ? CherryType::TR2 : CherryType::RR2);
          return;
        }
        int w = net.parent_of(vb);
        bool resolved = net.is_root(w) && net.degree(w) == 2;
        if (resolved) add(tree ? CherryType::TR3 : CherryType::RR3);
        add(tree ? CherryType::TD : CherryType::RD);
        if (!resolved && detail::node_in_root_component(g, w))
          add(tree ? CherryType::TU : CherryType::RU);
      };

      if (want_tree) {
        const std::string& a = pending.back();
        for (int vb : leaves) push_types(a, *net.label_of(vb), vb, true);
      } else {
        for (int va : leaves) {
          if (net.is_isolated(va)) continue;  // no pendant edge to subdivide
          for (int vb : leaves)
            if (va != vb) push_types(*net.label_of(va), *net.label_of(vb), vb, false);
        }
      }
      if (moves.empty()) {
        if (want_tree && !pending.empty()) {
          dead = true;  // cannot happen in practice; bail to a fresh attempt
          continue;
        }
        dead = true;
        continue;
      }
      double total = 0;
      for (const Move& m : moves) total += m.weight;
      double r = std::uniform_real_distribution<double>(0.0, total)(rng);
      size_t pick = 0;
      for (; pick + 1 < moves.size(); ++pick) {
        r -= moves[pick].weight;
        if (r <= 0) break;
      }
      const Move& m = moves[pick];
      AdditionResult res = add_cherry_net(net, m.a, m.b, m.type);
      if (!res.applied) {
        dead = true;
        continue;
      }
      net = std::move(res.network);
      if (used_types) used_types->push_back(m.type);
      if (is_tree_type(m.type))
        pending.pop_back();
      else
        ++retics;
    }
    if (!dead) return net;
  }
  throw PreconditionError("random_orchard: infeasible parameter combination");
}

// --- brute-force isomorphism ------------------------------------------------

namespace detail {

// (kind, direction) multiset between an ordered node pair, encoded as three
// multiplicities: directed here->there, directed there->here, undirected.
struct PairProfile {
  int fwd = 0, bwd = 0, und = 0;
  friend bool operator==(const PairProfile& a, const PairProfile& b) {
    return a.fwd == b.fwd && a.bwd == b.bwd && a.und == b.und;
  }
};

inline PairProfile pair_profile(const Network& net, int u, int v) {
  PairProfile p;
  for (int e : net.incident_edges(u)) {
    const Edge& ed = net.edge(e);
    if (ed.other(u) != v) continue;
    if (ed.kind == EdgeKind::Undirected) {
      ++p.und;
    } else if (ed.u == u) {
      ++p.fwd;
    } else {
      ++p.bwd;
    }
  }
  if (u == v) p.und = p.fwd = p.bwd = 0;  // self-loops never occur in valid nets
  return p;
}

}  // namespace detail

// Exhaustive search for a bijection of nodes preserving leaf labels, edge
// kinds, directions and multiplicities. Labeled nodes are matched by label;
// unlabeled nodes are permuted with degree-signature pruning. Guarded by the
// number of unlabeled nodes.
inline bool brute_force_isomorphic(const Network& n1, const Network& n2,
                                   int max_internal_nodes = 14) {
  if (n1.node_count() != n2.node_count() || n1.edge_count() != n2.edge_count()) return false;

  std::vector<int> internal1, internal2;
  std::map<std::string, int> labeled2;
  for (int v = 0; v < n2.node_count(); ++v) {
    if (const std::string* l = n2.label_of(v))
      labeled2[*l] = v;
    else
      internal2.push_back(v);
  }
  std::vector<int> mapping(n1.node_count(), -1);
  for (int v = 0; v < n1.node_count(); ++v) {
    if (const std::string* l = n1.label_of(v)) {
      auto it = labeled2.find(*l);
      if (it == labeled2.end()) return false;
      mapping[v] = it->second;
    } else {
      internal1.push_back(v);
    }
  }
  if (internal1.size() != internal2.size()) return false;
  if (static_cast<int>(internal1.size()) > max_internal_nodes)
    throw GuardError("brute_force_isomorphic: more than " + std::to_string(max_internal_nodes) +
                     " unlabeled nodes");

  auto signature = [](const Network& n, int v) {
    return std::array<int, 3>{n.deg_in(v), n.deg_out(v), n.deg_und(v)};
  };
  {
    std::vector<std::array<int, 3>> s1, s2;
    for (int v = 0; v < n1.node_count(); ++v) s1.push_back(signature(n1, v));
    for (int v = 0; v < n2.node_count(); ++v) s2.push_back(signature(n2, v));
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;
  }

  std::vector<bool> used(n2.node_count(), false);
  for (int v = 0; v < n1.node_count(); ++v)
    if (mapping[v] >= 0) used[mapping[v]] = true;

  auto consistent = [&](int v1, int v2) {
    if (signature(n1, v1) != signature(n2, v2)) return false;
    for (int w1 = 0; w1 < n1.node_count(); ++w1) {
      if (mapping[w1] < 0 || w1 == v1) continue;
      if (!(detail::pair_profile(n1, v1, w1) == detail::pair_profile(n2, v2, mapping[w1])))
        return false;
    }
    return true;
  };

  auto search = [&](auto&& self, size_t i) -> bool {
    if (i == internal1.size()) {
      // labeled-labeled adjacencies were never checked during assignment
      for (int v = 0; v < n1.node_count(); ++v)
        for (int e : n1.incident_edges(v)) {
          const Edge& ed = n1.edge(e);
          if (ed.u != v) continue;
          if (!(detail::pair_profile(n1, ed.u, ed.v) ==
                detail::pair_profile(n2, mapping[ed.u], mapping[ed.v])))
            return false;
        }
      return true;
    }
    int v1 = internal1[i];
    for (int v2 : internal2) {
      if (used[v2] || !consistent(v1, v2)) continue;
      mapping[v1] = v2;
      used[v2] = true;
      if (self(self, i + 1)) return true;
      mapping[v1] = -1;
      used[v2] = false;
    }
    return false;
  };
  return search(search, 0);
}

}  // namespace munet
