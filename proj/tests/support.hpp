#pragma once

// Shared helpers for the test suites: fixture loading, hand-rolled random
// instance generation, and independent oracles kept deliberately dumb.

#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "munet/munet.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(MUNET_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline munet::Network load_fixture(const std::string& name) {
  return munet::parse_sdnet(read_file(fixture_path(name)));
}

// Entry built from (vector, tag letter) pairs; digits string "300121" means
// coordinates (3,0,0,1,2,1).
inline munet::MuEntry entry(std::initializer_list<std::pair<const char*, char>> parts) {
  munet::MuEntry e;
  for (const auto& [digits, tag] : parts) {
    munet::TaggedMu p;
    for (const char* c = digits; *c; ++c) p.vec.push_back(static_cast<munet::Count>(*c - '0'));
    switch (tag) {
      case 't': p.tag = munet::Tag::Tree; break;
      case 'h': p.tag = munet::Tag::Hybrid; break;
      case 'r': p.tag = munet::Tag::Root; break;
      case 'i': p.tag = munet::Tag::Ignore; break;
      default: throw std::runtime_error("bad tag");
    }
    e.parts.push_back(std::move(p));
  }
  e.canonicalize();
  return e;
}

inline munet::MuRepresentation rep_of(std::vector<std::string> taxa,
                                      std::vector<munet::MuEntry> entries) {
  munet::MuRepresentation r;
  r.taxa = std::move(taxa);
  r.entries = std::move(entries);
  r.canonicalize();
  return r;
}

// Drops every i-tagged component from every entry.
inline std::vector<munet::MuEntry> strip_ignore_tags(const munet::MuRepresentation& rep) {
  std::vector<munet::MuEntry> out;
  for (const munet::MuEntry& e : rep.entries) {
    munet::MuEntry kept;
    for (const munet::TaggedMu& p : e.parts)
      if (p.tag != munet::Tag::Ignore) kept.parts.push_back(p);
    kept.canonicalize();
    out.push_back(std::move(kept));
  }
  return out;
}

// Quadratic multiset symmetric difference, the oracle for the merge-scan one.
inline munet::Count quadratic_sym_diff(std::vector<munet::MuEntry> a,
                                       std::vector<munet::MuEntry> b) {
  for (auto& e : a) e.canonicalize();
  for (auto& e : b) e.canonicalize();
  munet::Count value = 0;
  std::vector<bool> used(b.size(), false);
  for (const auto& ea : a) {
    bool matched = false;
    for (size_t j = 0; j < b.size(); ++j)
      if (!used[j] && b[j] == ea) {
        used[j] = true;
        matched = true;
        break;
      }
    if (!matched) ++value;
  }
  for (bool u : used) value += u ? 0 : 1;
  return value;
}

// Exhaustive semidirected-cycle detector: enumerates the cycles of the
// underlying multigraph and checks whether the fixed directed edges admit a
// consistent orientation around any of them.
inline bool has_semidirected_cycle_oracle(const munet::Network& net) {
  using munet::EdgeKind;
  int n = net.node_count();
  // DFS over (node, incoming edge) walks that never reuse an edge; a cycle is
  // found when we return to the start with a consistent running orientation.
  for (int start = 0; start < n; ++start) {
    std::vector<bool> edge_used(net.edge_count(), false);
    std::vector<bool> node_seen(n, false);
    auto dfs = [&](auto&& self, int v) -> bool {
      for (int e : net.incident_edges(v)) {
        if (edge_used[e]) continue;
        const munet::Edge& ed = net.edge(e);
        if (ed.kind == EdgeKind::Directed && ed.u != v) continue;  // forward only
        int o = ed.other(v);
        if (o == start) return true;  // closed a consistently oriented cycle
        if (node_seen[o]) continue;
        edge_used[e] = true;
        node_seen[o] = true;
        if (self(self, o)) return true;
        edge_used[e] = false;
        node_seen[o] = false;
      }
      return false;
    };
    node_seen[start] = true;
    if (dfs(dfs, start)) return true;
  }
  return false;
}

// Seeded pool of small random orchard networks used across property tests.
inline std::vector<munet::Network> orchard_pool(int count, std::uint64_t seed_base,
                                                int max_taxa = 8, int max_retics = 5,
                                                std::vector<munet::CherryType>* types = nullptr) {
  std::vector<munet::Network> pool;
  std::mt19937_64 rng(seed_base);
  while (static_cast<int>(pool.size()) < count) {
    munet::RandomOrchardParams p;
    p.n_taxa = 1 + static_cast<int>(rng() % max_taxa);
    p.n_reticulations = static_cast<int>(rng() % (max_retics + 1));
    if (p.n_taxa == 1) p.n_reticulations = 0;
    p.seed = rng();
    pool.push_back(munet::random_orchard(p, types));
  }
  return pool;
}

inline bool has_parallel_edges(const munet::Network& net) {
  std::map<std::pair<int, int>, int> seen;
  for (const munet::Edge& e : net.edges()) {
    auto key = std::minmax(e.u, e.v);
    if (++seen[{key.first, key.second}] > 1) return true;
  }
  return false;
}

}  // namespace testsupport
