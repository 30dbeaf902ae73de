#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "support.hpp"

using namespace munet;
using testsupport::entry;
using testsupport::load_fixture;
using testsupport::rep_of;

namespace {

// The frozen 12-entry table of the two-root fixture.
MuRepresentation tworoots_table() {
  return rep_of({"1", "2", "3", "4", "5"},
                {
                    entry({{"111100", 'r'}}),
                    entry({{"010000", 't'}, {"101100", 'i'}}),
                    entry({{"001000", 't'}, {"110100", 'i'}}),
                    entry({{"100100", 'h'}, {"011000", 'i'}}),
                    entry({{"300121", 'r'}}),
                    entry({{"100100", 'h'}, {"200021", 'i'}}),
                    entry({{"100010", 'h'}, {"200111", 'i'}}),
                    entry({{"100010", 'h'}, {"200111", 'i'}}),
                    entry({{"000001", 't'}, {"300120", 'i'}}),
                    entry({{"200110", 't'}, {"100011", 't'}}),
                    entry({{"000100", 't'}}),
                    entry({{"000010", 't'}}),
                });
}

}  // namespace

TEST_CASE("mu of the two-root fixture equals the frozen table") {
  Network net = load_fixture("net_tworoots.sdnet");
  CHECK(mu_representation(net) == tworoots_table());
}

TEST_CASE("edge entries by case") {
  Network net = load_fixture("net_tworoots.sdnet");
  // the undirected edge: two tree-tagged sides
  CHECK(edge_mu_entry(net, 7) == entry({{"200110", 't'}, {"100011", 't'}}));
  // pendant below a hybrid: single delta entry
  CHECK(edge_mu_entry(net, 8) == entry({{"000100", 't'}}));
  // admissible pendant: head vector plus the i-tagged remainder
  CHECK(edge_mu_entry(net, 0) == entry({{"010000", 't'}, {"101100", 'i'}}));

  Network n2 = load_fixture("net_parallel.sdnet");
  CHECK(edge_mu_entry(n2, 1) == entry({{"110", 'h'}, {"111", 'i'}}));
  CHECK(edge_mu_entry(n2, 0) == entry({{"110", 'h'}, {"111", 'i'}}));
}

TEST_CASE("root entries") {
  Network net = load_fixture("net_tworoots.sdnet");
  auto comps = root_components(net);
  REQUIRE(comps.size() == 2);
  for (const auto& rc : comps) {
    MuEntry e = root_mu_entry(net, rc);
    if (rc.trivial)
      CHECK(e == entry({{"111100", 'r'}}));
    else
      CHECK(e == entry({{"300121", 'r'}}));
  }
  // an isolated labeled node contributes its delta vector
  Network iso = parse_sdnet("T 1 2 3 4 5\nL x 2\n");
  auto iso_comps = root_components(iso);
  REQUIRE(iso_comps.size() == 1);
  CHECK(root_mu_entry(iso, iso_comps[0]) == entry({{"001000", 'r'}}));
}

TEST_CASE("root entry of the no-cherry fixture") {
  Network net = load_fixture("net_nocherry_a.sdnet");
  MuRepresentation rep = mu_representation(net);
  bool found_root = false, found_edge = false;
  for (const MuEntry& e : rep.entries) {
    found_root |= e == entry({{"8222211", 'r'}});
    found_edge |= e == entry({{"4111110", 't'}, {"4111101", 't'}});
  }
  CHECK(found_root);
  CHECK(found_edge);
}

TEST_CASE("trivial forests") {
  Network forest = parse_sdnet("T a b\nL x a\nL y b\n");
  MuRepresentation rep = mu_representation(forest);
  CHECK(rep.entries.size() == 2);
  auto labels = is_trivial_forest(rep);
  REQUIRE(labels.has_value());
  CHECK(*labels == std::vector<std::string>{"a", "b"});

  auto two = is_trivial_forest(
      rep_of({"1", "2", "3", "4", "5"}, {entry({{"001000", 'r'}}), entry({{"000001", 'r'}})}));
  REQUIRE(two.has_value());
  CHECK(*two == std::vector<std::string>{"2", "5"});

  MuRepresentation empty;
  empty.taxa = {"1", "2"};
  auto none = is_trivial_forest(empty);
  REQUIRE(none.has_value());
  CHECK(none->empty());

  CHECK_FALSE(is_trivial_forest(mu_representation(load_fixture("net_tworoots.sdnet"))));
  // duplicated leaf entry is not a trivial forest
  CHECK_FALSE(
      is_trivial_forest(rep_of({"1"}, {entry({{"01", 'r'}}), entry({{"01", 'r'}})})));
}

TEST_CASE("simple vectors agree with the path oracle on random networks") {
  for (const Network& net : testsupport::orchard_pool(15, 5150, 6, 3)) {
    if (net.edge_count() > 64) continue;
    int n = static_cast<int>(net.taxa().size());
    for (int e = 0; e < net.edge_count(); ++e) {
      const Edge& ed = net.edge(e);
      MuEntry got = edge_mu_entry(net, e);
      std::vector<MuEntry> expect_parts;
      auto oracle_vec = [&](int node) {
        MuVector v;
        for (int x = 0; x <= n; ++x)
          v.push_back(enumerate_paths_oracle(net, net.node_id(node), PathTarget{x}, e).size());
        return v;
      };
      if (ed.kind == EdgeKind::Undirected) {
        MuEntry want({oracle_vec(ed.u), Tag::Tree}, {oracle_vec(ed.v), Tag::Tree});
        CHECK(got == want);
      } else {
        MuVector head = oracle_vec(ed.v);
        REQUIRE(!got.parts.empty());
        if (got.parts.size() == 2) {
          MuEntry want({head, net.is_hybrid(ed.v) ? Tag::Hybrid : Tag::Tree},
                       {oracle_vec(ed.u), Tag::Ignore});
          CHECK(got == want);
        } else {
          MuEntry want({head, net.is_hybrid(ed.v) ? Tag::Hybrid : Tag::Tree});
          CHECK(got == want);
        }
      }
    }
  }
}

TEST_CASE("a taxon is a leaf iff its delta vector occurs in exactly one entry") {
  auto pool = testsupport::orchard_pool(20, 6161, 7, 4);
  pool.push_back(load_fixture("net_tworoots.sdnet"));
  pool.push_back(load_fixture("net_nocherry_a.sdnet"));
  for (const Network& net : pool) {
    MuRepresentation rep = mu_representation(net);
    int n = static_cast<int>(net.taxa().size());
    for (int c = 1; c <= n; ++c) {
      MuVector d = delta(n, {c});
      int mult = 0;
      for (const MuEntry& e : rep.entries) mult += e.contains_vec(d) ? 1 : 0;
      bool leaf = net.node_with_label(net.taxa()[c - 1]) >= 0;
      INFO("taxon " << net.taxa()[c - 1]);
      CHECK((mult == 1) == leaf);
    }
  }
}

TEST_CASE("two-part entries are exactly undirected or unresolved-admissible edges") {
  auto pool = testsupport::orchard_pool(20, 8888, 7, 4);
  pool.push_back(load_fixture("net_tworoots.sdnet"));
  for (const Network& net : pool) {
    auto comps = root_components(net);
    std::set<int> admissible_unresolved;
    int admissible_directed = 0;
    for (const auto& rc : comps)
      if (!rc.resolved)
        for (int e : rc.admissible_edges) {
          admissible_unresolved.insert(e);
          admissible_directed += net.edge(e).kind == EdgeKind::Directed;
        }
    int two_part = 0, with_ignore = 0;
    for (int e = 0; e < net.edge_count(); ++e) {
      MuEntry me = edge_mu_entry(net, e);
      bool undirected = net.edge(e).kind == EdgeKind::Undirected;
      CHECK((me.parts.size() == 2) == (undirected || admissible_unresolved.count(e) > 0));
      two_part += me.parts.size() == 2;
      for (const auto& p : me.parts) with_ignore += p.tag == Tag::Ignore;
    }
    CHECK(with_ignore == admissible_directed);
  }
}

TEST_CASE("canonical serialization round-trips and ignores entry order") {
  Network net = load_fixture("net_tworoots.sdnet");
  MuRepresentation rep = mu_representation(net);
  std::string text = canonical_serialize(rep);
  MuRepresentation back = parse_mu(text);
  CHECK(back == rep);
  CHECK(canonical_serialize(back) == text);

  MuRepresentation shuffled = rep;
  std::shuffle(shuffled.entries.begin(), shuffled.entries.end(), std::mt19937_64(3));
  for (auto& e : shuffled.entries) std::reverse(e.parts.begin(), e.parts.end());
  CHECK(canonical_serialize(shuffled) == text);
}

TEST_CASE("golden representation files") {
  for (const char* stem : {"net_tworoots", "net_parallel", "net_nocherry_a"}) {
    Network net = load_fixture(std::string(stem) + ".sdnet");
    std::string expected =
        testsupport::read_file(testsupport::fixture_path("golden/" + std::string(stem) + ".murep"));
    CHECK(canonical_serialize(mu_representation(net)) == expected);
  }
}

TEST_CASE("the no-cherry pair serializes identically") {
  CHECK(canonical_serialize(mu_representation(load_fixture("net_nocherry_a.sdnet"))) ==
        canonical_serialize(mu_representation(load_fixture("net_nocherry_b.sdnet"))));
}

TEST_CASE("both vectors of an admissible directed edge sum to the root entry") {
  auto pool = testsupport::orchard_pool(15, 321, 7, 4);
  pool.push_back(load_fixture("net_tworoots.sdnet"));
  for (const Network& net : pool) {
    for (const RootComponent& rc : root_components(net)) {
      if (rc.resolved) continue;
      MuVector total = root_mu_entry(net, rc).parts[0].vec;
      for (int e : rc.admissible_edges) {
        if (net.edge(e).kind != EdgeKind::Directed) continue;
        MuEntry me = edge_mu_entry(net, e);
        REQUIRE(me.parts.size() == 2);
        MuVector sum(total.size(), 0);
        for (size_t i = 0; i < sum.size(); ++i)
          sum[i] = me.parts[0].vec[i] + me.parts[1].vec[i];
        CHECK(sum == total);
      }
    }
  }
}

TEST_CASE("mu parse errors carry positions") {
  CHECK_THROWS_AS(parse_mu(""), ParseError);
  CHECK_THROWS_AS(parse_mu("nope 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_mu("taxa 1 2\n1,0:t;1,0:t;1,0:t\n"), ParseError);  // 3 parts
  CHECK_THROWS_AS(parse_mu("taxa 1 2\n1,0,0:q\n"), ParseError);
  CHECK_THROWS_AS(parse_mu("taxa 1 2\n1,0:t\n"), ParseError);  // wrong width
  try {
    parse_mu("taxa 1 2\n0,0,1:t\n0,1,x:t\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("representation equality is multiset equality") {
  MuRepresentation a = rep_of({"1"}, {entry({{"01", 'r'}}), entry({{"01", 'r'}})});
  MuRepresentation b = rep_of({"1"}, {entry({{"01", 'r'}})});
  CHECK_FALSE(a == b);
  MuRepresentation c = rep_of({"1"}, {entry({{"01", 'r'}}), entry({{"01", 'r'}})});
  CHECK(a == c);
}
