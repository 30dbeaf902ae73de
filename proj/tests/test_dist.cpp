#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace munet;
using testsupport::entry;
using testsupport::load_fixture;

namespace {

// Relabels the leaves of a network by a taxon permutation (old -> new).
Network relabel(const Network& net, const std::map<std::string, std::string>& perm) {
  NetworkBuilder b;
  for (int v = 0; v < net.node_count(); ++v) {
    if (const std::string* l = net.label_of(v))
      b.leaf(net.node_id(v), perm.at(*l));
    else
      b.node(net.node_id(v));
  }
  for (const Edge& e : net.edges()) {
    if (e.kind == EdgeKind::Directed)
      b.directed(net.node_id(e.u), net.node_id(e.v));
    else
      b.undirected(net.node_id(e.u), net.node_id(e.v));
  }
  b.taxa(net.taxa());
  return b.build();
}

}  // namespace

TEST_CASE("multiset symmetric difference basics") {
  MuEntry x = entry({{"010", 't'}});
  MuEntry y = entry({{"001", 't'}});
  MuEntry z = entry({{"011", 'r'}});
  DistanceResult r = multiset_sym_diff({x, x, y}, {x, y, z});
  CHECK(r.value == 2);
  REQUIRE(r.only_in_first.size() == 1);
  CHECK(r.only_in_first[0] == x);
  REQUIRE(r.only_in_second.size() == 1);
  CHECK(r.only_in_second[0] == z);

  CHECK(multiset_sym_diff({}, {}).value == 0);
  CHECK_THROWS_AS(multiset_sym_diff({x}, {entry({{"01", 't'}})}), PreconditionError);
}

TEST_CASE("merge scan agrees with the quadratic oracle on random multisets") {
  std::mt19937_64 rng(55);
  for (int iter = 0; iter < 200; ++iter) {
    auto random_entries = [&](int count) {
      std::vector<MuEntry> out;
      for (int i = 0; i < count; ++i) {
        MuEntry e;
        int parts = 1 + static_cast<int>(rng() % 2);
        for (int p = 0; p < parts; ++p) {
          TaggedMu t;
          for (int c = 0; c < 4; ++c) t.vec.push_back(rng() % 3);
          t.tag = static_cast<Tag>(rng() % 4);
          e.parts.push_back(std::move(t));
        }
        e.canonicalize();
        out.push_back(std::move(e));
      }
      return out;
    };
    auto a = random_entries(static_cast<int>(rng() % 12));
    auto b = random_entries(static_cast<int>(rng() % 12));
    CHECK(multiset_sym_diff(a, b).value == testsupport::quadratic_sym_diff(a, b));
  }
}

TEST_CASE("distance between the seven-taxon pair is 8 with the expected witnesses") {
  Network a = load_fixture("net_seven_a.sdnet");
  Network b = load_fixture("net_seven_b.sdnet");
  DistanceResult r = mu_distance(a, b);
  CHECK(r.value == 8);

  std::vector<MuEntry> expected_first = {
      entry({{"11000000", 'h'}, {"30110100", 'i'}}),
      entry({{"30010100", 'h'}, {"11100000", 'i'}}),
      entry({{"10010000", 'h'}, {"31001100", 'i'}}),
      entry({{"31000100", 'h'}, {"10011000", 'i'}}),
  };
  std::sort(expected_first.begin(), expected_first.end());
  CHECK(r.only_in_first == expected_first);

  // the second side holds exactly the 2<->4 coordinate swaps
  std::vector<MuEntry> expected_second;
  for (MuEntry e : expected_first) {
    for (auto& p : e.parts) std::swap(p.vec[2], p.vec[4]);
    e.canonicalize();
    expected_second.push_back(e);
  }
  std::sort(expected_second.begin(), expected_second.end());
  CHECK(r.only_in_second == expected_second);

  // without the i-tagged components the representations coincide
  CHECK(multiset_sym_diff(testsupport::strip_ignore_tags(mu_representation(a)),
                          testsupport::strip_ignore_tags(mu_representation(b)))
            .value == 0);
}

TEST_CASE("the five-taxon rooted pair behaves like the seven-taxon one") {
  Network a = load_fixture("net_five_a.sdnet");
  Network b = load_fixture("net_five_b.sdnet");
  CHECK(is_orchard(a));
  CHECK(is_orchard(b));
  DistanceResult r = mu_distance(a, b);
  CHECK(r.value > 0);
  CHECK(r.value == 8);
  CHECK_FALSE(brute_force_isomorphic(a, b));
  CHECK(multiset_sym_diff(testsupport::strip_ignore_tags(mu_representation(a)),
                          testsupport::strip_ignore_tags(mu_representation(b)))
            .value == 0);
}

TEST_CASE("the no-cherry pair is at distance zero yet not isomorphic") {
  Network a = load_fixture("net_nocherry_a.sdnet");
  Network b = load_fixture("net_nocherry_b.sdnet");
  CHECK(mu_distance(a, b).value == 0);
  CHECK_FALSE(brute_force_isomorphic(a, b));
  CHECK_FALSE(is_orchard(a));
  CHECK_FALSE(is_orchard(b));
}

TEST_CASE("distance to self is zero") {
  for (const char* name : {"net_tworoots.sdnet", "net_parallel.sdnet", "net_nocherry_a.sdnet"}) {
    Network net = load_fixture(name);
    DistanceResult r = mu_distance(net, net);
    CHECK(r.value == 0);
    CHECK(r.only_in_first.empty());
    CHECK(r.only_in_second.empty());
  }
}

TEST_CASE("distance aligns differing taxon sets over their sorted union") {
  Network a = parse_sdnet("L x 1\n");
  Network b = parse_sdnet("L y 2\n");
  DistanceResult r = mu_distance(a, b);
  CHECK(r.value == 2);  // delta_1 root entry vs delta_2 root entry
  REQUIRE(r.only_in_first.size() == 1);
  CHECK(r.only_in_first[0] == entry({{"010", 'r'}}));
  CHECK(r.only_in_second[0] == entry({{"001", 'r'}}));
  // padding a shared representation with an absent taxon changes nothing
  Network c = parse_sdnet("T 1 9\nL x 1\n");
  CHECK(mu_distance(a, c).value == 0);
}

TEST_CASE("symmetry and the triangle inequality on random networks") {
  auto pool = testsupport::orchard_pool(18, 606, 6, 3);
  pool.push_back(load_fixture("net_nocherry_a.sdnet"));
  pool.push_back(load_fixture("net_nocherry_b.sdnet"));
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 60; ++iter) {
    const Network& a = pool[rng() % pool.size()];
    const Network& b = pool[rng() % pool.size()];
    const Network& c = pool[rng() % pool.size()];
    Count ab = mu_distance(a, b).value;
    CHECK(ab == mu_distance(b, a).value);
    CHECK(mu_distance(a, c).value <= ab + mu_distance(b, c).value);
  }
}

TEST_CASE("relabeling both networks by one taxon permutation preserves the distance") {
  std::map<std::string, std::string> perm = {{"1", "3"}, {"2", "1"}, {"3", "5"},
                                             {"4", "2"}, {"5", "4"}};
  Network a = load_fixture("net_tworoots.sdnet");
  Network b = load_fixture("net_five_a.sdnet");
  Count before = mu_distance(a, b).value;
  Count after = mu_distance(relabel(a, perm), relabel(b, perm)).value;
  CHECK(before == after);
  CHECK(before > 0);
}
