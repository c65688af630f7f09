#include <algorithm>
#include <random>
#include <set>

#include "chow/errors.hpp"
#include "chow/strata.hpp"
#include "doctest.h"

using namespace chow;

namespace {

// Independent count of codim-k strata: sets of k pairwise nested-or-disjoint
// splits, enumerated naively over bitmasks of {2..n}.
std::size_t brute_force_count(int n, int k) {
  std::vector<Mask> splits;
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    if (m & 1) continue;
    const int s = __builtin_popcount(m);
    if (s >= 2 && n - s >= 2) splits.push_back(m);
  }
  auto ok = [](Mask a, Mask b) { return (a & b) == 0 || (a & b) == a || (a & b) == b; };
  std::size_t count = 0;
  std::vector<Mask> chosen;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(chosen.size()) == k) {
      ++count;
      return;
    }
    for (std::size_t i = start; i < splits.size(); ++i) {
      if (std::all_of(chosen.begin(), chosen.end(), [&](Mask c) { return ok(c, splits[i]); })) {
        chosen.push_back(splits[i]);
        self(self, i + 1);
        chosen.pop_back();
      }
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace

TEST_CASE("strata counts match a brute-force enumeration") {
  for (int n = 4; n <= 8; ++n) {
    for (int k = 0; k <= std::min(n - 3, 3); ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(enumerate_strata(n, k).size() == brute_force_count(n, k));
    }
  }
  CHECK(enumerate_strata(6, 1).size() == 25);
  CHECK(enumerate_strata(8, 2).size() == 1918);
}

TEST_CASE("partitions parse, normalize and print") {
  const Partition2 p = Partition2::parse("(15|2346)", 6);
  CHECK(p.side() == (marking_bit(2) | marking_bit(3) | marking_bit(4) | marking_bit(6)));
  CHECK(Partition2::parse("2346|15", 6) == p);
  CHECK(Partition2::parse(p.to_string(), 6) == p);
  CHECK_THROWS_AS(Partition2::parse("(1|23456)", 6), ParseError);
  CHECK_THROWS_AS(Partition2::parse("(12|345)", 6), ParseError);
  CHECK_THROWS_AS(Partition2::parse("(12|3345)", 6), ParseError);
}

TEST_CASE("chain strata round-trip through text") {
  const StableTree t = StableTree::parse_chain("(1278|56|34)", 8);
  CHECK(t.codim() == 2);
  CHECK(t.is_chain());
  CHECK(StableTree::parse(t.to_string(), 8) == t);
  CHECK(StableTree::parse_chain("(34|56|1278)", 8) == t);
  CHECK(t.chain_blocks().size() == 3);
  const StableTree four = StableTree::parse_chain("(35|17|28|46)", 8);
  CHECK(four.codim() == 3);
  CHECK_THROWS_AS(StableTree::parse_chain("(1|2345|678)", 8), ParseError);
}

TEST_CASE("canonical form ignores vertex and edge order") {
  // Star: centre with legs 1,2; three arms carrying {3,4}, {5,6}, {7,8}.
  TreeGraph g;
  g.n = 8;
  g.vertex_legs = {{1, 2}, {3, 4}, {5, 6}, {7, 8}};
  g.edges = {{0, 1}, {0, 2}, {0, 3}};
  const StableTree a = canonicalize(g);
  TreeGraph h;
  h.n = 8;
  h.vertex_legs = {{7, 8}, {5, 6}, {2, 1}, {4, 3}};
  h.edges = {{2, 1}, {3, 2}, {0, 2}};
  CHECK(canonicalize(h) == a);
  CHECK(a.codim() == 3);
  CHECK_FALSE(a.is_chain());
  CHECK(tree_from_json(a.to_json(), 8) == a);

  TreeGraph unstable;
  unstable.n = 5;
  unstable.vertex_legs = {{1, 2, 3}, {4}, {5}};
  unstable.edges = {{0, 1}, {1, 2}};
  CHECK_THROWS(canonicalize(unstable));
}

TEST_CASE("vertices of a stratum are stable and cover the markings") {
  for (const auto& t : enumerate_strata(7, 2)) {
    Mask legs = 0;
    const auto verts = t.vertices();
    CHECK(verts.size() == 3);
    for (const auto& v : verts) {
      CHECK(v.valence() >= 3);
      CHECK((legs & v.legs) == 0);
      legs |= v.legs;
    }
    CHECK(legs == full_mask(7));
    CHECK((verts[0].legs & 1u) != 0);
  }
}

TEST_CASE("the symmetric group acts on strata") {
  std::mt19937 rng(9);
  const auto strata = enumerate_strata(7, 2);
  std::vector<int> im{1, 2, 3, 4, 5, 6, 7};
  for (int trial = 0; trial < 30; ++trial) {
    std::shuffle(im.begin(), im.end(), rng);
    const Permutation s = Permutation::from_images(im);
    std::shuffle(im.begin(), im.end(), rng);
    const Permutation u = Permutation::from_images(im);
    const StableTree& t = strata[trial * 13 % strata.size()];
    CHECK(apply_permutation(apply_permutation(t, u), s) == apply_permutation(t, s * u));
    CHECK(apply_permutation(t, Permutation::identity(7)) == t);
  }
}

TEST_CASE("compatibility of a partition with a stratum") {
  const StableTree t = StableTree::parse_chain("(12|345|678)", 8);
  CHECK(std::holds_alternative<ExistingEdge>(compatibility(Partition2::parse("(12|345678)", 8), t)));
  CHECK(std::holds_alternative<Incompatible>(compatibility(Partition2::parse("(13|245678)", 8), t)));
  const auto r = compatibility(Partition2::parse("(1234|5678)", 8), t);
  REQUIRE(std::holds_alternative<NewEdge>(r));
  CHECK(t.compatible_with(std::get<NewEdge>(r).split));
}

TEST_CASE("orbit decomposition of codimension-2 strata on eight markings") {
  const auto orbits = orbit_decompose(8, 2);
  std::vector<std::string> names;
  std::size_t total = 0;
  for (const auto& o : orbits) {
    names.push_back(o.shape.to_string());
    total += o.members;
  }
  CHECK(names == std::vector<std::string>{"d_{5,1,2}", "d_{4,2,2}", "d_{4,1,3}", "d_{3,3,2}", "d_{3,2,3}", "d_{2,4,2}"});
  CHECK(total == 1918);
  CHECK(parse_shape("d_{2,1,5}", 8) == parse_shape("5,1,2", 8));
  const auto divisors = orbit_decompose(8, 1);
  REQUIRE(divisors.size() == 3);
  CHECK(divisors[0].shape.to_string() == "d_{2,6}");
  CHECK(divisors[0].members == 28);
  CHECK(divisors[1].members == 56);
  CHECK(divisors[2].members == 35);
}
