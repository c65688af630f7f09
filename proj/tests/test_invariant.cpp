#include <random>

#include "chow/bielliptic.hpp"
#include "chow/chow_ring.hpp"
#include "chow/errors.hpp"
#include "chow/invariant.hpp"
#include "doctest.h"

using namespace chow;

TEST_CASE("orbit sums have the expected sizes") {
  CHECK(d_class(6, parse_shape("2,4", 6)).size() == 15);
  CHECK(d_class(6, parse_shape("3,3", 6)).size() == 10);
  CHECK(d_class(8, parse_shape("2,4,2", 8)).size() == 210);
  CHECK(d_class(8, parse_shape("5,1,2", 8)) == d_class(8, parse_shape("2,1,5", 8)));
  CHECK(invariant_shapes(8, 2).size() == 6);
  CHECK(invariant_shapes(8, 1).size() == 3);
}

TEST_CASE("to_invariant inverts d_class") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{6, 1}, {6, 2}, {7, 1}, {7, 2}, {8, 1}, {8, 2}}) {
    const auto shapes = invariant_shapes(n, k);
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      const InvariantClass inv = to_invariant(d_class(n, shapes[i]));
      for (std::size_t j = 0; j < shapes.size(); ++j) CHECK(inv.coeffs[j].second == Rational(i == j ? 1 : 0));
      CHECK(is_zero(from_invariant(inv) - d_class(n, shapes[i])));
    }
  }
}

TEST_CASE("non-invariant classes are rejected") {
  CHECK_THROWS_AS(to_invariant(psi_expand(6, 1)), DomainError);
}

TEST_CASE("a transposition leaves invariant coordinates unchanged") {
  const TautClass k = kappa_class(8, 2);
  const InvariantClass base = to_invariant(k);
  for (const char* t : {"(12)", "(38)", "(45)"}) {
    const InvariantClass moved = to_invariant(apply_permutation(k, Permutation::parse_cycles(t, 8)));
    CHECK(moved.values() == base.values());
  }
}

TEST_CASE("conjugate sums") {
  const TautClass v = default_inputs().vermeire;
  const TautClass i6 = sum_over_conjugates(v, standard_involution(6));
  const InvariantClass inv = to_invariant(i6);
  CHECK(inv.coefficient("d_{2,4}") == Rational(3));
  CHECK(inv.coefficient("d_{3,3}") == Rational(3));

  // A fully symmetric class is summed once per involution.
  const TautClass sym = d_class(8, parse_shape("2,6", 8));
  CHECK(sum_over_conjugates(sym, standard_involution(8)) == sym * Rational(105));
  CHECK(conjugating_representatives(standard_involution(8)).size() == 105);
  CHECK_THROWS(sum_over_conjugates(v, Permutation::parse_cycles("(12)(34)", 6)));
}

TEST_CASE("conjugates do not depend on the chosen representative") {
  const TautClass v = default_inputs().vermeire;
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> pick(0, centralizer_order(6) - 1);
  const auto reps = conjugating_representatives(standard_involution(6));
  for (int s = 0; s < 10; ++s) {
    const Permutation z = centralizer_element(6, pick(rng));
    CHECK(is_zero(v - apply_permutation(v, z)));
    for (const auto& sigma : reps) CHECK(is_zero(apply_permutation(v, sigma) - apply_permutation(v, sigma * z)));
  }
}
