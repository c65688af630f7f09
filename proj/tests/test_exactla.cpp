#include <numeric>
#include <random>

#include "chow/errors.hpp"
#include "chow/permutation.hpp"
#include "chow/qmatrix.hpp"
#include "chow/rational.hpp"
#include "doctest.h"

using namespace chow;

namespace {

// Reference fraction arithmetic on machine integers.
struct Frac {
  long long p, q;
  Frac(long long a, long long b) {
    if (b < 0) a = -a, b = -b;
    const long long g = std::gcd(a < 0 ? -a : a, b);
    p = a / g;
    q = b / g;
  }
};
Frac add(Frac a, Frac b) { return Frac(a.p * b.q + b.p * a.q, a.q * b.q); }
Frac mulf(Frac a, Frac b) { return Frac(a.p * b.p, a.q * b.q); }
bool same(const Rational& r, Frac f) { return r == Rational(f.p, f.q); }

QMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int zero_bias) {
  std::uniform_int_distribution<long> v(-4, 4);
  std::uniform_int_distribution<int> z(0, 9);
  std::vector<Rational> e;
  for (std::size_t i = 0; i < rows * cols; ++i) e.emplace_back(z(rng) < zero_bias ? 0 : v(rng), 1 + (i % 3));
  return QMatrix(rows, cols, std::move(e));
}

}  // namespace

TEST_CASE("rational normal form and parsing") {
  CHECK(Rational(6, -4).to_string() == "-3/2");
  CHECK(Rational(0, 7).to_string() == "0");
  CHECK(Rational(10, 5).is_integer());
  CHECK(Rational::parse(" -12/8 ") == Rational(-3, 2));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), ParseError);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("rational arithmetic agrees with integer fractions") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long long> num(-50, 50), den(1, 40);
  for (int i = 0; i < 500; ++i) {
    const Frac a(num(rng), den(rng)), b(num(rng), den(rng));
    const Rational ra(a.p, a.q), rb(b.p, b.q);
    CHECK(same(ra + rb, add(a, b)));
    CHECK(same(ra * rb, mulf(a, b)));
    CHECK(same(ra - rb, add(a, Frac(-b.p, b.q))));
  }
}

TEST_CASE("solve_affine returns exact solutions and kernels") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 2 + trial % 5, cols = 2 + (trial * 7) % 6;
    const QMatrix m = random_matrix(rng, rows, cols, trial % 7);
    QVector x0(cols);
    std::uniform_int_distribution<long> v(-3, 3);
    for (auto& x : x0) x = Rational(v(rng), 2);
    const QVector b = m * x0;
    const auto sol = solve_affine(m, b);
    REQUIRE(sol.has_value());
    CHECK(m * sol->particular == b);
    CHECK(sol->kernel.size() + rank(m) == cols);
    for (const auto& k : sol->kernel) CHECK(m * k == QVector(rows));
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("solve_affine detects inconsistent systems") {
  const QMatrix m(2, 1, {Rational(1), Rational(2)});
  const QVector b{Rational(1), Rational(3)};
  CHECK_FALSE(solve_affine(m, b).has_value());
}

TEST_CASE("rref is idempotent and has unit pivots") {
  std::mt19937 rng(3);
  const QMatrix m = random_matrix(rng, 5, 6, 3);
  const RrefResult r = rref(m);
  CHECK(rref(r.reduced).reduced == r.reduced);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    CHECK(r.reduced(i, r.pivots[i]) == Rational(1));
    for (std::size_t k = 0; k < m.rows(); ++k) {
      if (k != i) CHECK(r.reduced(k, r.pivots[i]).is_zero());
    }
  }
}

TEST_CASE("permutations: cycles, composition, action on masks") {
  const Permutation a = Permutation::parse_cycles("(123)", 4);
  const Permutation b = Permutation::parse_cycles("(12)(34)", 4);
  CHECK(a(1) == 2);
  CHECK(a(3) == 1);
  CHECK((a * b)(1) == a(b(1)));
  CHECK((a * a.inverse()) == Permutation::identity(4));
  CHECK(b.is_involution());
  CHECK(b.fixed_points() == 0);
  CHECK(b.apply_mask(0b0101) == 0b1010);
  CHECK(Permutation::parse_cycles("(1,10)(2,3)", 10)(10) == 1);
  CHECK(Permutation::parse_cycles(b.to_cycle_string(), 4) == b);
  CHECK_THROWS_AS(Permutation::parse_cycles("(12", 4), ParseError);
}

TEST_CASE("fixed-point-free involutions and their representatives") {
  for (int n : {4, 6, 8}) {
    const auto all = fixed_point_free_involutions(n);
    std::size_t want = 1;
    for (int k = n - 1; k > 0; k -= 2) want *= static_cast<std::size_t>(k);
    CHECK(all.size() == want);
    const Permutation base = standard_involution(n);
    for (const auto& c : all) {
      CHECK(c.involution.is_involution());
      CHECK(c.involution.fixed_points() == 0);
      CHECK(c.representative * base * c.representative.inverse() == c.involution);
    }
  }
  CHECK_THROWS(fixed_point_free_involutions(5));
}

TEST_CASE("centralizer elements commute with the standard involution") {
  const Permutation base = standard_involution(8);
  CHECK(centralizer_order(8) == 384);
  for (std::uint64_t i = 0; i < centralizer_order(8); i += 7) {
    const Permutation z = centralizer_element(8, i);
    CHECK(z * base == base * z);
  }
}
