#include <random>

#include "chow/chow_ring.hpp"
#include "chow/errors.hpp"
#include "doctest.h"

using namespace chow;

namespace {

Rational factorial(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= Rational(i);
  return f;
}

// Degree of psi_1^{a_1}...psi_n^{a_n} on M0,n by the multinomial formula.
Rational multinomial(const std::vector<int>& a) {
  Rational r = factorial(static_cast<int>(a.size()) - 3);
  for (int x : a) r = r / factorial(x);
  return r;
}

TautClass psi_monomial(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  TautClass c = TautClass::fundamental(n);
  for (int i = 0; i < n; ++i) c = mul(c, power(psi_expand(n, i + 1), a[i]));
  return c;
}

TautClass random_class(std::mt19937& rng, int n, int codim) {
  const auto strata = enumerate_strata(n, codim);
  std::uniform_int_distribution<std::size_t> pick(0, strata.size() - 1);
  std::uniform_int_distribution<long> coef(-2, 3);
  TautClass c(n, codim);
  for (int k = 0; k < 4; ++k) c.add(strata[pick(rng)], Rational(coef(rng)));
  return c;
}

}  // namespace

TEST_CASE("psi integrals follow the multinomial law") {
  for (const auto& a : std::vector<std::vector<int>>{
           {1, 0, 0, 0}, {2, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {3, 0, 0, 0, 0, 0}, {1, 1, 1, 0, 0, 0},
           {2, 1, 0, 0, 0, 0}, {2, 2, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 0, 0, 0}, {2, 1, 1, 1, 0, 0, 0, 0}}) {
    CHECK(integrate(psi_monomial(a)) == multinomial(a));
  }
}

TEST_CASE("psi expansion does not depend on the auxiliary markings") {
  for (int n = 4; n <= 6; ++n) {
    for (int i = 1; i <= n; ++i) {
      const TautClass ref = psi_expand(n, i);
      for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
          if (a != i && b != i) CHECK(chow_equal(psi_expand(n, i, std::make_pair(a, b)), ref));
    }
  }
  CHECK_THROWS(psi_expand(5, 1, std::make_pair(1, 2)));
}

TEST_CASE("self-intersection of a divisor on M0,5") {
  const TautClass d = TautClass::divisor(Partition2::parse("(12|345)", 5));
  CHECK(integrate(mul(d, d)) == Rational(-1));
  CHECK(integrate(mul(d, TautClass::divisor(Partition2::parse("(34|125)", 5)))) == Rational(1));
  CHECK(integrate(mul(d, TautClass::divisor(Partition2::parse("(13|245)", 5)))) == Rational(0));
}

TEST_CASE("Keel relations vanish on M0,5 and M0,6") {
  for (int n = 5; n <= 6; ++n) {
    auto d = [&](int a, int b, int x, int y) {
      TautClass s(n, 1);
      for (Mask m : all_splits(n)) {
        const Mask o = full_mask(n) ^ m;
        const auto has = [](Mask side, int i) { return (side >> (i - 1)) & 1u; };
        if ((has(m, a) && has(m, b) && has(o, x) && has(o, y)) || (has(o, a) && has(o, b) && has(m, x) && has(m, y))) {
          s += TautClass::divisor(Partition2(n, m));
        }
      }
      return s;
    };
    CHECK(is_zero(d(1, 2, 3, 4) - d(1, 3, 2, 4)));
    CHECK(is_zero(d(1, 2, 3, 4) - d(1, 4, 2, 3)));
    CHECK_FALSE(is_zero(d(1, 2, 3, 4)));
  }
}

TEST_CASE("multiplication is commutative and associative in the Chow ring") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 6 + trial % 2;
    const TautClass a = random_class(rng, n, 1), b = random_class(rng, n, 1), c = random_class(rng, n, 1);
    CHECK(is_zero(mul(a, b) - mul(b, a)));
    CHECK(is_zero(mul(mul(a, b), c) - mul(a, mul(b, c))));
    if (n == 6) CHECK(integrate(mul(mul(a, b), c)) == integrate(mul(a, mul(c, b))));
  }
}

TEST_CASE("kappa classes") {
  // kappa_1 = sum psi_i - sum of boundary divisors in genus 0.
  for (int n = 4; n <= 7; ++n) {
    CHECK(chow_equal(kappa_class(n, 1), psi_power_sum(n, 1) - boundary_sum(n)));
    CHECK(integrate(kappa_class(n, n - 3)) == Rational(1));
  }
  // Degrees of kappa monomials from pushing forward psi monomials:
  // pi_*(psi^2 psi^2) = kappa_1^2 + kappa_2 and
  // pi_*(psi^2 psi^2 psi^2) = kappa_1^3 + 3 kappa_1 kappa_2 + 2 kappa_3.
  const Rational k1sq_5 = multinomial({0, 0, 0, 0, 0, 2, 2}) - multinomial({0, 0, 0, 0, 0, 3});
  CHECK(integrate(power(kappa_class(5, 1), 2)) == k1sq_5);
  const Rational k3_6 = multinomial({0, 0, 0, 0, 0, 0, 4});
  const Rational k1k2_6 = multinomial({0, 0, 0, 0, 0, 0, 2, 3}) - k3_6;
  const Rational k1cube_6 = multinomial({0, 0, 0, 0, 0, 0, 2, 2, 2}) - 3 * k1k2_6 - 2 * k3_6;
  CHECK(integrate(mul(kappa_class(6, 1), kappa_class(6, 2))) == k1k2_6);
  CHECK(integrate(power(kappa_class(6, 1), 3)) == k1cube_6);
  CHECK(kappa_class(5, 3).empty());
}

TEST_CASE("push-forward after pull-back") {
  std::mt19937 rng(8);
  for (int n = 5; n <= 6; ++n) {
    for (int codim = 0; codim <= n - 3; ++codim) {
      const TautClass c = codim == 0 ? TautClass::fundamental(n) : random_class(rng, n, codim);
      for (int p : {1, n + 1}) {
        const TautClass up = pullback_forget(c, p);
        CHECK(pushforward_forget(up, p).empty());
        // Dilaton: pi_*(psi_p . pi^* c) = (n - 2) c.
        if (codim + 1 <= n - 2) {
          CHECK(chow_equal(pushforward_forget(mul(up, psi_expand(n + 1, p)), p), c * Rational(n - 2)));
        }
      }
    }
  }
}

TEST_CASE("pull-back of psi picks up the boundary correction") {
  // pi^* psi_1 = psi_1 - D({1,6}) on M0,6.
  const TautClass lhs = pullback_forget(psi_expand(5, 1), 6);
  const TautClass rhs = psi_expand(6, 1) - TautClass::divisor(Partition2::parse("(16|2345)", 6));
  CHECK(chow_equal(lhs, rhs));
}

TEST_CASE("pairing cache does not change results") {
  const TautClass k = kappa_class(7, 2);
  const QVector cached = pairing_vector(k);
  set_pairing_cache_enabled(false);
  const QVector fresh = pairing_vector(k);
  set_pairing_cache_enabled(true);
  CHECK(cached == fresh);
}

TEST_CASE("express_in and strata bases") {
  const TautClass psi1 = psi_expand(5, 1);
  const auto basis = strata_basis(5, 1);
  CHECK(basis.size() == 5);
  std::vector<TautClass> classes;
  for (const auto& t : basis) classes.push_back(TautClass::stratum(t));
  const QVector x = express_in(psi1, classes);
  TautClass back(5, 1);
  for (std::size_t i = 0; i < basis.size(); ++i) back.add(basis[i], x[i]);
  CHECK(chow_equal(back, psi1));
  classes.push_back(psi1);
  CHECK_THROWS_AS(express_in(psi1, classes), DomainError);
  CHECK_THROWS_AS(express_in(psi1, {psi_expand(5, 2)}), DomainError);
  const std::vector<std::size_t> betti = {1, 42, 127, 42, 1};
  for (int k = 0; k <= 4; ++k) CHECK(strata_basis(7, k).size() == betti[k]);
}
