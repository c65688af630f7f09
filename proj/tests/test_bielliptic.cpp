#include "chow/bielliptic.hpp"
#include "chow/chow_ring.hpp"
#include "chow/errors.hpp"
#include "doctest.h"

using namespace chow;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }
StableTree chain(const char* text) { return StableTree::parse_chain(text, 8); }

const QVector kI8 = {q(5, 2), q(7, 4), q(3, 4), q(15, 4), q(3), q(3, 2)};
const QVector kGenus3Class = {q(2673, 2), q(-267), q(-651), q(27, 2), q(69), q(177, 2), q(-9, 2)};

}  // namespace

TEST_CASE("Vermeire class") {
  const TautClass v = vermeire_class();
  CHECK(v.size() == 6);
  CHECK(v.coefficient(StableTree::parse_chain("(56|1234)", 6)) == q(-1));
  CHECK(v.coefficient(StableTree::parse_chain("(125|346)", 6)) == q(2));
}

TEST_CASE("correction classes") {
  const CorrectionClasses c = correction_classes();
  TautClass div(8, 2);
  for (const char* t : {"(1278|5|346)", "(1278|6|345)", "(1278|56|34)"}) div.add(chain(t), 1);
  CHECK(c.div == div);

  TautClass type_i(8, 2);
  type_i.add(chain("(35|1278|46)"), 1);
  type_i.add(chain("(36|1278|45)"), 1);
  CHECK(c.type_i == type_i);

  // Type II from its description: {3,4} (or {5,6}) in the middle and each
  // other pair split between the two outer components.
  TautClass type_ii(8, 2);
  struct Layout {
    int mid[2];
    int pairs[3][2];
  };
  for (const Layout& l : {Layout{{3, 4}, {{1, 2}, {5, 6}, {7, 8}}}, Layout{{5, 6}, {{1, 2}, {3, 4}, {7, 8}}}}) {
    for (int choice = 0; choice < 8; ++choice) {
      Mask left = 0;
      for (int k = 0; k < 3; ++k) left |= marking_bit(l.pairs[k][(choice >> k) & 1]);
      const Mask splits[2] = {left, left | marking_bit(l.mid[0]) | marking_bit(l.mid[1])};
      const StableTree t = StableTree::from_splits(8, splits);
      if (type_ii.coefficient(t).is_zero()) type_ii.add(t, 1);
    }
  }
  CHECK(type_ii.size() == 8);
  CHECK(c.type_ii == type_ii);
}

TEST_CASE("pulled-back classes") {
  const TautClass v = vermeire_class();
  const TautClass a = pullback_pi12(v);
  const TautClass b = pullback_pi78(v);
  CHECK(a.n() == 8);
  CHECK(a.codim() == 1);
  // The loci are preserved by (12)(34)(56)(78) as Chow classes.
  const Permutation inv = standard_involution(8);
  CHECK(is_zero(a - apply_permutation(a, inv)));
  CHECK(is_zero(b - apply_permutation(b, inv)));
  // pi_78 forgets 7,8; pi_12 is its conjugate by (17)(28).
  CHECK(a == apply_permutation(b, Permutation::parse_cycles("(17)(28)", 8)));
}

TEST_CASE("invariant class of I8 and linearity of the symmetrization") {
  const InvariantClass i8 = i8_inv();
  CHECK(i8.values() == kI8);
  const CorrectionClasses c = correction_classes();
  const Permutation base = standard_involution(8);
  const TautClass product_sym = sum_over_conjugates(vermeire_product(), base);
  const TautClass corr_sym = sum_over_conjugates(c.div + c.type_i + c.type_ii, base);
  CHECK(to_invariant(product_sym - corr_sym).values() == kI8);
}

TEST_CASE("pull-back matrix") {
  const PhiPullbacks p = phi_pullbacks();
  CHECK(to_invariant(p.lambda).values() == QVector{q(3, 14), q(1, 7), q(2, 7)});
  CHECK(to_invariant(p.delta0).values() == QVector{q(2), q(0), q(2)});
  CHECK(to_invariant(p.delta1).values() == QVector{q(0), q(1, 2), q(0)});
  const QMatrix m = phi_matrix(p);
  CHECK(m.rows() == 7);
  CHECK(m.cols() == 6);
  CHECK(rank(m) == 6);
  CHECK(kernel(m.transpose()).size() == 1);
  CHECK(QVector(m.row(1).begin(), m.row(1).end()) == QVector{q(0), q(11, 15), q(0), q(1, 5), q(0), q(4, 5)});
  CHECK(QVector(m.row(6).begin(), m.row(6).end()) ==
        QVector{q(13, 84), q(6, 35), q(33, 140), q(1, 8), q(33, 140), q(2, 35)});
  // Ring-map check on one product: row of delta0*delta1 equals the
  // invariant coordinates of the product of the pulled-back divisors.
  CHECK(QVector(m.row(4).begin(), m.row(4).end()) == to_invariant(mul(p.delta0, p.delta1)).values());
  // The final class maps to the I8 vector.
  CHECK(m.transpose() * kGenus3Class == kI8);
}

TEST_CASE("published numbers force the lambda^2 row") {
  // Using only the published final class, I8 vector and rows 2..7 of the
  // published matrix, solve for the lambda^2 entries in the last two columns.
  const std::vector<QVector> rows = {
      {q(0), q(11, 15), q(0), q(1, 5), q(0), q(4, 5)},
      {q(1, 12), q(0), q(1, 10), q(1, 10), q(1, 10), q(0)},
      {q(-8, 3), q(86, 15), q(-2), q(-4, 5), q(0), q(112, 15)},
      {q(1), q(0), q(1), q(1), q(0), q(0)},
      {q(-1, 12), q(0), q(-3, 20), q(-1, 40), q(7, 20), q(0)},
      {q(13, 84), q(6, 35), q(33, 140), q(1, 8), q(33, 140), q(2, 35)},
  };
  QVector forced(6);
  for (std::size_t col = 0; col < 6; ++col) {
    Rational rest;
    for (std::size_t r = 0; r < 6; ++r) rest += kGenus3Class[r + 1] * rows[r][col];
    forced[col] = (kI8[col] - rest) / kGenus3Class[0];
  }
  CHECK(forced == QVector{q(1, 42), q(19, 210), q(1, 35), q(1, 20), q(1, 35), q(3, 35)});
  const QMatrix m = phi_matrix();
  CHECK(QVector(m.row(0).begin(), m.row(0).end()) == forced);
}

TEST_CASE("parametric family and genus-3 solution") {
  const ParametricFamily f = parametric_family(phi_matrix(), i8_inv());
  CHECK(f.over_epsilon == std::array<Rational, 7>{q(459, 6), q(-6), q(-39), q(0), q(6), q(33, 2), q(-9, 2)});
  CHECK(f.per_d == std::array<Rational, 7>{q(560, 6), q(-58, 3), q(-136, 3), q(1), q(14, 3), q(32, 6), q(0)});
  CHECK(f.format(0) == "(459+560*d*eps)/(6*eps)");
  CHECK(f.format(3) == "d");
  CHECK(f.format(6) == "-9/(2*eps)");
  CHECK(f.at(q(1), q(0)).coords == f.over_epsilon);

  const auto& surfaces = default_inputs().surfaces;
  const Genus3Solution s = solve_genus3(f, surfaces);
  CHECK(s.epsilon == q(1));
  CHECK(s.d == q(27, 2));
  CHECK(std::vector<Rational>(s.bielliptic.coords.begin(), s.bielliptic.coords.end()) == kGenus3Class);
  for (const auto& c : s.checks) CHECK(c.consistent);

  // Sigma2 is a genuine check only if it sees the free direction: report it.
  for (const auto& surf : surfaces) {
    if (surf.name == "Sigma2") CHECK(dot(f.per_d, surf.numbers) == q(0));
    if (surf.name == "Sigma1") CHECK(dot(f.per_d, surf.numbers) != q(0));
  }

  std::vector<TestSurface> reversed(surfaces.rbegin(), surfaces.rend());
  CHECK(solve_genus3(f, reversed).bielliptic == s.bielliptic);
}

TEST_CASE("genus-3 solve rejects bad surface data") {
  const ParametricFamily f = parametric_family(phi_matrix(), i8_inv());
  std::vector<TestSurface> s = default_inputs().surfaces;
  for (auto& x : s) {
    if (x.name == "Sigma8") x.expected_count = q(48);  // would need eps = 1/2
  }
  CHECK_THROWS_AS(solve_genus3(f, s), DomainError);
  s = default_inputs().surfaces;
  for (auto& x : s) {
    if (x.name == "Sigma2") x.expected_count = q(1);
  }
  CHECK_THROWS_AS(solve_genus3(f, s), DomainError);
  std::vector<TestSurface> only_one;
  for (const auto& x : default_inputs().surfaces) {
    if (x.name == "Sigma8") only_one.push_back(x);
  }
  CHECK_THROWS_AS(solve_genus3(f, only_one), DomainError);
}

TEST_CASE("genus-2 class") {
  const Genus2Solution g = solve_genus2();
  CHECK(g.i6_inv.values() == QVector{q(3), q(3)});
  CHECK(g.delta0 == q(3, 2));
  CHECK(g.delta1 == q(6));
  CHECK(g.lambda == q(15));
  CHECK(g.lambda_delta1 == q(3));
}

TEST_CASE("input parsing") {
  CHECK(default_inputs().surfaces.size() == 3);
  CHECK(default_inputs().references.size() == 5);
  CHECK_THROWS_AS(parse_inputs("{"), ParseError);
  CHECK_THROWS_AS(parse_inputs("{}"), ParseError);
  const auto s = parse_surfaces(R"([{"name": "X", "numbers": ["1","0","0","0","0","0","1/2"], "expected_count": "3"}])");
  REQUIRE(s.size() == 1);
  CHECK(s[0].numbers[6] == q(1, 2));
  CHECK(*s[0].expected_count == q(3));
  CHECK_THROWS_AS(parse_surfaces(R"([{"name": "X", "numbers": ["1"]}])"), ParseError);
  CHECK_THROWS_AS(parse_surfaces(R"({"name": "X"})"), ParseError);
}
