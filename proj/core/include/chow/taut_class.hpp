#pragma once

#include <map>
#include <string>

#include "chow/permutation.hpp"
#include "chow/rational.hpp"
#include "chow/strata.hpp"

namespace chow {

/// Exact linear combination of boundary strata of one M0,n, all of one
/// codimension. Zero coefficients are never stored; the empty map is zero.
class TautClass {
 public:
  using Terms = std::map<StableTree, Rational>;

  TautClass() = default;
  TautClass(int n, int codim);
  static TautClass fundamental(int n);
  static TautClass stratum(const StableTree& t, const Rational& coefficient = 1);
  static TautClass divisor(const Partition2& p);

  int n() const { return n_; }
  int codim() const { return codim_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  Rational coefficient(const StableTree& t) const;

  /// Adds c * [t]; t must match n and codim.
  void add(const StableTree& t, const Rational& c);

  TautClass& operator+=(const TautClass& o);
  TautClass& operator-=(const TautClass& o);
  TautClass& operator*=(const Rational& c);
  friend TautClass operator+(TautClass a, const TautClass& b) { return a += b; }
  friend TautClass operator-(TautClass a, const TautClass& b) { return a -= b; }
  friend TautClass operator*(TautClass a, const Rational& c) { return a *= c; }
  friend TautClass operator*(const Rational& c, TautClass a) { return a *= c; }
  TautClass operator-() const { return *this * Rational(-1); }

  /// Equality of strata combinations, not of Chow classes (see is_zero).
  friend bool operator==(const TautClass&, const TautClass&) = default;

  /// "(15|2346) + 2*(125|346) - (56|1234)"; "0" for the zero class.
  std::string to_string() const;

 private:
  void check_compatible(const TautClass& o) const;

  int n_ = 0;
  int codim_ = 0;
  Terms terms_;
};

TautClass apply_permutation(const TautClass& c, const Permutation& sigma);

}  // namespace chow
