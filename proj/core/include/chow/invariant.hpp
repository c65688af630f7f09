#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chow/permutation.hpp"
#include "chow/qmatrix.hpp"
#include "chow/taut_class.hpp"

namespace chow {

/// Coordinates of an Sn-invariant class over the orbit sums d_lambda.
struct InvariantClass {
  int n = 0;
  int codim = 0;
  std::vector<std::pair<ShapeLabel, Rational>> coeffs;  // basis order

  Rational coefficient(const std::string& label) const;
  QVector values() const;
  /// {"d_{5,1,2}": "5/2", ...} in basis order.
  std::string to_json() const;
  std::string to_string() const;
};

/// Orbit sum of every stratum of the given shape, coefficient 1 each.
TautClass d_class(int n, const ShapeLabel& shape);

/// Shapes of all Sn-orbits of codim-k strata, in basis order.
std::vector<ShapeLabel> invariant_shapes(int n, int codim);
std::vector<TautClass> invariant_basis(int n, int codim);

/// Coordinates of c over invariant_basis; DomainError when c is not in their span.
InvariantClass to_invariant(const TautClass& c);
TautClass from_invariant(const InvariantClass& c);

/// Sum of sigma_tau . c over every fixed-point-free involution tau, where
/// sigma_tau conjugates `base` to tau.
TautClass sum_over_conjugates(const TautClass& c, const Permutation& base);

/// The conjugating permutations used by sum_over_conjugates, one per involution.
std::vector<Permutation> conjugating_representatives(const Permutation& base);

}  // namespace chow
