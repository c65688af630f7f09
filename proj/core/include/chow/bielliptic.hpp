#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chow/invariant.hpp"
#include "chow/qmatrix.hpp"
#include "chow/taut_class.hpp"

namespace chow {

/// Labels of the codimension-2 basis of the rational Chow group of M3bar, in order.
inline constexpr std::array<std::string_view, 7> kGenus3Basis = {
    "lambda^2", "lambda*delta0", "lambda*delta1", "delta0^2", "delta0*delta1", "delta1^2", "kappa2"};

struct Genus3Class {
  std::array<Rational, 7> coords;

  Rational evaluate_on(const std::array<Rational, 7>& intersection_numbers) const;
  std::string to_string() const;
  friend bool operator==(const Genus3Class&, const Genus3Class&) = default;
};

struct TestSurface {
  std::string name;
  std::array<Rational, 7> numbers;        // same order as kGenus3Basis
  std::optional<Rational> expected_count;  // value of the class on the surface, when known
};

struct ReferenceValue {
  std::string name;
  Rational value;
};

/// Constants that come from geometry outside the symbolic engine.
struct PipelineInputs {
  TautClass vermeire;  // class of the closure of I_6 on M0,6
  Rational alpha = 1, beta = 1, gamma = 1, delta = 1;
  std::string genus2_delta0, genus2_delta1;  // pull-back expressions on M0,6
  Rational genus2_lambda_delta0, genus2_lambda_delta1;
  std::string genus3_delta0, genus3_delta1, genus3_kappa1, genus3_kappa2;  // on M0,8
  Rational lambda_kappa1, lambda_delta0, lambda_delta1;
  std::vector<TestSurface> surfaces;
  std::vector<ReferenceValue> references;
};

/// Inputs compiled in from data/bielliptic_inputs.json.
const PipelineInputs& default_inputs();
PipelineInputs parse_inputs(std::string_view json);
/// JSON list of {name, numbers: [7 strings], expected_count}.
std::vector<TestSurface> parse_surfaces(std::string_view json);

TautClass vermeire_class(const PipelineInputs& in = default_inputs());

struct CorrectionClasses {
  TautClass div;
  TautClass type_i;
  TautClass type_ii;
};

/// The boundary components of pi_12^{-1}(I6) . pi_78^{-1}(I6) other than I8.
CorrectionClasses correction_classes(const PipelineInputs& in = default_inputs());

/// Pull-back of a class on M0,6 along the map forgetting markings 1,2 of M0,8
/// and renaming 7,8 to 1,2.
TautClass pullback_pi12(const TautClass& c);
/// Pull-back along the map forgetting markings 7,8.
TautClass pullback_pi78(const TautClass& c);

/// pi_12^*(V) . pi_78^*(V).
TautClass vermeire_product(const PipelineInputs& in = default_inputs());
/// Class of the closure of I_8 on M0,8 (for the involution (12)(34)(56)(78)).
TautClass i8_class(const PipelineInputs& in = default_inputs());
/// Sum of the conjugates of i8_class over the 105 fixed-point-free involutions.
InvariantClass i8_inv(const PipelineInputs& in = default_inputs());

struct PhiPullbacks {
  TautClass lambda, delta0, delta1, kappa1, kappa2;
};
PhiPullbacks phi_pullbacks(const PipelineInputs& in = default_inputs());

/// Matrix of the pull-back from A^2(M3bar) to the invariant part of A^2(M0,8):
/// row i lists the d-basis coordinates of the pull-back of kGenus3Basis[i].
QMatrix phi_matrix(const PipelineInputs& in = default_inputs());
QMatrix phi_matrix(const PhiPullbacks& pullbacks);

/// Coordinates x_i = over_epsilon[i] / epsilon + per_d[i] * d, where d is
/// the delta0^2 coordinate; the solutions of phi^* x = i8_inv / epsilon.
struct ParametricFamily {
  std::array<Rational, 7> over_epsilon;
  std::array<Rational, 7> per_d;

  Genus3Class at(const Rational& epsilon, const Rational& d) const;
  /// "(459+560*d*eps)/(6*eps)" style rendering of coordinate i.
  std::string format(std::size_t i) const;
};

ParametricFamily parametric_family(const QMatrix& phi, const InvariantClass& i8inv);

struct SurfaceCheck {
  std::string name;
  Rational value;
  std::optional<Rational> expected;
  bool consistent;
};

struct Genus3Solution {
  Genus3Class bielliptic;
  Rational epsilon;
  Rational d;
  /// Value of the solved class on every supplied surface.
  std::vector<SurfaceCheck> checks;
};

/// Fixes epsilon and d from every surface with an expected count. Throws
/// DomainError on inconsistent data, underdetermined data, or non-integer epsilon.
Genus3Solution solve_genus3(const ParametricFamily& family, const std::vector<TestSurface>& surfaces);

struct Genus2Solution {
  InvariantClass i6_inv;
  Rational delta0, delta1;         // over (delta0, delta1)
  Rational lambda, lambda_delta1;  // over (lambda, delta1)
};

Genus2Solution solve_genus2(const PipelineInputs& in = default_inputs());

}  // namespace chow
