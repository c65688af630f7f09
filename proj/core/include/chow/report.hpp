#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chow/bielliptic.hpp"

namespace chow {

struct ReportOptions {
  int genus = 0;  // 2, 3, or 0 for both
  /// Surfaces supplied by the caller; evaluated on the genus-3 class only.
  std::vector<TestSurface> extra_surfaces;
};

/// Value of the genus-3 class on a caller-supplied surface, with the
/// published reference value when the name matches one.
struct ExternalCheck {
  SurfaceCheck check;
  std::optional<Rational> reference;
};

struct Report {
  std::optional<Genus2Solution> genus2;
  std::optional<InvariantClass> i8inv;
  std::optional<QMatrix> phi;
  std::optional<ParametricFamily> family;
  std::optional<Genus3Solution> genus3;
  /// <per_d, numbers> for each built-in surface: how the value moves with d.
  std::vector<Rational> kernel_values;
  std::vector<ExternalCheck> external;
};

Report build_report(const PipelineInputs& in, const ReportOptions& options);

/// Sections genus2, i8inv, phi_matrix, parametric_family, genus3,
/// surface_checks (and external_surfaces when requested); rationals as "p/q".
std::string report_json(const Report& r);
std::string report_text(const Report& r);

}  // namespace chow
