#include "chow/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace chow;

TEST_CASE("genus-2 report has only the genus-2 section") {
  const auto r = build_report(default_inputs(), {2, {}});
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j.size() == 1);
  CHECK(j["genus2"]["delta_form"]["delta0"] == "3/2");
  CHECK(j["genus2"]["lambda_form"]["lambda"] == "15");
}

TEST_CASE("full report sections and determinism") {
  const auto r = build_report(default_inputs(), {});
  const std::string text = report_json(r);
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"genus2", "i8inv", "phi_matrix", "parametric_family", "genus3", "surface_checks"}) {
    CHECK(j.contains(key));
  }
  CHECK_FALSE(j.contains("external_surfaces"));
  CHECK(j["i8inv"]["d_{3,3,2}"] == "15/4");
  CHECK(j["genus3"]["class"]["lambda^2"] == "2673/2");
  CHECK(j["genus3"]["epsilon"] == "1");
  CHECK(j["phi_matrix"]["rank"] == 6);
  CHECK(j["parametric_family"]["symbolic"]["kappa2"] == "-9/(2*eps)");
  for (const auto& c : j["surface_checks"]) CHECK(c["consistent"] == true);
  CHECK(report_json(build_report(default_inputs(), {})) == text);
  CHECK(report_text(r).find("2673/2*lambda^2") != std::string::npos);
}

TEST_CASE("extra surfaces are evaluated and matched with reference values") {
  ReportOptions opts;
  opts.genus = 3;
  opts.extra_surfaces = parse_surfaces(
      R"([{"name": "Sigma6", "numbers": ["1","0","0","0","0","0","0"]},
          {"name": "Custom", "numbers": ["0","0","0","0","0","0","2"], "expected_count": "-9"}])");
  const auto r = build_report(default_inputs(), opts);
  REQUIRE(r.external.size() == 2);
  CHECK(r.external[0].check.value == Rational(2673, 2));
  CHECK(*r.external[0].reference == Rational(225));
  CHECK_FALSE(r.external[1].reference.has_value());
  CHECK(r.external[1].check.consistent);
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["external_surfaces"][0]["source"] == "external data required");
  CHECK_FALSE(j.contains("genus2"));
}
