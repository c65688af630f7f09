#include "chow/report.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace chow {

namespace {

using ojson = nlohmann::ordered_json;

ojson rational_list(std::span<const Rational> v) {
  ojson out = ojson::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

ojson invariant_json(const InvariantClass& c) {
  ojson out = ojson::object();
  for (const auto& [label, value] : c.coeffs) out[label.to_string()] = value.to_string();
  return out;
}

ojson basis_json(const std::array<Rational, 7>& coords) {
  ojson out = ojson::object();
  for (std::size_t i = 0; i < 7; ++i) out[std::string(kGenus3Basis[i])] = coords[i].to_string();
  return out;
}

ojson check_json(const SurfaceCheck& c) {
  ojson out;
  out["name"] = c.name;
  out["value"] = c.value.to_string();
  out["expected"] = c.expected ? ojson(c.expected->to_string()) : ojson(nullptr);
  out["consistent"] = c.consistent;
  return out;
}

}  // namespace

Report build_report(const PipelineInputs& in, const ReportOptions& options) {
  if (options.genus != 0 && options.genus != 2 && options.genus != 3) {
    throw std::invalid_argument("build_report: genus must be 2 or 3");
  }
  Report r;
  if (options.genus != 3) r.genus2 = solve_genus2(in);
  if (options.genus == 2) return r;

  r.i8inv = i8_inv(in);
  r.phi = phi_matrix(in);
  r.family = parametric_family(*r.phi, *r.i8inv);
  r.genus3 = solve_genus3(*r.family, in.surfaces);
  for (const auto& s : in.surfaces) r.kernel_values.push_back(dot(r.family->per_d, s.numbers));
  for (const auto& s : options.extra_surfaces) {
    ExternalCheck e;
    const Rational v = r.genus3->bielliptic.evaluate_on(s.numbers);
    e.check = {s.name, v, s.expected_count, !s.expected_count || *s.expected_count == v};
    for (const auto& ref : in.references) {
      if (ref.name == s.name) e.reference = ref.value;
    }
    r.external.push_back(std::move(e));
  }
  return r;
}

std::string report_json(const Report& r) {
  ojson out = ojson::object();
  if (r.genus2) {
    const auto& g = *r.genus2;
    ojson s;
    s["i6_inv"] = invariant_json(g.i6_inv);
    s["delta_form"] = {{"delta0", g.delta0.to_string()}, {"delta1", g.delta1.to_string()}};
    s["lambda_form"] = {{"lambda", g.lambda.to_string()}, {"delta1", g.lambda_delta1.to_string()}};
    out["genus2"] = s;
  }
  if (r.i8inv) out["i8inv"] = invariant_json(*r.i8inv);
  if (r.phi) {
    ojson m = ojson::object();
    for (std::size_t i = 0; i < r.phi->rows(); ++i) {
      m[std::string(kGenus3Basis[i])] = rational_list(r.phi->row(i));
    }
    ojson s;
    ojson cols = ojson::array();
    for (const auto& [label, value] : r.i8inv->coeffs) cols.push_back(label.to_string());
    s["columns"] = cols;
    s["rows"] = m;
    s["rank"] = rank(*r.phi);
    out["phi_matrix"] = s;
  }
  if (r.family) {
    ojson s;
    ojson sym = ojson::object();
    for (std::size_t i = 0; i < 7; ++i) sym[std::string(kGenus3Basis[i])] = r.family->format(i);
    s["symbolic"] = sym;
    s["over_epsilon"] = basis_json(r.family->over_epsilon);
    s["per_d"] = basis_json(r.family->per_d);
    out["parametric_family"] = s;
  }
  if (r.genus3) {
    ojson s;
    s["epsilon"] = r.genus3->epsilon.to_string();
    s["d"] = r.genus3->d.to_string();
    s["class"] = basis_json(r.genus3->bielliptic.coords);
    out["genus3"] = s;
    ojson checks = ojson::array();
    for (std::size_t i = 0; i < r.genus3->checks.size(); ++i) {
      ojson c = check_json(r.genus3->checks[i]);
      c["kernel_value"] = r.kernel_values.at(i).to_string();
      checks.push_back(c);
    }
    out["surface_checks"] = checks;
  }
  if (!r.external.empty()) {
    ojson ext = ojson::array();
    for (const auto& e : r.external) {
      ojson c = check_json(e.check);
      c["reference"] = e.reference ? ojson(e.reference->to_string()) : ojson(nullptr);
      c["source"] = "external data required";
      ext.push_back(c);
    }
    out["external_surfaces"] = ext;
  }
  return out.dump(2) + "\n";
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  if (r.genus2) {
    const auto& g = *r.genus2;
    os << "genus 2\n";
    os << "  I6 invariant      " << g.i6_inv.to_string() << "\n";
    os << "  class             " << g.delta0 << "*delta0 + " << g.delta1 << "*delta1\n";
    os << "                    " << g.lambda << "*lambda + " << g.lambda_delta1 << "*delta1\n";
  }
  if (r.i8inv) os << "I8 invariant\n  " << r.i8inv->to_string() << "\n";
  if (r.phi) {
    os << "pull-back matrix (columns";
    for (const auto& [label, value] : r.i8inv->coeffs) os << " " << label.to_string();
    os << ")\n";
    for (std::size_t i = 0; i < r.phi->rows(); ++i) {
      os << "  " << kGenus3Basis[i] << std::string(15 - kGenus3Basis[i].size(), ' ');
      for (const auto& x : r.phi->row(i)) os << " " << x;
      os << "\n";
    }
    os << "  rank " << rank(*r.phi) << "\n";
  }
  if (r.family) {
    os << "family in (d, eps)\n";
    for (std::size_t i = 0; i < 7; ++i) os << "  " << kGenus3Basis[i] << ": " << r.family->format(i) << "\n";
  }
  if (r.genus3) {
    os << "genus 3\n  eps = " << r.genus3->epsilon << ", d = " << r.genus3->d << "\n";
    os << "  class " << r.genus3->bielliptic.to_string() << "\n";
    os << "surface checks\n";
    for (std::size_t i = 0; i < r.genus3->checks.size(); ++i) {
      const auto& c = r.genus3->checks[i];
      os << "  " << c.name << ": " << c.value;
      if (c.expected) os << " (expected " << *c.expected << (c.consistent ? ", ok" : ", MISMATCH") << ")";
      os << ", d-direction " << r.kernel_values.at(i) << "\n";
    }
  }
  if (!r.external.empty()) {
    os << "external surfaces (external data required)\n";
    for (const auto& e : r.external) {
      os << "  " << e.check.name << ": " << e.check.value;
      if (e.reference) os << " (reference " << *e.reference << ")";
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace chow
