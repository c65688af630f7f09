// chowcalc: command-line front end to the chow library.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "chow/acceptance.hpp"
#include "chow/bielliptic.hpp"
#include "chow/chow_ring.hpp"
#include "chow/errors.hpp"
#include "chow/expr.hpp"
#include "chow/invariant.hpp"
#include "chow/report.hpp"
#include "json.hpp"

namespace {

using chow::Rational;
using chow::TautClass;
using ojson = nlohmann::ordered_json;

constexpr const char* kGrammar = R"(Expressions (markings 1..n, n given by --n):
  D(15|2346)          boundary divisor
  S(1278|56|34)       chain stratum; S({json tree}) for other trees
  psi(i) kappa(a)     psi and kappa classes
  psitilde(j)         psi_1^j + ... + psi_n^j
  d(5,1,2)            invariant orbit sum of a shape
  + - * ^ and division by integers, rational constants such as 3/2)";

ojson class_json(const TautClass& c) {
  ojson out;
  out["n"] = c.n();
  out["codim"] = c.codim();
  ojson terms = ojson::array();
  for (const auto& [t, coef] : c.terms()) terms.push_back({t.to_string(), coef.to_string()});
  out["terms"] = terms;
  return out;
}

ojson invariant_json(const chow::InvariantClass& c) {
  ojson out;
  out["n"] = c.n;
  out["codim"] = c.codim;
  ojson coeffs = ojson::object();
  for (const auto& [label, v] : c.coeffs) coeffs[label.to_string()] = v.to_string();
  out["coefficients"] = coeffs;
  return out;
}

TautClass eval_text(const std::string& text, int n) { return chow::evaluate(chow::parse_expression(text, n)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chow::ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(bool json, const ojson& j, const std::string& text) {
  if (json) std::cout << j.dump(2) << "\n";
  else std::cout << text << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the Chow ring of M0,n and the bielliptic pipeline"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  int n = 0;
  std::string expression;
  auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Number of markings")->required()->check(CLI::Range(3, 10));
  };

  auto* eval = app.add_subcommand("eval", "Normal form of an expression as a combination of strata");
  eval->add_option("expression", expression)->required();
  add_n(eval);

  auto* integ = app.add_subcommand("integrate", "Degree of a top-codimension expression");
  integ->add_option("expression", expression)->required();
  add_n(integ);

  std::string basis = "invariant";
  auto* express = app.add_subcommand("express", "Coordinates over a basis of the Chow group");
  express->add_option("expression", expression)->required();
  add_n(express);
  express->add_option("--basis", basis, "invariant: orbit sums d_lambda; strata: a basis made of strata")
      ->check(CLI::IsMember({"strata", "invariant"}));

  std::string involution;
  std::string sym_basis = "strata";
  auto* sym = app.add_subcommand("symmetrize", "Sum over the conjugates of a fixed-point-free involution");
  sym->add_option("expression", expression)->required();
  add_n(sym);
  sym->add_option("--base-involution", involution, "Default (12)(34)...(n-1 n)");
  sym->add_option("--basis", sym_basis, "Output form")->check(CLI::IsMember({"strata", "invariant"}));

  int codim = 1;
  auto* orbits = app.add_subcommand("orbits", "Sn-orbits of boundary strata of one codimension");
  add_n(orbits);
  orbits->add_option("codim", codim, "Codimension")->required();

  int genus = 0;
  std::string surfaces_file;
  auto* pipeline = app.add_subcommand("pipeline", "Bielliptic classes in genus 2 and 3");
  pipeline->add_option("--genus", genus, "2 or 3 (default: both)")->check(CLI::IsMember({2, 3}));
  pipeline->add_option("--surfaces", surfaces_file, "JSON list of extra test surfaces to evaluate");

  std::string suite = "acceptance";
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("suite", suite)->check(CLI::IsMember({"acceptance"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eval) {
      const TautClass c = eval_text(expression, n);
      emit(json, class_json(c), c.to_string());
    } else if (*integ) {
      const TautClass c = eval_text(expression, n);
      if (c.codim() != n - 3) {
        throw chow::DomainError("integrate: expression has codimension " + std::to_string(c.codim()) +
                                ", expected " + std::to_string(n - 3));
      }
      const Rational v = chow::integrate(c);
      emit(json, ojson{{"value", v.to_string()}}, v.to_string());
    } else if (*express) {
      const TautClass c = eval_text(expression, n);
      if (basis == "invariant") {
        const auto inv = chow::to_invariant(c);
        emit(json, invariant_json(inv), inv.to_string());
      } else {
        const auto strata = chow::strata_basis(n, c.codim());
        std::vector<TautClass> classes;
        for (const auto& t : strata) classes.push_back(TautClass::stratum(t));
        const auto x = chow::express_in(c, classes);
        TautClass combo(n, c.codim());
        for (std::size_t i = 0; i < strata.size(); ++i) combo.add(strata[i], x[i]);
        ojson j = class_json(combo);
        j["basis_size"] = strata.size();
        emit(json, j, combo.to_string());
      }
    } else if (*sym) {
      const TautClass c = eval_text(expression, n);
      const auto base = involution.empty() ? chow::standard_involution(n) : chow::Permutation::parse_cycles(involution, n);
      if (!base.is_involution() || base.fixed_points() != 0) {
        throw chow::DomainError("symmetrize: " + base.to_cycle_string() + " is not a fixed-point-free involution");
      }
      const TautClass s = chow::sum_over_conjugates(c, base);
      if (sym_basis == "invariant") {
        const auto inv = chow::to_invariant(s);
        emit(json, invariant_json(inv), inv.to_string());
      } else {
        emit(json, class_json(s), s.to_string());
      }
    } else if (*orbits) {
      if (codim < 0 || codim > n - 3) throw chow::DomainError("orbits: codimension out of range");
      ojson j = ojson::array();
      std::ostringstream os;
      for (const auto& o : chow::orbit_decompose(n, codim)) {
        j.push_back({{"shape", o.shape.to_string()}, {"members", o.members}});
        os << o.shape.to_string() << " " << o.members << "\n";
      }
      std::string text = os.str();
      if (!text.empty()) text.pop_back();
      emit(json, j, text);
    } else if (*pipeline) {
      chow::ReportOptions opts;
      opts.genus = genus;
      if (!surfaces_file.empty()) opts.extra_surfaces = chow::parse_surfaces(read_file(surfaces_file));
      const auto report = chow::build_report(chow::default_inputs(), opts);
      std::cout << (json ? chow::report_json(report) : chow::report_text(report));
    } else if (*selftest) {
      const auto results = chow::run_acceptance();
      bool all = true;
      for (const auto& r : results) all = all && r.passed;
      if (json) {
        ojson j = ojson::array();
        for (const auto& r : results) {
          j.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << chow::format_acceptance(results);
      }
      return all ? 0 : 1;
    }
  } catch (const chow::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const chow::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
