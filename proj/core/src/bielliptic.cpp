#include "chow/bielliptic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "chow/chow_ring.hpp"
#include "chow/errors.hpp"
#include "chow/expr.hpp"
#include "json.hpp"

namespace chow {

namespace detail {
extern const std::string_view kDefaultInputsJson;
}

namespace {

Rational rational_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("pipeline inputs: missing '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError(std::string("pipeline inputs: '") + key + "' must be a rational string");
}

std::string string_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw ParseError(std::string("pipeline inputs: missing string '") + key + "'");
  }
  return j.at(key).get<std::string>();
}

TestSurface surface_from_json(const nlohmann::json& s) {
  TestSurface out;
  out.name = string_field(s, "name");
  const auto& nums = s.at("numbers");
  if (!nums.is_array() || nums.size() != 7) {
    throw ParseError("test surface '" + out.name + "': numbers must list 7 values");
  }
  for (std::size_t i = 0; i < 7; ++i) {
    out.numbers[i] = nums[i].is_string() ? Rational::parse(nums[i].get<std::string>())
                                         : Rational(nums[i].get<long>());
  }
  if (s.contains("expected_count") && !s.at("expected_count").is_null()) {
    out.expected_count = rational_field(s, "expected_count");
  }
  return out;
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("JSON: ") + e.what());
  }
}

}  // namespace

Rational Genus3Class::evaluate_on(const std::array<Rational, 7>& numbers) const {
  return dot(coords, numbers);
}

std::string Genus3Class::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < 7; ++i) {
    const Rational& c = coords[i];
    if (c.is_zero()) continue;
    if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    out += (c.sign() < 0 ? -c : c).to_string() + "*" + std::string(kGenus3Basis[i]);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- inputs

PipelineInputs parse_inputs(std::string_view text) {
  const nlohmann::json j = parse_json(text);
  PipelineInputs in;
  try {
    const auto& v = j.at("vermeire_i6");
    const int n = v.at("n").get<int>();
    in.vermeire = TautClass(n, 1);
    for (const auto& term : v.at("terms")) {
      in.vermeire += TautClass::divisor(Partition2::parse(term.at(0).get<std::string>(), n)) *
                     Rational::parse(term.at(1).get<std::string>());
    }
    const auto& m = j.at("component_multiplicities");
    in.alpha = rational_field(m, "alpha");
    in.beta = rational_field(m, "beta");
    in.gamma = rational_field(m, "gamma");
    in.delta = rational_field(m, "delta");
    const auto& g2 = j.at("genus2");
    in.genus2_delta0 = string_field(g2.at("pullbacks"), "delta0");
    in.genus2_delta1 = string_field(g2.at("pullbacks"), "delta1");
    in.genus2_lambda_delta0 = rational_field(g2.at("lambda_in_deltas"), "delta0");
    in.genus2_lambda_delta1 = rational_field(g2.at("lambda_in_deltas"), "delta1");
    const auto& g3 = j.at("genus3");
    in.genus3_delta0 = string_field(g3.at("pullbacks"), "delta0");
    in.genus3_delta1 = string_field(g3.at("pullbacks"), "delta1");
    in.genus3_kappa1 = string_field(g3.at("pullbacks"), "kappa1");
    in.genus3_kappa2 = string_field(g3.at("pullbacks"), "kappa2");
    in.lambda_kappa1 = rational_field(g3.at("lambda_in_generators"), "kappa1");
    in.lambda_delta0 = rational_field(g3.at("lambda_in_generators"), "delta0");
    in.lambda_delta1 = rational_field(g3.at("lambda_in_generators"), "delta1");
    for (const auto& s : j.at("surfaces")) in.surfaces.push_back(surface_from_json(s));
    if (j.contains("reference_values")) {
      for (const auto& r : j.at("reference_values")) {
        in.references.push_back({string_field(r, "name"), rational_field(r, "value")});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pipeline inputs: ") + e.what());
  }
  if (in.alpha.is_zero()) throw ParseError("pipeline inputs: alpha must be nonzero");
  return in;
}

const PipelineInputs& default_inputs() {
  static const PipelineInputs in = parse_inputs(detail::kDefaultInputsJson);
  return in;
}

std::vector<TestSurface> parse_surfaces(std::string_view text) {
  const nlohmann::json j = parse_json(text);
  if (!j.is_array()) throw ParseError("surfaces file: expected a JSON list");
  std::vector<TestSurface> out;
  try {
    for (const auto& s : j) out.push_back(surface_from_json(s));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("surfaces file: ") + e.what());
  }
  return out;
}

// ---------------------------------------------------------------- genus 0 loci

TautClass vermeire_class(const PipelineInputs& in) { return in.vermeire; }

namespace {

constexpr int kN = 8;

Mask block(std::initializer_list<int> markings) {
  Mask m = 0;
  for (int i : markings) m |= marking_bit(i);
  return m;
}

// Image of a stratum of M0,8 under forgetting markings 7 and 8.
StableTree forget_78(const StableTree& t) {
  constexpr int m = 6;
  std::vector<Mask> splits;
  for (Mask s : t.splits()) {
    const Mask r = normalize_split(s & full_mask(m), m);
    if (popcount(r) < 2 || popcount(r) > m - 2) continue;
    if (std::find(splits.begin(), splits.end(), r) == splits.end()) splits.push_back(r);
  }
  return StableTree::from_splits(m, splits);
}

// Codimension-2 strata of M0,6 inside the closure of I_6: chains (A|{2i-1,2i}|B)
// with the outer blocks exchanged by (12)(34)(56).
bool stratum_in_i6(const StableTree& t) {
  if (t.codim() != 2 || !t.is_chain()) return false;
  const auto blocks = t.chain_blocks();
  if (popcount(blocks[0]) != 2 || popcount(blocks[1]) != 2) return false;
  const Mask mid = blocks[1];
  const bool pair = mid == block({1, 2}) || mid == block({3, 4}) || mid == block({5, 6});
  return pair && standard_involution(6).apply_mask(blocks[0]) == blocks[2];
}

// Codimension-2 strata of M0,8 lying in both pulled-back loci, with the shape
// of each; found by projecting along both forgetful maps.
std::vector<StableTree> strata_in_both_pullbacks() {
  const Permutation swap12 = Permutation::parse_cycles("(17)(28)", kN);
  std::vector<StableTree> out;
  for (const StableTree& t : enumerate_strata(kN, 2)) {
    if (stratum_in_i6(forget_78(t)) && stratum_in_i6(forget_78(apply_permutation(t, swap12)))) {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

TautClass pullback_pi12(const TautClass& c) {
  if (c.n() != 6) throw std::invalid_argument("pullback_pi12: expects a class on M0,6");
  const TautClass lifted = pullback_forget(pullback_forget(c, 7), 8);
  return apply_permutation(lifted, Permutation::parse_cycles("(17)(28)", kN));
}

TautClass pullback_pi78(const TautClass& c) {
  if (c.n() != 6) throw std::invalid_argument("pullback_pi78: expects a class on M0,6");
  return pullback_forget(pullback_forget(c, 7), 8);
}

TautClass vermeire_product(const PipelineInputs& in) {
  return mul(pullback_pi12(in.vermeire), pullback_pi78(in.vermeire));
}

CorrectionClasses correction_classes(const PipelineInputs&) {
  CorrectionClasses out{TautClass(kN, 2), TautClass(kN, 2), TautClass(kN, 2)};

  // Div: on the divisor (1278|3456), psi of the node branch on the 3456 side
  // with auxiliary markings 3,4.
  const Mask node = block({3, 4, 5, 6});
  const StableTree d = StableTree::from_splits(kN, std::span<const Mask>(&node, 1));
  const auto verts = d.vertices();
  const Mask far = full_mask(kN) ^ node;
  for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
    if (verts[v].legs != node) continue;
    out.div = psi_at_flag(d, v, far, std::make_pair(marking_bit(3), marking_bit(4)));
  }

  // Type I and type II: the boundary strata of codimension 2 in the
  // intersection, sorted by shape.
  for (const StableTree& t : strata_in_both_pullbacks()) {
    const auto parts = shape_of(t).parts;
    if (parts == std::vector<int>{2, 4, 2}) out.type_i.add(t, 1);
    else if (parts == std::vector<int>{3, 2, 3}) out.type_ii.add(t, 1);
    else throw std::logic_error("correction_classes: unexpected stratum " + t.to_string());
  }
  return out;
}

TautClass i8_class(const PipelineInputs& in) {
  const CorrectionClasses corr = correction_classes(in);
  TautClass c = vermeire_product(in);
  c -= corr.div * in.beta;
  c -= corr.type_i * in.gamma;
  c -= corr.type_ii * in.delta;
  return c * (Rational(1) / in.alpha);
}

InvariantClass i8_inv(const PipelineInputs& in) {
  return to_invariant(sum_over_conjugates(i8_class(in), standard_involution(kN)));
}

// ---------------------------------------------------------------- phi^*

PhiPullbacks phi_pullbacks(const PipelineInputs& in) {
  PhiPullbacks p;
  p.delta0 = evaluate(parse_expression(in.genus3_delta0, kN));
  p.delta1 = evaluate(parse_expression(in.genus3_delta1, kN));
  p.kappa1 = evaluate(parse_expression(in.genus3_kappa1, kN));
  p.kappa2 = evaluate(parse_expression(in.genus3_kappa2, kN));
  p.lambda = p.kappa1 * in.lambda_kappa1 + p.delta0 * in.lambda_delta0 + p.delta1 * in.lambda_delta1;
  return p;
}

QMatrix phi_matrix(const PhiPullbacks& p) {
  const std::array<TautClass, 7> rows = {
      mul(p.lambda, p.lambda), mul(p.lambda, p.delta0), mul(p.lambda, p.delta1), mul(p.delta0, p.delta0),
      mul(p.delta0, p.delta1), mul(p.delta1, p.delta1), p.kappa2,
  };
  std::vector<QVector> out;
  for (const auto& r : rows) out.push_back(to_invariant(r).values());
  return QMatrix::from_rows(out);
}

QMatrix phi_matrix(const PipelineInputs& in) { return phi_matrix(phi_pullbacks(in)); }

// ---------------------------------------------------------------- solving

Genus3Class ParametricFamily::at(const Rational& epsilon, const Rational& d) const {
  if (epsilon.is_zero()) throw std::invalid_argument("ParametricFamily::at: epsilon must be nonzero");
  Genus3Class g;
  for (std::size_t i = 0; i < 7; ++i) g.coords[i] = over_epsilon[i] / epsilon + per_d[i] * d;
  return g;
}

std::string ParametricFamily::format(std::size_t i) const {
  const Rational& a = over_epsilon.at(i);
  const Rational& b = per_d.at(i);
  if (a.is_zero()) {
    if (b.is_zero()) return "0";
    if (b == Rational(1)) return "d";
    return b.to_string() + "*d";
  }
  mpz_class q;
  mpz_lcm(q.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
  const mpz_class an = a.numerator() * (q / a.denominator());
  const mpz_class bn = b.numerator() * (q / b.denominator());
  std::string num = an.get_str();
  if (bn != 0) {
    num = "(" + num + (bn > 0 ? "+" : "-") + mpz_class(abs(bn)).get_str() + "*d*eps)";
  }
  const std::string den = q == 1 ? "eps" : "(" + q.get_str() + "*eps)";
  return num + "/" + den;
}

ParametricFamily parametric_family(const QMatrix& phi, const InvariantClass& i8inv) {
  if (phi.rows() != 7 || phi.cols() != i8inv.coeffs.size()) {
    throw std::invalid_argument("parametric_family: shape mismatch");
  }
  const auto sol = solve_affine(phi.transpose(), i8inv.values());
  if (!sol) throw DomainError("parametric_family: the invariant class is not in the image of phi^*");
  if (sol->kernel.size() != 1) {
    throw DomainError("parametric_family: expected a 1-dimensional kernel, found " + std::to_string(sol->kernel.size()));
  }
  constexpr std::size_t kDelta0Sq = 3;
  const QVector& k = sol->kernel.front();
  if (k[kDelta0Sq].is_zero()) throw DomainError("parametric_family: delta0^2 does not parametrize the kernel");
  ParametricFamily f;
  const Rational p3 = sol->particular[kDelta0Sq];
  for (std::size_t i = 0; i < 7; ++i) {
    f.per_d[i] = k[i] / k[kDelta0Sq];
    f.over_epsilon[i] = sol->particular[i] - p3 * f.per_d[i];
  }
  return f;
}

Genus3Solution solve_genus3(const ParametricFamily& family, const std::vector<TestSurface>& surfaces) {
  // Unknowns (u, d) with u = 1/epsilon; each surface gives
  // u * <over_epsilon, s> + d * <per_d, s> = expected.
  std::vector<Rational> entries;
  QVector rhs;
  for (const auto& s : surfaces) {
    if (!s.expected_count) continue;
    entries.push_back(dot(family.over_epsilon, s.numbers));
    entries.push_back(dot(family.per_d, s.numbers));
    rhs.push_back(*s.expected_count);
  }
  const auto sol = solve_affine(QMatrix(rhs.size(), 2, std::move(entries)), rhs);
  if (!sol) throw DomainError("solve_genus3: inconsistent test-surface data");
  if (!sol->kernel.empty()) throw DomainError("solve_genus3: test surfaces do not determine epsilon and d");
  const Rational u = sol->particular[0];
  if (u.sign() <= 0) throw DomainError("solve_genus3: epsilon must be positive, got 1/" + u.to_string());
  const Rational epsilon = Rational(1) / u;
  if (!epsilon.is_integer()) throw DomainError("solve_genus3: epsilon = " + epsilon.to_string() + " is not an integer");

  Genus3Solution out;
  out.epsilon = epsilon;
  out.d = sol->particular[1];
  out.bielliptic = family.at(epsilon, out.d);
  for (const auto& s : surfaces) {
    const Rational v = out.bielliptic.evaluate_on(s.numbers);
    out.checks.push_back({s.name, v, s.expected_count, !s.expected_count || *s.expected_count == v});
  }
  return out;
}

Genus2Solution solve_genus2(const PipelineInputs& in) {
  constexpr int n = 6;
  Genus2Solution out;
  const TautClass i6 = sum_over_conjugates(in.vermeire, standard_involution(n));
  out.i6_inv = to_invariant(i6);
  const TautClass d0 = evaluate(parse_expression(in.genus2_delta0, n));
  const TautClass d1 = evaluate(parse_expression(in.genus2_delta1, n));
  const QVector x = express_in(i6, {d0, d1});
  out.delta0 = x[0];
  out.delta1 = x[1];
  // lambda = c0 delta0 + c1 delta1, so delta0 = (lambda - c1 delta1) / c0.
  const Rational c0 = in.genus2_lambda_delta0;
  const Rational c1 = in.genus2_lambda_delta1;
  if (c0.is_zero()) throw DomainError("solve_genus2: lambda relation has no delta0 term");
  out.lambda = out.delta0 / c0;
  out.lambda_delta1 = out.delta1 - out.delta0 * c1 / c0;
  return out;
}

}  // namespace chow
