#include "chow/invariant.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "chow/chow_ring.hpp"
#include "chow/errors.hpp"
#include "json.hpp"

namespace chow {

Rational InvariantClass::coefficient(const std::string& label) const {
  for (const auto& [shape, c] : coeffs) {
    if (shape.to_string() == label) return c;
  }
  throw std::out_of_range("InvariantClass: no shape " + label);
}

QVector InvariantClass::values() const {
  QVector v;
  for (const auto& [shape, c] : coeffs) v.push_back(c);
  return v;
}

std::string InvariantClass::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [shape, c] : coeffs) j[shape.to_string()] = c.to_string();
  return j.dump();
}

std::string InvariantClass::to_string() const {
  std::string out;
  for (const auto& [shape, c] : coeffs) {
    if (c.is_zero()) continue;
    if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    const Rational mag = c.sign() < 0 ? -c : c;
    if (mag != Rational(1)) out += mag.to_string() + "*";
    out += shape.to_string();
  }
  return out.empty() ? "0" : out;
}

namespace {

struct OrbitTables {
  std::mutex mu;
  std::map<std::pair<int, int>, std::map<std::string, std::vector<StableTree>>> members;
};

const std::vector<StableTree>& orbit_members(int n, const ShapeLabel& shape) {
  static OrbitTables tables;
  std::lock_guard lock(tables.mu);
  auto& by_shape = tables.members[{n, shape.codim}];
  if (by_shape.empty()) {
    for (const auto& t : enumerate_strata(n, shape.codim)) by_shape[shape_of(t).key].push_back(t);
  }
  const auto it = by_shape.find(shape.key);
  if (it == by_shape.end()) throw std::invalid_argument("d_class: no strata of shape " + shape.to_string());
  return it->second;
}

}  // namespace

TautClass d_class(int n, const ShapeLabel& shape) {
  if (shape.codim > n - 3) throw std::invalid_argument("d_class: codimension exceeds n-3");
  TautClass out(n, shape.codim);
  for (const auto& t : orbit_members(n, shape)) out.add(t, 1);
  return out;
}

std::vector<ShapeLabel> invariant_shapes(int n, int codim) {
  std::vector<ShapeLabel> out;
  for (auto& o : orbit_decompose(n, codim)) out.push_back(std::move(o.shape));
  return out;
}

std::vector<TautClass> invariant_basis(int n, int codim) {
  std::vector<TautClass> out;
  for (const auto& s : invariant_shapes(n, codim)) out.push_back(d_class(n, s));
  return out;
}

InvariantClass to_invariant(const TautClass& c) {
  InvariantClass out{c.n(), c.codim(), {}};
  if (c.codim() > c.n() - 3) return out;
  const auto shapes = invariant_shapes(c.n(), c.codim());
  std::vector<TautClass> basis;
  for (const auto& s : shapes) basis.push_back(d_class(c.n(), s));
  const QVector x = express_in(c, basis);
  for (std::size_t i = 0; i < shapes.size(); ++i) out.coeffs.emplace_back(shapes[i], x[i]);
  return out;
}

TautClass from_invariant(const InvariantClass& c) {
  TautClass out(c.n, c.codim);
  for (const auto& [shape, v] : c.coeffs) out += d_class(c.n, shape) * v;
  return out;
}

std::vector<Permutation> conjugating_representatives(const Permutation& base) {
  const int n = base.n();
  if (n % 2 != 0 || !base.is_involution() || base.fixed_points() != 0) {
    throw std::invalid_argument("sum_over_conjugates: base must be a fixed-point-free involution");
  }
  const auto all = fixed_point_free_involutions(n);
  const auto it = std::find_if(all.begin(), all.end(), [&](const auto& c) { return c.involution == base; });
  const Permutation base_inverse = it->representative.inverse();
  std::vector<Permutation> reps;
  reps.reserve(all.size());
  for (const auto& c : all) reps.push_back(c.representative * base_inverse);
  return reps;
}

TautClass sum_over_conjugates(const TautClass& c, const Permutation& base) {
  if (base.n() != c.n()) throw std::invalid_argument("sum_over_conjugates: n mismatch");
  TautClass out(c.n(), c.codim());
  for (const auto& sigma : conjugating_representatives(base)) out += apply_permutation(c, sigma);
  return out;
}

}  // namespace chow
