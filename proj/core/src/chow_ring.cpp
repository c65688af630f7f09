#include "chow/chow_ring.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "chow/errors.hpp"
#include "chow/parallel.hpp"

namespace chow {

namespace {

// Adds coef * psi_h * [t], where h is the flag of vertex v reaching the
// markings `h_reach`, expanded as boundary divisors of the vertex factor and
// glued back into t.
void add_psi_terms(const StableTree& t, const Vertex& v, Mask h_reach, const Rational& coef,
                   std::optional<std::pair<Mask, Mask>> aux, TautClass& out) {
  std::vector<Mask> others;
  bool found = false;
  for (const auto& f : v.flags) {
    if (f.reach == h_reach) found = true;
    else others.push_back(f.reach);
  }
  if (!found) throw std::logic_error("psi expansion: flag not at vertex");
  if (others.size() < 2) throw std::logic_error("psi expansion: unstable vertex");
  Mask a = others[0], b = others[1];
  if (aux) {
    a = aux->first;
    b = aux->second;
    if (std::find(others.begin(), others.end(), a) == others.end() ||
        std::find(others.begin(), others.end(), b) == others.end() || a == b) {
      throw std::invalid_argument("psi expansion: auxiliary flags must be two other flags at the vertex");
    }
  }
  std::vector<Mask> free;
  for (Mask m : others) {
    if (m != a && m != b) free.push_back(m);
  }
  const std::size_t subsets = std::size_t{1} << free.size();
  for (std::size_t bits = 1; bits < subsets; ++bits) {
    Mask side = h_reach;
    for (std::size_t k = 0; k < free.size(); ++k) {
      if (bits & (std::size_t{1} << k)) side |= free[k];
    }
    out.add(t.with_split(normalize_split(side, t.n())), coef);
  }
}

// sigma sending marking `from` to `to` and shifting the markings in between.
Permutation move_marking(int n, int from, int to) {
  std::vector<int> order;
  for (int i = 1; i <= n; ++i) {
    if (i != from) order.push_back(i);
  }
  order.insert(order.begin() + (to - 1), from);
  std::vector<int> im(n);
  for (int pos = 1; pos <= n; ++pos) im[order[pos - 1] - 1] = pos;
  return Permutation::from_images(std::move(im));
}

}  // namespace

TautClass psi_expand(int n, int i, std::optional<std::pair<int, int>> aux) {
  if (n < 4) throw std::invalid_argument("psi_expand: needs n >= 4");
  if (i < 1 || i > n) throw std::invalid_argument("psi_expand: marking out of range");
  std::optional<std::pair<Mask, Mask>> aux_flags;
  if (aux) {
    const auto [a, b] = *aux;
    if (a < 1 || a > n || b < 1 || b > n || a == b || a == i || b == i) {
      throw std::invalid_argument("psi_expand: auxiliary markings must be distinct from i and each other");
    }
    aux_flags = std::make_pair(marking_bit(a), marking_bit(b));
  }
  const StableTree root = StableTree::trivial(n);
  TautClass out(n, 1);
  add_psi_terms(root, root.vertices().front(), marking_bit(i), 1, aux_flags, out);
  return out;
}

TautClass psi_at_flag(const StableTree& t, int vertex, Mask flag_reach,
                      std::optional<std::pair<Mask, Mask>> aux_flags) {
  const auto verts = t.vertices();
  if (vertex < 0 || vertex >= static_cast<int>(verts.size())) throw std::invalid_argument("psi_at_flag: no such vertex");
  TautClass out(t.n(), t.codim() + 1);
  add_psi_terms(t, verts[vertex], flag_reach, 1, aux_flags, out);
  return out;
}

TautClass psi_power_sum(int n, int j) {
  if (j < 0) throw std::invalid_argument("psi_power_sum: negative exponent");
  TautClass out(n, j);
  for (int i = 1; i <= n; ++i) out += power(psi_expand(n, i), j);
  return out;
}

TautClass boundary_sum(int n) {
  TautClass out(n, 1);
  for (Mask s : all_splits(n)) out.add(StableTree::from_splits(n, std::span<const Mask>(&s, 1)), 1);
  return out;
}

TautClass mul_divisor(const TautClass& c, const Partition2& p) {
  if (c.n() != p.n()) throw std::invalid_argument("mul_divisor: n mismatch");
  const int n = c.n();
  TautClass out(n, c.codim() + 1);
  if (c.codim() + 1 > n - 3) return out;
  const Mask s = p.side();
  for (const auto& [t, coef] : c.terms()) {
    const int e = t.edge_of(s);
    if (e >= 0) {
      const auto verts = t.vertices();
      const int parent = t.edge_endpoints()[e].first;
      const int child = e + 1;
      add_psi_terms(t, verts[child], full_mask(n) ^ s, -coef, std::nullopt, out);
      add_psi_terms(t, verts[parent], s, -coef, std::nullopt, out);
    } else if (t.compatible_with(s)) {
      out.add(t.with_split(s), coef);
    }
  }
  return out;
}

TautClass mul(const TautClass& a, const TautClass& b) {
  if (a.n() != b.n()) throw std::invalid_argument("mul: n mismatch");
  const int n = a.n();
  TautClass out(n, a.codim() + b.codim());
  if (a.codim() + b.codim() > n - 3) return out;
  for (const auto& [t, cb] : b.terms()) {
    TautClass x = a;
    for (Mask s : t.splits()) {
      x = mul_divisor(x, Partition2(n, s));
      if (x.empty()) break;
    }
    if (!x.empty()) out += x * cb;
  }
  return out;
}

TautClass power(const TautClass& a, int exponent) {
  if (exponent < 0) throw std::invalid_argument("power: negative exponent");
  TautClass out = TautClass::fundamental(a.n());
  for (int k = 0; k < exponent; ++k) out = mul(out, a);
  return out;
}

Rational integrate(const TautClass& c) {
  if (c.codim() != c.n() - 3) {
    throw std::invalid_argument("integrate: class has codimension " + std::to_string(c.codim()) +
                                ", expected " + std::to_string(c.n() - 3));
  }
  Rational sum;
  for (const auto& [t, coef] : c.terms()) sum += coef;
  return sum;
}

TautClass pullback_forget(const TautClass& c, int p) {
  const int n = c.n();
  if (n + 1 > kMaxMarkings) throw std::invalid_argument("pullback_forget: too many markings");
  if (p < 1 || p > n + 1) throw std::invalid_argument("pullback_forget: new marking out of range");
  const Mask extra = marking_bit(n + 1);
  TautClass lifted(n + 1, c.codim());
  for (const auto& [t, coef] : c.terms()) {
    const auto s = t.splits();
    // Vertex 0 takes the new leg without touching any split; vertex j+1 puts
    // it inside every split containing split j.
    for (int v = 0; v <= t.codim(); ++v) {
      std::vector<Mask> lifted_splits(s.begin(), s.end());
      if (v > 0) {
        for (auto& m : lifted_splits) {
          if ((s[v - 1] & m) == s[v - 1]) m |= extra;
        }
      }
      lifted.add(StableTree::from_splits(n + 1, lifted_splits), coef);
    }
  }
  if (p == n + 1) return lifted;
  return apply_permutation(lifted, move_marking(n + 1, n + 1, p));
}

TautClass pushforward_forget(const TautClass& c, int p) {
  const int n = c.n();
  if (n < 4) throw std::invalid_argument("pushforward_forget: target would have fewer than 3 markings");
  if (p < 1 || p > n) throw std::invalid_argument("pushforward_forget: marking out of range");
  const TautClass moved = p == n ? c : apply_permutation(c, move_marking(n, p, n));
  const int m = n - 1;
  TautClass out(m, std::max(0, c.codim() - 1));
  if (c.codim() == 0) return out;
  const Mask strip = ~marking_bit(n);
  for (const auto& [t, coef] : moved.terms()) {
    std::vector<Mask> kept;
    for (Mask s : t.splits()) {
      const Mask r = s & strip;
      const int k = popcount(r);
      if (k < 2 || m - k < 2) continue;
      if (std::find(kept.begin(), kept.end(), r) == kept.end()) kept.push_back(r);
    }
    if (static_cast<int>(kept.size()) == t.codim() - 1) out.add(StableTree::from_splits(m, kept), coef);
  }
  return out;
}

TautClass kappa_class(int n, int a) {
  if (a < 1) throw std::invalid_argument("kappa_class: index must be >= 1");
  if (a > n - 3) return TautClass(n, a);
  return pushforward_forget(power(psi_expand(n + 1, n + 1), a + 1), n + 1);
}

Rational pairing(const TautClass& a, const TautClass& b) {
  if (a.n() != b.n()) throw std::invalid_argument("pairing: n mismatch");
  if (a.codim() + b.codim() != a.n() - 3) throw std::invalid_argument("pairing: codimensions are not complementary");
  return integrate(mul(a, b));
}

// ---------------------------------------------------------------- pairing tables

namespace {

bool all_compatible(const StableTree& a, const StableTree& b) {
  for (Mask x : a.splits()) {
    if (!b.compatible_with(x)) return false;
  }
  return true;
}

std::shared_ptr<const PairingTable> build_pairing_table(int n, int codim) {
  auto table = std::make_shared<PairingTable>();
  table->n = n;
  table->codim = codim;
  table->rows = enumerate_strata(n, codim);
  table->columns = enumerate_strata(n, n - 3 - codim);
  for (std::size_t i = 0; i < table->rows.size(); ++i) table->row_index.emplace(table->rows[i], i);
  table->entries.resize(table->rows.size());
  parallel_for(table->rows.size(), [&](std::size_t r) {
    const auto& row = table->rows[r];
    const TautClass row_class = TautClass::stratum(row);
    auto& out = table->entries[r];
    for (std::size_t col = 0; col < table->columns.size(); ++col) {
      const auto& other = table->columns[col];
      if (!all_compatible(row, other)) continue;
      const Rational v = integrate(mul(row_class, TautClass::stratum(other)));
      if (!v.is_zero()) out.emplace_back(static_cast<std::uint32_t>(col), v);
    }
  });
  return table;
}

struct PairingCache {
  std::mutex mu;
  bool enabled = true;
  struct Slot {
    std::once_flag once;
    std::shared_ptr<const PairingTable> table;
  };
  std::map<std::pair<int, int>, std::shared_ptr<Slot>> slots;
};

PairingCache& cache() {
  static PairingCache c;
  return c;
}

}  // namespace

std::shared_ptr<const PairingTable> pairing_table(int n, int codim) {
  if (codim < 0 || codim > n - 3) throw std::invalid_argument("pairing_table: codim out of range");
  auto& c = cache();
  std::shared_ptr<PairingCache::Slot> slot;
  {
    std::lock_guard lock(c.mu);
    if (!c.enabled) return build_pairing_table(n, codim);
    auto& s = c.slots[{n, codim}];
    if (!s) s = std::make_shared<PairingCache::Slot>();
    slot = s;
  }
  std::call_once(slot->once, [&] { slot->table = build_pairing_table(n, codim); });
  return slot->table;
}

void set_pairing_cache_enabled(bool enabled) {
  std::lock_guard lock(cache().mu);
  cache().enabled = enabled;
}

void clear_pairing_cache() {
  std::lock_guard lock(cache().mu);
  cache().slots.clear();
}

QVector pairing_vector(const TautClass& c) {
  if (c.codim() > c.n() - 3) return {};
  const auto table = pairing_table(c.n(), c.codim());
  std::vector<mpq_class> acc(table->columns.size());
  for (const auto& [t, coef] : c.terms()) {
    const auto it = table->row_index.find(t);
    if (it == table->row_index.end()) throw std::logic_error("pairing_vector: stratum not in table");
    for (const auto& [col, v] : table->entries[it->second]) acc[col] += coef.value() * v.value();
  }
  QVector out;
  out.reserve(acc.size());
  for (auto& a : acc) out.emplace_back(std::move(a));
  return out;
}

bool is_zero(const TautClass& c) {
  if (c.empty() || c.codim() > c.n() - 3) return true;
  const auto v = pairing_vector(c);
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

bool chow_equal(const TautClass& a, const TautClass& b) { return is_zero(a - b); }

QVector express_in(const TautClass& c, const std::vector<TautClass>& basis) {
  for (const auto& b : basis) {
    if (b.n() != c.n() || b.codim() != c.codim()) {
      throw std::invalid_argument("express_in: basis class of different n or codimension");
    }
  }
  if (c.codim() > c.n() - 3) {
    if (basis.empty()) return {};
    throw DomainError("express_in: every class of codimension > n-3 vanishes; the basis is dependent");
  }
  const QVector target = pairing_vector(c);
  std::vector<QVector> columns;
  for (const auto& b : basis) columns.push_back(pairing_vector(b));
  const std::size_t k = basis.size();
  std::vector<Rational> entries;
  QVector rhs;
  for (std::size_t r = 0; r < target.size(); ++r) {
    bool nonzero = !target[r].is_zero();
    for (const auto& col : columns) nonzero = nonzero || !col[r].is_zero();
    if (!nonzero) continue;
    for (const auto& col : columns) entries.push_back(col[r]);
    rhs.push_back(target[r]);
  }
  const QMatrix m(rhs.size(), k, std::move(entries));
  const auto sol = solve_affine(m, rhs);
  if (!sol) throw DomainError("express_in: class is not in the span of the basis");
  if (!sol->kernel.empty()) throw DomainError("express_in: basis classes are linearly dependent");
  return sol->particular;
}

std::vector<StableTree> strata_basis(int n, int codim) {
  if (codim < 0 || codim > n - 3) throw std::invalid_argument("strata_basis: codimension out of range");
  const auto table = pairing_table(n, codim);
  const std::size_t rows = table->columns.size();
  const std::size_t cols = table->rows.size();
  // One column per stratum; pivot columns of the row echelon form are the basis.
  std::vector<Rational> entries(rows * cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& [r, v] : table->entries[j]) entries[r * cols + j] = v;
  }
  const RrefResult red = rref(QMatrix(rows, cols, std::move(entries)));
  std::vector<StableTree> out;
  for (std::size_t p : red.pivots) out.push_back(table->rows[p]);
  return out;
}

}  // namespace chow
