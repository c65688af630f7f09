#include "chow/taut_class.hpp"

#include <stdexcept>

namespace chow {

TautClass::TautClass(int n, int codim) : n_(n), codim_(codim) {
  if (n < 3 || n > kMaxMarkings) throw std::invalid_argument("TautClass: marking count out of range");
  if (codim < 0) throw std::invalid_argument("TautClass: negative codimension");
}

TautClass TautClass::fundamental(int n) {
  TautClass c(n, 0);
  c.add(StableTree::trivial(n), 1);
  return c;
}

TautClass TautClass::stratum(const StableTree& t, const Rational& coefficient) {
  TautClass c(t.n(), t.codim());
  c.add(t, coefficient);
  return c;
}

TautClass TautClass::divisor(const Partition2& p) {
  const Mask s = p.side();
  return stratum(StableTree::from_splits(p.n(), std::span<const Mask>(&s, 1)));
}

Rational TautClass::coefficient(const StableTree& t) const {
  const auto it = terms_.find(t);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TautClass::add(const StableTree& t, const Rational& c) {
  if (t.n() != n_ || t.codim() != codim_) throw std::invalid_argument("TautClass::add: stratum of wrong n or codim");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TautClass::check_compatible(const TautClass& o) const {
  if (o.n_ != n_ || o.codim_ != codim_) {
    throw std::invalid_argument("TautClass: n or codimension mismatch (" + std::to_string(n_) + "," +
                                std::to_string(codim_) + ") vs (" + std::to_string(o.n_) + "," +
                                std::to_string(o.codim_) + ")");
  }
}

TautClass& TautClass::operator+=(const TautClass& o) {
  check_compatible(o);
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

TautClass& TautClass::operator-=(const TautClass& o) {
  check_compatible(o);
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

TautClass& TautClass::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

std::string TautClass::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    Rational mag = c;
    if (first) {
      if (c.sign() < 0) {
        out += "-";
        mag = -c;
      }
    } else {
      out += c.sign() < 0 ? " - " : " + ";
      if (c.sign() < 0) mag = -c;
    }
    if (mag != Rational(1)) out += mag.to_string() + "*";
    out += t.to_string();
    first = false;
  }
  return out;
}

TautClass apply_permutation(const TautClass& c, const Permutation& sigma) {
  TautClass out(c.n(), c.codim());
  for (const auto& [t, v] : c.terms()) out.add(apply_permutation(t, sigma), v);
  return out;
}

}  // namespace chow
