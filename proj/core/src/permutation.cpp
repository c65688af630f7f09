#include "chow/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "chow/errors.hpp"

namespace chow {

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<bool> seen(n + 1, false);
  for (int v : images) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
    seen[v] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::parse_cycles(std::string_view text, int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  std::vector<bool> used(n + 1, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("cycle notation: expected '(' in '" + std::string(text) + "'");
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) throw ParseError("cycle notation: unbalanced parenthesis");
    const std::string_view body = text.substr(i + 1, close - i - 1);
    std::vector<int> cycle;
    if (body.find(',') != std::string_view::npos) {
      std::size_t s = 0;
      while (s <= body.size()) {
        auto e = body.find(',', s);
        if (e == std::string_view::npos) e = body.size();
        const std::string tok(body.substr(s, e - s));
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
          throw ParseError("cycle notation: bad entry '" + tok + "'");
        }
        cycle.push_back(std::stoi(tok));
        s = e + 1;
      }
    } else {
      for (char c : body) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("cycle notation: bad character");
        cycle.push_back(c - '0');
      }
    }
    for (int v : cycle) {
      if (v < 1 || v > n) throw ParseError("cycle notation: marking out of range");
      if (used[v]) throw ParseError("cycle notation: marking repeated");
      used[v] = true;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      im[cycle[k] - 1] = cycle[(k + 1) % cycle.size()];
    }
    i = close + 1;
    skip_ws();
  }
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t k = 0; k < images_.size(); ++k) inv[images_[k] - 1] = static_cast<int>(k) + 1;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.n() != b.n()) throw std::invalid_argument("Permutation: size mismatch");
  std::vector<int> im(b.images_.size());
  for (std::size_t k = 0; k < im.size(); ++k) im[k] = a(b.images_[k]);
  return Permutation(std::move(im));
}

bool Permutation::is_involution() const {
  for (int i = 1; i <= n(); ++i) {
    if ((*this)((*this)(i)) != i) return false;
  }
  return true;
}

int Permutation::fixed_points() const {
  int f = 0;
  for (int i = 1; i <= n(); ++i) f += ((*this)(i) == i);
  return f;
}

std::uint32_t Permutation::apply_mask(std::uint32_t mask) const {
  std::uint32_t out = 0;
  for (int i = 1; i <= n(); ++i) {
    if (mask & (1u << (i - 1))) out |= 1u << ((*this)(i) - 1);
  }
  return out;
}

std::string Permutation::to_cycle_string() const {
  const bool wide = n() > 9;
  std::string out;
  std::vector<bool> seen(n() + 1, false);
  for (int i = 1; i <= n(); ++i) {
    if (seen[i] || (*this)(i) == i) continue;
    out += '(';
    bool first = true;
    for (int j = i; !seen[j]; j = (*this)(j)) {
      seen[j] = true;
      if (wide && !first) out += ',';
      out += std::to_string(j);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation standard_involution(int n) {
  if (n % 2 != 0) throw std::invalid_argument("standard_involution: n must be even");
  std::vector<int> im(n);
  for (int k = 0; k < n; k += 2) {
    im[k] = k + 2;
    im[k + 1] = k + 1;
  }
  return Permutation::from_images(std::move(im));
}

std::vector<ConjugateInvolution> fixed_point_free_involutions(int n) {
  if (n <= 0 || n % 2 != 0) {
    throw std::invalid_argument("fixed_point_free_involutions: n must be a positive even count");
  }
  std::vector<ConjugateInvolution> out;
  std::vector<int> partner(n + 1, 0);
  std::vector<int> order;  // pairs (a,b) with a < b, sorted by a
  std::function<void()> rec = [&] {
    int a = 1;
    while (a <= n && partner[a] != 0) ++a;
    if (a > n) {
      std::vector<int> inv(n), rep(n);
      for (int i = 1; i <= n; ++i) inv[i - 1] = partner[i];
      for (std::size_t k = 0; k < order.size(); k += 2) {
        rep[k] = order[k];
        rep[k + 1] = order[k + 1];
      }
      out.push_back({Permutation::from_images(inv), Permutation::from_images(rep)});
      return;
    }
    for (int b = a + 1; b <= n; ++b) {
      if (partner[b] != 0) continue;
      partner[a] = b;
      partner[b] = a;
      order.push_back(a);
      order.push_back(b);
      rec();
      order.resize(order.size() - 2);
      partner[a] = partner[b] = 0;
    }
  };
  rec();
  return out;
}

std::uint64_t centralizer_order(int n) {
  std::uint64_t m = static_cast<std::uint64_t>(n / 2), order = 1;
  for (std::uint64_t k = 2; k <= m; ++k) order *= k;
  return order << m;
}

Permutation centralizer_element(int n, std::uint64_t index) {
  if (n % 2 != 0) throw std::invalid_argument("centralizer_element: n must be even");
  const int m = n / 2;
  const std::uint64_t flips = index & ((std::uint64_t{1} << m) - 1);
  std::uint64_t rest = index >> m;
  // Lehmer code of the pair permutation.
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> pair_image(m);
  for (int k = 0; k < m; ++k) {
    const std::uint64_t base = static_cast<std::uint64_t>(m - k);
    const auto pick = static_cast<std::size_t>(rest % base);
    rest /= base;
    pair_image[k] = pool[pick];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::vector<int> im(n);
  for (int k = 0; k < m; ++k) {
    const bool flip = (flips >> k) & 1u;
    const int target = pair_image[k];
    im[2 * k] = 2 * target + (flip ? 2 : 1);
    im[2 * k + 1] = 2 * target + (flip ? 1 : 2);
  }
  return Permutation::from_images(std::move(im));
}

}  // namespace chow
