#include "chow/strata.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "chow/errors.hpp"
#include "json.hpp"

namespace chow {

int popcount(Mask m) { return std::popcount(m); }

int lowest_marking(Mask m) { return std::countr_zero(m) + 1; }

Mask normalize_split(Mask m, int n) { return (m & 1u) ? (full_mask(n) ^ m) : m; }

bool splits_compatible(Mask a, Mask b) {
  const Mask both = a & b;
  return both == 0 || both == a || both == b;
}

std::string format_markings(Mask m, int n) {
  std::string out;
  for (int i = 1; i <= n; ++i) {
    if (!(m & marking_bit(i))) continue;
    if (n > 9 && !out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

namespace {

void check_n(int n) {
  if (n < 3 || n > kMaxMarkings) {
    throw std::invalid_argument("marking count must lie in 3.." + std::to_string(kMaxMarkings));
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Mask parse_block(std::string_view block, int n) {
  block = trim(block);
  Mask m = 0;
  auto add = [&](int v) {
    if (v < 1 || v > n) throw ParseError("marking " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    if (m & marking_bit(v)) throw ParseError("marking " + std::to_string(v) + " repeated");
    m |= marking_bit(v);
  };
  if (block.find(',') != std::string_view::npos) {
    std::size_t s = 0;
    while (s <= block.size()) {
      auto e = block.find(',', s);
      if (e == std::string_view::npos) e = block.size();
      const std::string tok(trim(block.substr(s, e - s)));
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
        throw ParseError("bad marking '" + tok + "'");
      }
      add(std::stoi(tok));
      s = e + 1;
    }
  } else {
    for (char c : block) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError(std::string("bad character '") + c + "' in marking list");
      }
      add(c - '0');
    }
  }
  return m;
}

std::vector<Mask> parse_blocks(std::string_view text, int n) {
  std::string_view s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw ParseError("expected '(A1|A2|...)' but got '" + std::string(text) + "'");
  }
  s = s.substr(1, s.size() - 2);
  std::vector<Mask> blocks;
  std::size_t start = 0;
  while (true) {
    const auto bar = s.find('|', start);
    blocks.push_back(parse_block(s.substr(start, bar == std::string_view::npos ? s.npos : bar - start), n));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  Mask seen = 0;
  for (Mask b : blocks) {
    if (b & seen) throw ParseError("marking appears in two blocks of '" + std::string(text) + "'");
    seen |= b;
  }
  if (seen != full_mask(n)) throw ParseError("blocks of '" + std::string(text) + "' do not cover 1.." + std::to_string(n));
  return blocks;
}

}  // namespace

// ---------------------------------------------------------------- Partition2

Partition2::Partition2(int n, Mask side) : n_(n) {
  check_n(n);
  side_ = normalize_split(side & full_mask(n), n);
  const int k = popcount(side_);
  if ((side & ~full_mask(n)) != 0 || k < 2 || n - k < 2) {
    throw std::invalid_argument("Partition2: both parts need at least two markings");
  }
}

Partition2 Partition2::parse(std::string_view text, int n) {
  std::string_view s = trim(text);
  std::string wrapped = (s.empty() || s.front() != '(') ? "(" + std::string(s) + ")" : std::string(s);
  const auto blocks = parse_blocks(wrapped, n);
  if (blocks.size() != 2) throw ParseError("a divisor needs exactly two blocks: '" + std::string(text) + "'");
  if (popcount(blocks[0]) < 2 || popcount(blocks[1]) < 2) {
    throw ParseError("divisor blocks need at least two markings: '" + std::string(text) + "'");
  }
  return {n, blocks[0]};
}

std::string Partition2::to_string() const {
  return "(" + format_markings(complement(), n_) + "|" + format_markings(side_, n_) + ")";
}

// ---------------------------------------------------------------- StableTree

StableTree StableTree::trivial(int n) {
  check_n(n);
  StableTree t;
  t.n_ = static_cast<std::uint8_t>(n);
  return t;
}

StableTree StableTree::from_splits(int n, std::span<const Mask> splits) {
  check_n(n);
  if (static_cast<int>(splits.size()) > n - 3) {
    throw std::invalid_argument("stable tree: more than n-3 edges");
  }
  std::vector<Mask> s;
  s.reserve(splits.size());
  for (Mask m : splits) {
    if ((m & ~full_mask(n)) != 0) throw std::invalid_argument("stable tree: split mentions a marking > n");
    const Mask v = normalize_split(m, n);
    const int k = popcount(v);
    if (k < 2 || n - k < 2) throw std::invalid_argument("stable tree: split with a side of size < 2");
    s.push_back(v);
  }
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && s[i] == s[i - 1]) throw std::invalid_argument("stable tree: repeated split");
    for (std::size_t j = 0; j < i; ++j) {
      if (!splits_compatible(s[i], s[j])) throw std::invalid_argument("stable tree: crossing splits");
    }
  }
  StableTree t;
  t.n_ = static_cast<std::uint8_t>(n);
  t.count_ = static_cast<std::uint8_t>(s.size());
  std::copy(s.begin(), s.end(), t.splits_.begin());
  return t;
}

StableTree StableTree::parse_chain(std::string_view text, int n) {
  check_n(n);
  const auto blocks = parse_blocks(text, n);
  const std::size_t k = blocks.size();
  if (k > 1) {
    if (popcount(blocks.front()) < 2 || popcount(blocks.back()) < 2) {
      throw ParseError("end blocks of a chain need at least two markings: '" + std::string(text) + "'");
    }
    for (std::size_t i = 1; i + 1 < k; ++i) {
      if (blocks[i] == 0) throw ParseError("empty middle block in '" + std::string(text) + "'");
    }
  }
  std::vector<Mask> splits;
  Mask acc = 0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    acc |= blocks[i];
    splits.push_back(acc);
  }
  return from_splits(n, splits);
}

StableTree StableTree::parse(std::string_view text, int n) {
  const std::string_view s = trim(text);
  if (!s.empty() && s.front() == '{') return tree_from_json(s, n);
  return parse_chain(s, n);
}

bool StableTree::has_split(Mask m) const { return edge_of(m) >= 0; }

int StableTree::edge_of(Mask m) const {
  for (int i = 0; i < count_; ++i) {
    if (splits_[i] == m) return i;
  }
  return -1;
}

bool StableTree::compatible_with(Mask m) const {
  for (int i = 0; i < count_; ++i) {
    if (!splits_compatible(splits_[i], m)) return false;
  }
  return true;
}

StableTree StableTree::with_split(Mask m) const {
  StableTree t = *this;
  int pos = count_;
  while (pos > 0 && t.splits_[pos - 1] > m) {
    t.splits_[pos] = t.splits_[pos - 1];
    --pos;
  }
  t.splits_[pos] = m;
  ++t.count_;
  return t;
}

namespace {

// parent[i] = index of the smallest split strictly containing split i, or -1.
std::vector<int> split_parents(std::span<const Mask> s) {
  std::vector<int> parent(s.size(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    int best = -1;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j || (s[j] & s[i]) != s[i]) continue;
      if (best < 0 || popcount(s[j]) < popcount(s[best])) best = static_cast<int>(j);
    }
    parent[i] = best;
  }
  return parent;
}

}  // namespace

std::vector<Vertex> StableTree::vertices() const {
  const auto s = splits();
  const auto parent = split_parents(s);
  std::vector<Vertex> v(count_ + 1);
  std::vector<Mask> covered(count_ + 1, 0);
  for (int i = 0; i < count_; ++i) {
    const int pv = parent[i] + 1;  // vertex index of the parent
    v[pv].flags.push_back({s[i], i});
    covered[pv] |= s[i];
    v[i + 1].flags.push_back({full_mask(n_) ^ s[i], i});
  }
  for (int k = 0; k <= count_; ++k) {
    const Mask region = k == 0 ? full_mask(n_) : s[k - 1];
    v[k].legs = region & ~covered[k];
    for (Mask rest = v[k].legs; rest != 0; rest &= rest - 1) {
      v[k].flags.push_back({rest & (~rest + 1), -1});
    }
    std::sort(v[k].flags.begin(), v[k].flags.end(), [](const Flag& a, const Flag& b) {
      return lowest_marking(a.reach) < lowest_marking(b.reach);
    });
  }
  return v;
}

std::vector<std::pair<int, int>> StableTree::edge_endpoints() const {
  const auto parent = split_parents(splits());
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < count_; ++i) e.emplace_back(parent[i] + 1, i + 1);
  return e;
}

bool StableTree::is_chain() const {
  for (const auto& v : vertices()) {
    int edges = 0;
    for (const auto& f : v.flags) edges += (f.edge >= 0);
    if (edges > 2) return false;
  }
  return true;
}

std::vector<Mask> StableTree::chain_blocks() const {
  if (count_ == 0) return {full_mask(n_)};
  const auto verts = vertices();
  const auto ends = edge_endpoints();
  std::vector<std::vector<int>> adj(verts.size());
  for (const auto& [a, b] : ends) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  int start = -1;
  for (std::size_t k = 0; k < adj.size(); ++k) {
    if (adj[k].size() > 2) throw std::logic_error("chain_blocks: tree is not a chain");
    if (adj[k].size() == 1 && start < 0) start = static_cast<int>(k);
  }
  std::vector<Mask> blocks;
  int prev = -1;
  for (int cur = start; cur >= 0;) {
    blocks.push_back(verts[cur].legs);
    int next = -1;
    for (int w : adj[cur]) {
      if (w != prev) next = w;
    }
    prev = cur;
    cur = next;
  }
  std::vector<Mask> reversed(blocks.rbegin(), blocks.rend());
  auto text = [&](const std::vector<Mask>& b) {
    std::string out;
    for (Mask m : b) out += format_markings(m, n_) + "|";
    return out;
  };
  return text(reversed) < text(blocks) ? reversed : blocks;
}

std::string StableTree::to_string() const {
  if (!is_chain()) return to_json();
  std::string out = "(";
  const auto blocks = chain_blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += '|';
    out += format_markings(blocks[i], n_);
  }
  return out + ")";
}

std::string StableTree::to_json() const {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : vertices()) {
    std::vector<int> legs;
    for (int i = 1; i <= n_; ++i) {
      if (v.legs & marking_bit(i)) legs.push_back(i);
    }
    j["vertices"].push_back({{"legs", legs}});
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : edge_endpoints()) j["edges"].push_back({a, b});
  return j.dump();
}

// ---------------------------------------------------------------- canonicalize

StableTree canonicalize(const TreeGraph& g) {
  check_n(g.n);
  const int nv = static_cast<int>(g.vertex_legs.size());
  if (nv == 0) throw std::invalid_argument("canonicalize: no vertices");
  if (static_cast<int>(g.edges.size()) != nv - 1) {
    throw std::invalid_argument("canonicalize: a tree on V vertices has V-1 edges");
  }
  std::vector<Mask> legs(nv, 0);
  Mask all = 0;
  for (int v = 0; v < nv; ++v) {
    for (int i : g.vertex_legs[v]) {
      if (i < 1 || i > g.n) throw std::invalid_argument("canonicalize: leg out of range");
      if (all & marking_bit(i)) throw std::invalid_argument("canonicalize: leg assigned twice");
      all |= marking_bit(i);
      legs[v] |= marking_bit(i);
    }
  }
  if (all != full_mask(g.n)) throw std::invalid_argument("canonicalize: some marking has no vertex");
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbor, edge)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [a, b] = g.edges[e];
    if (a < 0 || b < 0 || a >= nv || b >= nv || a == b) {
      throw std::invalid_argument("canonicalize: bad edge endpoint");
    }
    adj[a].emplace_back(b, static_cast<int>(e));
    adj[b].emplace_back(a, static_cast<int>(e));
  }
  for (int v = 0; v < nv; ++v) {
    if (static_cast<int>(adj[v].size()) + popcount(legs[v]) < 3) {
      throw std::invalid_argument("canonicalize: vertex " + std::to_string(v) + " is unstable");
    }
  }
  // Connectivity: with V-1 edges, connected implies acyclic.
  std::vector<bool> seen(nv, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != nv) throw std::invalid_argument("canonicalize: graph is not a tree");

  std::function<Mask(int, int)> reach = [&](int v, int from) {
    Mask m = legs[v];
    for (auto [w, e] : adj[v]) {
      if (w != from) m |= reach(w, v);
    }
    return m;
  };
  std::vector<Mask> splits;
  for (const auto& [a, b] : g.edges) splits.push_back(reach(b, a));
  return StableTree::from_splits(g.n, splits);
}

StableTree tree_from_json(std::string_view text, int n) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("stable tree JSON: ") + e.what());
  }
  TreeGraph g;
  g.n = n;
  try {
    for (const auto& v : j.at("vertices")) g.vertex_legs.push_back(v.at("legs").get<std::vector<int>>());
    for (const auto& e : j.at("edges")) {
      const auto p = e.get<std::vector<int>>();
      if (p.size() != 2) throw ParseError("stable tree JSON: an edge needs two endpoints");
      g.edges.emplace_back(p[0], p[1]);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("stable tree JSON: ") + e.what());
  }
  try {
    return canonicalize(g);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

// ---------------------------------------------------------------- enumeration

const std::vector<Mask>& all_splits(int n) {
  check_n(n);
  static std::mutex mu;
  static std::map<int, std::vector<Mask>> cache;
  std::lock_guard lock(mu);
  auto& v = cache[n];
  if (v.empty()) {
    for (Mask m = 2; m < full_mask(n); m += 2) {
      const int k = popcount(m);
      if (k >= 2 && n - k >= 2) v.push_back(m);
    }
  }
  return v;
}

std::vector<StableTree> enumerate_strata(int n, int codim) {
  check_n(n);
  if (codim < 0 || codim > n - 3) {
    throw std::invalid_argument("enumerate_strata: codim must lie in 0..n-3");
  }
  const auto& splits = all_splits(n);
  std::vector<StableTree> out;
  std::vector<Mask> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == codim) {
      out.push_back(StableTree::from_splits(n, chosen));
      return;
    }
    for (std::size_t i = from; i < splits.size(); ++i) {
      const Mask s = splits[i];
      if (!std::all_of(chosen.begin(), chosen.end(), [&](Mask c) { return splits_compatible(c, s); })) continue;
      chosen.push_back(s);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

StableTree apply_permutation(const StableTree& t, const Permutation& sigma) {
  if (sigma.n() != t.n()) throw std::invalid_argument("apply_permutation: size mismatch");
  std::vector<Mask> s;
  for (Mask m : t.splits()) s.push_back(sigma.apply_mask(m));
  return StableTree::from_splits(t.n(), s);
}

// ---------------------------------------------------------------- shapes

namespace {

std::string unlabeled_encoding(const StableTree& t) {
  const auto verts = t.vertices();
  const auto ends = t.edge_endpoints();
  std::vector<std::vector<int>> adj(verts.size());
  for (const auto& [a, b] : ends) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::function<std::string(int, int)> enc = [&](int v, int from) {
    std::vector<std::string> kids;
    for (int w : adj[v]) {
      if (w != from) kids.push_back(enc(w, v));
    }
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + std::to_string(popcount(verts[v].legs));
    for (const auto& k : kids) s += k;
    return s + ")";
  };
  std::string best;
  for (std::size_t r = 0; r < verts.size(); ++r) {
    auto e = enc(static_cast<int>(r), -1);
    if (best.empty() || e < best) best = std::move(e);
  }
  return best;
}

std::string parts_key(const std::vector<int>& parts) {
  std::string k;
  for (std::size_t i = 0; i < parts.size(); ++i) k += (i ? "," : "") + std::to_string(parts[i]);
  return k;
}

}  // namespace

std::string ShapeLabel::to_string() const {
  if (!parts.empty()) return "d_{" + parts_key(parts) + "}";
  return "t" + key;
}

bool shape_precedes(const ShapeLabel& a, const ShapeLabel& b) {
  if (a.codim != b.codim) return a.codim < b.codim;
  if (a.codim == 1) return a.parts < b.parts;
  if (a.codim == 2) return a.parts > b.parts;
  return a.key < b.key;
}

ShapeLabel shape_from_parts(int n, std::vector<int> parts) {
  check_n(n);
  int sum = 0;
  for (int p : parts) sum += p;
  if (sum != n) throw std::invalid_argument("shape: parts must sum to n");
  ShapeLabel s;
  s.codim = static_cast<int>(parts.size()) - 1;
  if (s.codim == 1) {
    if (parts[0] < 2 || parts[1] < 2) throw std::invalid_argument("shape: divisor parts need size >= 2");
    if (parts[0] > parts[1]) std::swap(parts[0], parts[1]);
  } else if (s.codim == 2) {
    if (parts[0] < 2 || parts[2] < 2 || parts[1] < 1) {
      throw std::invalid_argument("shape: need lambda_1, lambda_3 >= 2 and lambda_2 >= 1");
    }
    if (parts[0] < parts[2]) std::swap(parts[0], parts[2]);
  } else if (s.codim != 0) {
    throw std::invalid_argument("shape: part lists describe codimension 0, 1 or 2 only");
  }
  s.parts = std::move(parts);
  s.key = parts_key(s.parts);
  return s;
}

ShapeLabel shape_of(const StableTree& t) {
  if (t.codim() <= 2) {
    std::vector<int> parts;
    for (Mask b : t.chain_blocks()) parts.push_back(popcount(b));
    return shape_from_parts(t.n(), std::move(parts));
  }
  ShapeLabel s;
  s.codim = t.codim();
  s.key = unlabeled_encoding(t);
  return s;
}

ShapeLabel parse_shape(std::string_view text, int n) {
  std::string_view s = trim(text);
  if (s.starts_with("d_{") && s.ends_with("}")) s = s.substr(3, s.size() - 4);
  else if (s.starts_with("d(") && s.ends_with(")")) s = s.substr(2, s.size() - 3);
  std::vector<int> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto e = s.find(',', start);
    if (e == std::string_view::npos) e = s.size();
    const std::string tok(trim(s.substr(start, e - start)));
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
      throw ParseError("bad shape '" + std::string(text) + "'");
    }
    parts.push_back(std::stoi(tok));
    start = e + 1;
  }
  try {
    return shape_from_parts(n, std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
  }
}

std::vector<OrbitCount> orbit_decompose(int n, int codim) {
  std::map<std::string, OrbitCount> by_key;
  for (const auto& t : enumerate_strata(n, codim)) {
    auto shape = shape_of(t);
    auto [it, inserted] = by_key.try_emplace(shape.key, OrbitCount{shape, 0});
    ++it->second.members;
  }
  std::vector<OrbitCount> out;
  for (auto& [k, v] : by_key) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(),
            [](const OrbitCount& a, const OrbitCount& b) { return shape_precedes(a.shape, b.shape); });
  return out;
}

// ---------------------------------------------------------------- compatibility

CompatibilityResult compatibility(const Partition2& p, const StableTree& t) {
  if (p.n() != t.n()) throw std::invalid_argument("compatibility: n mismatch");
  const Mask s = p.side();
  if (const int e = t.edge_of(s); e >= 0) return ExistingEdge{e};
  if (!t.compatible_with(s)) return Incompatible{};
  const auto verts = t.vertices();
  std::vector<NewEdge> found;
  for (std::size_t v = 0; v < verts.size(); ++v) {
    std::vector<Flag> moved;
    Mask moved_reach = 0;
    bool clean = true;
    for (const auto& f : verts[v].flags) {
      if ((f.reach & s) == f.reach) {
        moved.push_back(f);
        moved_reach |= f.reach;
      } else if ((f.reach & s) != 0) {
        clean = false;
      }
    }
    const std::size_t stay = verts[v].flags.size() - moved.size();
    if (clean && moved_reach == s && moved.size() >= 2 && stay >= 2) {
      found.push_back({static_cast<int>(v), std::move(moved), s});
    }
  }
  if (found.size() != 1) {
    throw std::logic_error("compatibility: a compatible split must refine exactly one vertex");
  }
  return found.front();
}

}  // namespace chow
