#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chow/permutation.hpp"

namespace chow {

/// Set of markings, bit i-1 for marking i.
using Mask = std::uint32_t;

inline constexpr int kMaxMarkings = 16;
inline constexpr int kMaxEdges = kMaxMarkings - 3;

constexpr Mask marking_bit(int i) { return Mask{1} << (i - 1); }
constexpr Mask full_mask(int n) { return (Mask{1} << n) - 1; }
int popcount(Mask m);
/// Smallest marking in a nonempty mask.
int lowest_marking(Mask m);
/// The side of the split {m, complement} that does not contain marking 1.
Mask normalize_split(Mask m, int n);
/// Two normalized splits are compatible iff one contains the other or they are disjoint.
bool splits_compatible(Mask a, Mask b);
/// "1278" style rendering; comma-separated when n > 9.
std::string format_markings(Mask m, int n);

/// Unordered two-part partition of {1..n}, both parts of size >= 2, stored by
/// the part that omits marking 1.
class Partition2 {
 public:
  Partition2(int n, Mask side);
  /// "(15|2346)" or "15|2346".
  static Partition2 parse(std::string_view text, int n);

  int n() const { return n_; }
  Mask side() const { return side_; }
  Mask complement() const { return full_mask(n_) ^ side_; }
  std::string to_string() const;

  friend bool operator==(const Partition2&, const Partition2&) = default;
  friend auto operator<=>(const Partition2&, const Partition2&) = default;

 private:
  int n_;
  Mask side_;
};

/// One half-edge or leg at a vertex, identified by the markings reachable through it.
struct Flag {
  Mask reach;
  int edge;  // -1 for a leg
};

struct Vertex {
  Mask legs;
  std::vector<Flag> flags;  // sorted by lowest reachable marking
  int valence() const { return static_cast<int>(flags.size()); }
};

/// Free-form dual graph as supplied by a caller; canonicalize() validates it.
struct TreeGraph {
  int n = 0;
  std::vector<std::vector<int>> vertex_legs;
  std::vector<std::pair<int, int>> edges;
};

/// Stable n-pointed genus-0 tree in canonical form.
///
/// A stable tree is determined by its set of edge splits; each split is kept
/// as the marking set on the side away from marking 1 and the list is sorted.
/// Canonical vertex order: vertex 0 carries marking 1; vertex e+1 is the far
/// endpoint of edge e. Edge e is the e-th split.
class StableTree {
 public:
  StableTree() = default;
  static StableTree trivial(int n);
  /// Validates pairwise compatibility and sizes; accepts unnormalized sides.
  static StableTree from_splits(int n, std::span<const Mask> splits);
  /// "(1278|56|34)": blocks along a chain; one block is the open stratum.
  static StableTree parse_chain(std::string_view text, int n);
  /// Either chain text or the JSON object form.
  static StableTree parse(std::string_view text, int n);

  int n() const { return n_; }
  int codim() const { return count_; }
  std::span<const Mask> splits() const { return {splits_.data(), static_cast<std::size_t>(count_)}; }
  bool has_split(Mask normalized) const;
  /// Index of a split among splits(), or -1.
  int edge_of(Mask normalized) const;
  bool compatible_with(Mask normalized) const;
  /// Adds a compatible, absent split.
  StableTree with_split(Mask normalized) const;

  std::vector<Vertex> vertices() const;
  std::vector<std::pair<int, int>> edge_endpoints() const;
  bool is_chain() const;
  /// Leg sets along the chain, oriented so the text form is minimal.
  std::vector<Mask> chain_blocks() const;

  /// Chain text when the tree is a path, JSON otherwise.
  std::string to_string() const;
  std::string to_json() const;

  friend bool operator==(const StableTree& a, const StableTree& b) {
    return a.n_ == b.n_ && a.count_ == b.count_ && a.splits_ == b.splits_;
  }
  friend std::strong_ordering operator<=>(const StableTree& a, const StableTree& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.count_ <=> b.count_; c != 0) return c;
    return a.splits_ <=> b.splits_;
  }

 private:
  std::uint8_t n_ = 0;
  std::uint8_t count_ = 0;
  std::array<Mask, kMaxEdges> splits_{};  // unused tail stays zero
};

/// Validates a dual graph (tree, stability, legs) and returns its canonical form.
StableTree canonicalize(const TreeGraph& graph);
/// Canonical form of the JSON object {vertices:[{legs:[...]}], edges:[[i,j]]}.
StableTree tree_from_json(std::string_view json, int n);

std::vector<StableTree> enumerate_strata(int n, int codim);

/// All normalized splits of {1..n} with both sides of size >= 2, ascending.
const std::vector<Mask>& all_splits(int n);

StableTree apply_permutation(const StableTree& t, const Permutation& sigma);

/// Sn-orbit type of a stratum. Divisors and codimension-2 chains carry the
/// part sizes (lambda_1 <= lambda_2 resp. lambda_1 >= lambda_3); other trees
/// carry a canonical unlabeled encoding.
struct ShapeLabel {
  int codim = 0;
  std::vector<int> parts;
  std::string key;

  std::string to_string() const;
  friend bool operator==(const ShapeLabel& a, const ShapeLabel& b) { return a.key == b.key; }
};

/// d_{2,6}, d_{3,5}, d_{4,4} in codim 1; d_{5,1,2}, d_{4,2,2}, ... in codim 2.
bool shape_precedes(const ShapeLabel& a, const ShapeLabel& b);
ShapeLabel shape_of(const StableTree& t);
/// Shape from part sizes (codim = parts-1, chains only); normalizes the orientation.
ShapeLabel shape_from_parts(int n, std::vector<int> parts);
/// "d_{5,1,2}" or "5,1,2".
ShapeLabel parse_shape(std::string_view text, int n);

struct OrbitCount {
  ShapeLabel shape;
  std::size_t members;
};
std::vector<OrbitCount> orbit_decompose(int n, int codim);

struct Incompatible {};
struct ExistingEdge {
  int edge;
};
struct NewEdge {
  int vertex;
  /// Flags at the vertex that move to the side of the partition's stored part.
  std::vector<Flag> moved;
  Mask split;
};
using CompatibilityResult = std::variant<Incompatible, ExistingEdge, NewEdge>;

CompatibilityResult compatibility(const Partition2& p, const StableTree& t);

}  // namespace chow
