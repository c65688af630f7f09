#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chow {

/// Bijection of the markings {1..n}. image(i) is 1-based.
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int n);
  /// From one-line notation: images[k] is the image of marking k+1.
  static Permutation from_images(std::vector<int> images);
  /// Cycle notation such as "(12)(34)(56)" or "(1,10)(2,3)"; digits are read
  /// one per marking unless the cycle contains a comma.
  static Permutation parse_cycles(std::string_view text, int n);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  bool is_involution() const;
  int fixed_points() const;
  /// Image of a marking bitmask (bit i-1 for marking i).
  std::uint32_t apply_mask(std::uint32_t mask) const;

  std::string to_cycle_string() const;

 private:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {}
  std::vector<int> images_;
};

/// (12)(34)...(n-1 n).
Permutation standard_involution(int n);

struct ConjugateInvolution {
  Permutation involution;
  /// sigma with sigma * standard_involution(n) * sigma^-1 == involution.
  Permutation representative;
};

/// Every fixed-point-free involution of {1..n} (n even), in lexicographic
/// order of their sorted pair lists.
std::vector<ConjugateInvolution> fixed_point_free_involutions(int n);

/// Elements of the centralizer of (12)(34)...(n-1 n): pair swaps combined
/// with pair permutations. `index` ranges over [0, 2^(n/2) * (n/2)!).
Permutation centralizer_element(int n, std::uint64_t index);
std::uint64_t centralizer_order(int n);

}  // namespace chow
