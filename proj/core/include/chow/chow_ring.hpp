#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "chow/qmatrix.hpp"
#include "chow/taut_class.hpp"

namespace chow {

/// psi_i as a sum of boundary divisors: every split with i on one side and
/// both auxiliary markings on the other. Default aux: the two smallest
/// markings other than i.
TautClass psi_expand(int n, int i, std::optional<std::pair<int, int>> aux = std::nullopt);

/// psi at one flag of a vertex of t, expanded on the vertex factor and glued
/// back into t: a class of codimension t.codim()+1 supported on t. Auxiliary
/// flags default to the two other flags with the smallest markings.
TautClass psi_at_flag(const StableTree& t, int vertex, Mask flag_reach,
                      std::optional<std::pair<Mask, Mask>> aux_flags = std::nullopt);

/// psi_1^j + ... + psi_n^j.
TautClass psi_power_sum(int n, int j);

/// Sum of every boundary divisor of M0,n.
TautClass boundary_sum(int n);

/// D_p * c. Strata already containing the edge p pick up the excess term
/// -(psi_h + psi_h') at the two half-edges, expanded on the vertex factors.
TautClass mul_divisor(const TautClass& c, const Partition2& p);

/// Chow product; each stratum of b is treated as the product of its edge divisors.
TautClass mul(const TautClass& a, const TautClass& b);

TautClass power(const TautClass& a, int exponent);

/// Degree of a top-codimension class.
Rational integrate(const TautClass& c);

/// Pull-back along the map forgetting marking p of M0,n+1 (markings >= p of
/// the source shift up by one).
TautClass pullback_forget(const TautClass& c, int p);

/// Push-forward along the map forgetting marking p (markings > p shift down).
TautClass pushforward_forget(const TautClass& c, int p);

/// kappa_a = pi_*(psi_{n+1}^{a+1}) from M0,n+1.
TautClass kappa_class(int n, int a);

Rational pairing(const TautClass& a, const TautClass& b);

/// Pairings of two strata of complementary codimension on M0,n, sparse by row.
struct PairingTable {
  int n = 0;
  int codim = 0;
  std::vector<StableTree> rows;     // codim
  std::vector<StableTree> columns;  // n-3-codim
  std::map<StableTree, std::size_t> row_index;
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> entries;
};

/// Memoized per (n, codim); safe to call concurrently.
std::shared_ptr<const PairingTable> pairing_table(int n, int codim);
/// Disabling forces recomputation on every call (used to check that caching
/// does not change results).
void set_pairing_cache_enabled(bool enabled);
void clear_pairing_cache();

/// Pairing of c with every complementary stratum, in pairing_table column order.
QVector pairing_vector(const TautClass& c);

/// True iff c is zero in the Chow group.
bool is_zero(const TautClass& c);
bool chow_equal(const TautClass& a, const TautClass& b);

/// Coordinates x with c = sum x_i basis_i in the Chow group. Throws
/// DomainError when c is outside the span or the basis is dependent.
QVector express_in(const TautClass& c, const std::vector<TautClass>& basis);

/// Strata of codimension k forming a basis of A^k(M0,n): the first linearly
/// independent ones in enumeration order. Exact elimination; slow beyond n = 7.
std::vector<StableTree> strata_basis(int n, int codim);

}  // namespace chow
