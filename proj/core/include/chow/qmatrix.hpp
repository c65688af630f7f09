#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chow/rational.hpp"

namespace chow {

using QVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals. Operations return new values.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  static QMatrix identity(std::size_t size);
  static QMatrix from_rows(const std::vector<QVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  const std::vector<Rational>& entries() const { return entries_; }

  QMatrix transpose() const;
  QVector operator*(std::span<const Rational> v) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct RrefResult {
  QMatrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form by Gauss-Jordan elimination, pivoting on the
/// first nonzero entry of each column.
RrefResult rref(const QMatrix& m);

std::size_t rank(const QMatrix& m);

struct AffineSolution {
  QVector particular;           // free variables set to zero
  std::vector<QVector> kernel;  // one vector per free column, in column order
};

/// All x with m x = v, as particular + span(kernel); nullopt when v is not in
/// the column span of m.
std::optional<AffineSolution> solve_affine(const QMatrix& m, std::span<const Rational> v);

/// Basis of the nullspace of m.
std::vector<QVector> kernel(const QMatrix& m);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace chow
