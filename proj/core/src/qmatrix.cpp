#include "chow/qmatrix.hpp"

#include <stdexcept>
#include <utility>

namespace chow {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("QMatrix: entry count does not match shape");
  }
}

QMatrix QMatrix::identity(std::size_t size) {
  std::vector<Rational> e(size * size);
  for (std::size_t i = 0; i < size; ++i) e[i * size + i] = 1;
  return {size, size, std::move(e)};
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  std::vector<Rational> e;
  e.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("QMatrix::from_rows: ragged rows");
    e.insert(e.end(), r.begin(), r.end());
  }
  return {rows.size(), cols, std::move(e)};
}

QMatrix QMatrix::transpose() const {
  std::vector<Rational> e(entries_.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) e[c * rows_ + r] = (*this)(r, c);
  }
  return {cols_, rows_, std::move(e)};
}

QVector QMatrix::operator*(std::span<const Rational> v) const {
  if (v.size() != cols_) throw std::invalid_argument("QMatrix * vector: length mismatch");
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = dot(row(r), v);
  return out;
}

RrefResult rref(const QMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<Rational> a = m.entries();
  auto at = [&](std::size_t r, std::size_t c) -> Rational& { return a[r * cols + c]; };

  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t p = lead;
    while (p < rows && at(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != lead) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(at(p, k), at(lead, k));
    }
    const Rational inv = Rational(1) / at(lead, c);
    for (std::size_t k = c; k < cols; ++k) at(lead, k) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || at(r, c).is_zero()) continue;
      const Rational f = at(r, c);
      for (std::size_t k = c; k < cols; ++k) {
        if (!at(lead, k).is_zero()) at(r, k) -= f * at(lead, k);
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return {QMatrix(rows, cols, std::move(a)), std::move(pivots)};
}

std::size_t rank(const QMatrix& m) { return rref(m).rank(); }

namespace {

std::vector<QVector> kernel_from_rref(const RrefResult& red, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector k(cols);
    k[f] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) k[red.pivots[i]] = -red.reduced(i, f);
    basis.push_back(std::move(k));
  }
  return basis;
}

}  // namespace

std::vector<QVector> kernel(const QMatrix& m) { return kernel_from_rref(rref(m), m.cols()); }

std::optional<AffineSolution> solve_affine(const QMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.rows()) throw std::invalid_argument("solve_affine: rhs length mismatch");
  const std::size_t cols = m.cols();
  std::vector<Rational> aug;
  aug.reserve(m.rows() * (cols + 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    aug.insert(aug.end(), row.begin(), row.end());
    aug.push_back(v[r]);
  }
  const RrefResult red = rref(QMatrix(m.rows(), cols + 1, std::move(aug)));
  if (!red.pivots.empty() && red.pivots.back() == cols) return std::nullopt;

  AffineSolution sol;
  sol.particular.assign(cols, Rational(0));
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    sol.particular[red.pivots[i]] = red.reduced(i, cols);
  }
  // Pivots of the augmented matrix restricted to the first cols columns are
  // the pivots of m, so the kernel reads off the same reduced rows.
  RrefResult left{red.reduced, red.pivots};
  sol.kernel = kernel_from_rref(left, cols);
  return sol;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  mpq_class acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].value() * b[i].value();
  return Rational(std::move(acc));
}

}  // namespace chow
