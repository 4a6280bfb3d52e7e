#include "drinfeld/linalg.hpp"

#include <utility>

#include "drinfeld/errors.hpp"

namespace drinfeld {

DenseMatrix::DenseMatrix(TowerPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

DenseMatrix DenseMatrix::from_rows(TowerPtr field, const std::vector<std::vector<Elem>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  DenseMatrix m(std::move(field), 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<Elem> DenseMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void DenseMatrix::append_row(const std::vector<Elem>& row) {
  if (row.size() != cols_) throw_usage("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Echelon rref(DenseMatrix m) {
  const FieldTower& F = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
    }
    const Elem inv = F.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = F.mul(m.at(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Elem factor = m.at(i, c);
      if (factor.is_zero()) continue;
      for (std::size_t j = c; j < m.cols(); ++j) {
        m.at(i, j) = F.sub(m.at(i, j), F.mul(factor, m.at(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  DenseMatrix reduced(m.field(), 0, m.cols());
  for (std::size_t i = 0; i < r; ++i) reduced.append_row(m.row(i));
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const DenseMatrix& m) { return rref(m).pivots.size(); }

std::vector<std::vector<Elem>> nullspace(const DenseMatrix& m) {
  const FieldTower& F = *m.field();
  const Echelon ech = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : ech.pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), F.zero());
    v[free] = F.one();
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      v[ech.pivots[i]] = F.neg(ech.matrix.at(i, free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Elem determinant(DenseMatrix m) {
  if (m.rows() != m.cols()) throw_usage("determinant of a non-square matrix");
  const FieldTower& F = *m.field();
  Elem det = F.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m.at(piv, c).is_zero()) ++piv;
    if (piv == n) return F.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m.at(c, c));
    const Elem inv = F.inv(m.at(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem factor = F.mul(m.at(i, c), inv);
      if (factor.is_zero()) continue;
      for (std::size_t j = c; j < n; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(factor, m.at(c, j)));
    }
  }
  return det;
}

}  // namespace drinfeld
