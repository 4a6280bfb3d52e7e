#pragma once

// Dense linear algebra over a tower field: rank, reduced row echelon form,
// null spaces and determinants.

#include <cstddef>
#include <vector>

#include "drinfeld/field.hpp"

namespace drinfeld {

class DenseMatrix {
 public:
  DenseMatrix(TowerPtr field, std::size_t rows, std::size_t cols);
  static DenseMatrix from_rows(TowerPtr field, const std::vector<std::vector<Elem>>& rows);

  const TowerPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::vector<Elem> row(std::size_t i) const;
  void append_row(const std::vector<Elem>& row);

 private:
  TowerPtr field_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

struct Echelon {
  DenseMatrix matrix;               // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Gauss-Jordan elimination; pivots scan columns left to right.
Echelon rref(DenseMatrix m);
std::size_t rank(const DenseMatrix& m);
/// Basis of {v : m v = 0}, one vector per free column, in column order.
std::vector<std::vector<Elem>> nullspace(const DenseMatrix& m);
Elem determinant(DenseMatrix m);

}  // namespace drinfeld
