#pragma once

#include <cstddef>
#include <vector>

namespace wirealg {

/// Dense row-major matrix over doubles. Sizes in this library stay tiny
/// (paper-scale systems), so a naive representation keeps every result
/// bitwise reproducible: products accumulate in a fixed k-order whether
/// the row loop runs serially or under OpenMP.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // rows * cols entries

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  Matrix(std::size_t r, std::size_t c, std::vector<double> entries);

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }

  /// [[a,0],[0,b]] with zero off-diagonal blocks.
  static Matrix block_diagonal(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);

/// max |a - b| entrywise; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Matrix product with the row loop forced serial; the production
/// operator* parallelizes rows when they are worth it. Both accumulate
/// each entry in identical order, so results are bitwise equal.
Matrix multiply_serial(const Matrix& a, const Matrix& b);

}  // namespace wirealg
