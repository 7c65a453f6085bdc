#include "wirealg/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace wirealg {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void multiply_rows(const Matrix& a, const Matrix& b, Matrix& out,
                   std::int64_t r0, std::int64_t r1) {
  for (std::int64_t i = r0; i < r1; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k)
        acc += a.at(static_cast<std::size_t>(i), k) * b.at(k, j);
      out.at(static_cast<std::size_t>(i), j) = acc;
    }
  }
}

}  // namespace

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> entries)
    : rows(r), cols(c), data(std::move(entries)) {
  require(data.size() == rows * cols, "matrix entry count != rows * cols");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Matrix Matrix::block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows + b.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j)
      m.at(a.rows + i, a.cols + j) = b.at(i, j);
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows == b.rows && a.cols == b.cols, "matrix sum shape mismatch");
  Matrix m(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) m.data[i] = a.data[i] + b.data[i];
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols == b.rows, "matrix product shape mismatch");
  Matrix out(a.rows, b.cols);
  const std::int64_t n = static_cast<std::int64_t>(a.rows);
  if (n * static_cast<std::int64_t>(b.cols) * static_cast<std::int64_t>(a.cols) >= 1 << 18) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) multiply_rows(a, b, out, i, i + 1);
  } else {
    multiply_rows(a, b, out, 0, n);
  }
  return out;
}

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
  require(a.cols == b.rows, "matrix product shape mismatch");
  Matrix out(a.rows, b.cols);
  multiply_rows(a, b, out, 0, static_cast<std::int64_t>(a.rows));
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix m(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) m.data[i] = s * a.data[i];
  return m;
}

std::vector<double> operator*(const Matrix& a, const std::vector<double>& x) {
  require(a.cols == x.size(), "matrix-vector shape mismatch");
  std::vector<double> y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.cols; ++k) acc += a.at(i, k) * x[k];
    y[i] = acc;
  }
  return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require(a.rows == b.rows && a.cols == b.cols, "max_abs_diff shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::fabs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace wirealg
