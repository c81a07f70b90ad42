#include "sympspec/linalg/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "sympspec/error.hpp"
#include "sympspec/simd/kernels.hpp"

namespace sympspec::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ValidationError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns,
                            std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void Matrix::set_column(std::size_t j, std::span<const double> values) {
  if (values.size() != rows_) throw ValidationError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

std::vector<Vector> Matrix::columns() const {
  std::vector<Vector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) const {
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
  Matrix out(rows_, indices.size());
  for (std::size_t c = 0; c < indices.size(); ++c)
    for (std::size_t i = 0; i < rows_; ++i) out(i, c) = (*this)(i, indices[c]);
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ValidationError("matrix dimension mismatch in +");
  simd::axpy(1.0, other.data_, data_);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ValidationError("matrix dimension mismatch in -");
  simd::axpy(-1.0, other.data_, data_);
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  simd::scale(s, data_);
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw ValidationError("matrix dimension mismatch in product");
  Matrix c(a.rows(), b.cols());
  if (c.empty() || a.cols() == 0) return c;
  simd::kernels().gemm(a.rows(), b.cols(), a.cols(), a.data(), b.data(),
                       c.data());
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size())
    throw ValidationError("matrix-vector dimension mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = simd::dot(a.row(i), x);
  return y;
}

Matrix transpose_times(const Matrix& a, const Matrix& b) {
  return a.transpose() * b;
}

Matrix congruence(const Matrix& a, const Matrix& m) {
  return symmetrize(transpose_times(m, a * m));
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() && a.cols() != 0 && b.cols() != 0)
    throw ValidationError("hstack row mismatch");
  const std::size_t rows = a.cols() ? a.rows() : b.rows();
  Matrix out(rows, a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

double frobenius_norm(const Matrix& a) {
  return std::sqrt(simd::sum_squares(a.values()));
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

double trace(const Matrix& a) {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

double symmetry_defect(const Matrix& a) {
  if (!a.is_square()) throw ValidationError("symmetry test on non-square matrix");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const double d = a(i, j) - a(j, i);
      acc += 2.0 * d * d;
    }
  return std::sqrt(acc);
}

Matrix symmetrize(const Matrix& a) {
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

bool all_finite(const Matrix& a) {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](double v) { return std::isfinite(v); });
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("dot: length mismatch");
  return simd::dot(x, y);
}

double norm2(std::span<const double> x) {
  return std::sqrt(simd::sum_squares(x));
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw ValidationError("axpy: length mismatch");
  simd::axpy(a, x, y);
}

Vector scaled(std::span<const double> x, double s) {
  Vector out(x.begin(), x.end());
  simd::scale(s, out);
  return out;
}

Vector add(std::span<const double> x, std::span<const double> y) {
  Vector out(y.begin(), y.end());
  axpy(1.0, x, out);
  return out;
}

Vector subtract(std::span<const double> x, std::span<const double> y) {
  Vector out(x.begin(), x.end());
  axpy(-1.0, y, out);
  return out;
}

Vector normalized(std::span<const double> x) { return scaled(x, 1.0 / norm2(x)); }

}  // namespace sympspec::linalg
