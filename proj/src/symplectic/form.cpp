#include "sympspec/symplectic/form.hpp"

#include "sympspec/error.hpp"

namespace sympspec::symplectic {

Matrix standard_form(std::size_t n) {
  Matrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

Vector apply_j(std::span<const double> x) {
  if (x.size() % 2 != 0) throw ValidationError("J applied to odd-length vector");
  const std::size_t n = x.size() / 2;
  Vector out(x.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[n + i];
    out[n + i] = -x[i];
  }
  return out;
}

Vector apply_jt(std::span<const double> x) {
  if (x.size() % 2 != 0) throw ValidationError("J^T applied to odd-length vector");
  const std::size_t n = x.size() / 2;
  Vector out(x.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = -x[n + i];
    out[n + i] = x[i];
  }
  return out;
}

double symplectic_inner(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() % 2 != 0) {
    throw ValidationError("symplectic_inner: vectors must share an even length");
  }
  const std::size_t n = x.size() / 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[n + i] - x[n + i] * y[i];
  return acc;
}

double symplectic_defect(const Matrix& s) {
  if (s.rows() % 2 != 0 || s.cols() % 2 != 0) {
    throw ValidationError("symplectic_defect: need 2n x 2k columns");
  }
  const std::size_t k = s.cols() / 2;
  const Matrix jn = standard_form(s.rows() / 2);
  return linalg::frobenius_norm(linalg::transpose_times(s, jn * s) - standard_form(k));
}

bool is_symplectic(const Matrix& m, double tol) {
  return m.is_square() && symplectic_defect(m) <= tol;
}

Matrix SymplecticTupleSet::matrix() const {
  if (x.size() != y.size()) throw ValidationError("tuple: x and y counts differ");
  const std::size_t k = x.size();
  Matrix s(ambient(), 2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    s.set_column(j, x[j]);
    s.set_column(k + j, y[j]);
  }
  return s;
}

Vector SymplecticTupleSet::half_traces(const Matrix& a) const {
  Vector out(size());
  for (std::size_t j = 0; j < size(); ++j) {
    out[j] = 0.5 * (linalg::dot(x[j], a * x[j]) + linalg::dot(y[j], a * y[j]));
  }
  return out;
}

double SymplecticTupleSet::half_trace_sum(const Matrix& a) const {
  double acc = 0.0;
  for (double v : half_traces(a)) acc += v;
  return acc;
}

SymplecticTupleSet SymplecticTupleSet::from_matrix(const Matrix& columns) {
  if (columns.cols() % 2 != 0) throw ValidationError("tuple matrix needs 2k columns");
  const std::size_t k = columns.cols() / 2;
  SymplecticTupleSet t;
  for (std::size_t j = 0; j < k; ++j) {
    t.x.push_back(columns.column(j));
    t.y.push_back(columns.column(k + j));
  }
  return t;
}

}  // namespace sympspec::symplectic
