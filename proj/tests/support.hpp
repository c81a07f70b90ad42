#pragma once
// Small helpers shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "sympspec/linalg/matrix.hpp"
#include "sympspec/symplectic/williamson.hpp"

namespace testing {

using sympspec::linalg::Matrix;
using sympspec::linalg::Vector;

inline Matrix diag(std::initializer_list<double> d) {
  std::vector<double> v(d);
  return Matrix::diagonal(v);
}

inline Vector unit(std::size_t dim, std::size_t i) {
  Vector e(dim, 0.0);
  e[i] = 1.0;
  return e;
}

inline double max_diff(const Matrix& a, const Matrix& b) {
  return sympspec::linalg::max_abs(a - b);
}

inline double max_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline sympspec::symplectic::PositiveDefiniteMatrix pd(const Matrix& a) {
  return sympspec::symplectic::PositiveDefiniteMatrix(a);
}

/// diag(D, D)
inline Matrix normal_form(const Vector& d) {
  Vector dd = d;
  dd.insert(dd.end(), d.begin(), d.end());
  return Matrix::diagonal(dd);
}

/// The 6x6 integer matrix L L^T used for frozen oracle values.
inline Matrix fixed_a6() {
  return Matrix{{4, 2, 0, 2, 0, -2},  {2, 10, -3, 1, 6, -1}, {0, -3, 5, 2, -2, 2},
                {2, 1, 2, 6, -2, 0},  {0, 6, -2, -2, 14, 3}, {-2, -1, 2, 0, 3, 7}};
}

inline Matrix fixed_b6() {
  return Matrix{{4, 1, 0, 0, 0, 0}, {1, 3, 1, 0, 0, 0}, {0, 1, 5, 0, 1, 0},
                {0, 0, 0, 2, 0, 0}, {0, 0, 1, 0, 3, 1}, {0, 0, 0, 0, 1, 2}};
}

}  // namespace testing
