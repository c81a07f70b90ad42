#pragma once

#include <vector>

#include "sympspec/linalg/matrix.hpp"

namespace sympspec::symplectic {

using linalg::Matrix;
using linalg::Vector;

/// J = [[0, I_n], [-I_n, 0]] of size 2n.
Matrix standard_form(std::size_t n);

/// J x without forming J.
Vector apply_j(std::span<const double> x);
/// J^T x = -J x. On coordinates (alpha, beta) this is (-beta, alpha).
Vector apply_jt(std::span<const double> x);

/// <x, J y>. Throws ValidationError on odd or mismatched lengths.
double symplectic_inner(std::span<const double> x, std::span<const double> y);

/// ||S^T J_{2n} S - J_{2k}||_F for a 2n x 2k column matrix S. Zero exactly
/// when the columns (x_1..x_k, y_1..y_k) are symplectically orthonormal.
double symplectic_defect(const Matrix& s);

bool is_symplectic(const Matrix& m, double tol = 1e-9);

/// Vectors x_1..x_k, y_1..y_k intended to satisfy <x_i,Jx_j> = <y_i,Jy_j> = 0
/// and <x_i,Jy_j> = delta_ij.
struct SymplecticTupleSet {
  std::vector<Vector> x;
  std::vector<Vector> y;

  std::size_t size() const { return x.size(); }
  std::size_t ambient() const { return x.empty() ? 0 : x.front().size(); }
  /// Columns (x_1..x_k, y_1..y_k).
  Matrix matrix() const;
  double defect() const { return symplectic_defect(matrix()); }
  /// sum_j (<x_j,Ax_j> + <y_j,Ay_j>) / 2
  double half_trace_sum(const Matrix& a) const;
  /// Per-pair values (<x_j,Ax_j> + <y_j,Ay_j>) / 2.
  Vector half_traces(const Matrix& a) const;

  static SymplecticTupleSet from_matrix(const Matrix& columns);
};

}  // namespace sympspec::symplectic
