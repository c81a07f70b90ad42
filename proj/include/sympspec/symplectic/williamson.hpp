#pragma once

#include <string>
#include <vector>

#include "sympspec/linalg/matrix.hpp"
#include "sympspec/symplectic/form.hpp"

namespace sympspec::symplectic {

/// A validated 2n x 2n real symmetric positive definite matrix.
///
/// Symmetry is required within 1e-12 relative to the Frobenius norm; the
/// stored matrix is the exact symmetric part of the input.
class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(const Matrix& a);

  const Matrix& matrix() const { return a_; }
  std::size_t dim() const { return a_.rows(); }
  std::size_t half_dim() const { return a_.rows() / 2; }
  double min_eigenvalue() const { return lambda_min_; }
  double max_eigenvalue() const { return lambda_max_; }
  double condition_number() const { return lambda_max_ / lambda_min_; }

 private:
  Matrix a_;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
};

/// Condition numbers above this get a warning annotation, never an error.
inline constexpr double kIllConditioned = 1e12;

/// (u, v, d) with Au = dJv, Av = -dJu and <u, Jv> = 1.
struct SymplecticEigenpair {
  Vector u;
  Vector v;
  double d = 0.0;
};

/// M^T A M = diag(D, D), M^T J M = J, d ascending.
struct WilliamsonDecomposition {
  Matrix m;
  Vector d;
  /// ||M^T A M - diag(D,D)||_F / ||A||_F
  double residual_a = 0.0;
  /// ||M^T J M - J||_F
  double residual_j = 0.0;
  double condition_number = 0.0;
  std::vector<std::string> warnings;

  std::size_t half_dim() const { return d.size(); }
  /// Columns (m_j, m_{n+j}) with d_j, 0-based j.
  SymplecticEigenpair pair(std::size_t j) const;
};

struct WilliamsonTolerances {
  double relative_a = 1e-8;
  double symplectic = 1e-9;
};

/// Williamson normal form via the orthogonal canonical form of
/// A^{-1/2} J A^{-1/2}. Throws NumericalError when a residual exceeds its
/// tolerance; the message names the offending norm.
WilliamsonDecomposition williamson(const PositiveDefiniteMatrix& a,
                                   WilliamsonTolerances tol = {});

enum class EigenMethod { SkewCanonical, JaEigen, Williamson };

std::string_view method_name(EigenMethod m);
EigenMethod parse_method(std::string_view name);

/// Ascending symplectic eigenvalues d_1 <= ... <= d_n.
///  - SkewCanonical: reciprocals of the block angles of A^{-1/2} J A^{-1/2}.
///  - JaEigen: moduli of the eigenvalues of J A from a general (non-symmetric)
///    eigensolver. Independent of the rest of the library; used as an oracle.
///  - Williamson: diagonal of M^T A M from the full decomposition.
Vector symplectic_eigenvalues(const PositiveDefiniteMatrix& a,
                              EigenMethod method = EigenMethod::SkewCanonical);

/// r1 = ||Au - dJv||_2, r2 = ||Av + dJu||_2
std::pair<double, double> eigenpair_residual(const Matrix& a,
                                             const SymplecticEigenpair& pair);

struct Compression {
  Matrix a_m;      // S^T A S, 2k x 2k
  Vector d_m;      // ascending symplectic eigenvalues of a_m
  double log_det;  // log det(a_m)
};

/// Restriction of A to the span of a symplectically orthonormal tuple.
/// The tuple must satisfy ||S^T J S - J|| <= tol * max(1, ||S||_F^2).
Compression compress(const PositiveDefiniteMatrix& a, const SymplecticTupleSet& t,
                     double tol = 1e-8);

}  // namespace sympspec::symplectic
