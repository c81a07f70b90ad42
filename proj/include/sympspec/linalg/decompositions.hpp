#pragma once

#include "sympspec/linalg/matrix.hpp"

namespace sympspec::linalg {

/// Eigen-decomposition of a real symmetric matrix. Eigenvalues ascending;
/// eigenvectors are the columns of an orthogonal matrix.
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const;
};

/// Householder tridiagonalisation followed by implicit-shift QL.
/// Throws ValidationError when `s` is not symmetric within tol * ||s||_F and
/// NumericalError when the QL iteration does not settle.
SpectralDecomposition sym_eig(const Matrix& s, double tol = 1e-12);

/// Thin singular value decomposition a = U diag(sigma) V^T via one-sided
/// Jacobi. sigma is descending; V is square (cols x cols) so the trailing
/// columns span the numerical null space when a is rank deficient. U has
/// one column per singular value; columns for zero singular values are 0.
struct SingularValueDecomposition {
  Vector singular_values;
  Matrix u;
  Matrix v;

  /// Count of singular values above rel_tol * sigma_max.
  std::size_t rank(double rel_tol) const;
};

SingularValueDecomposition svd(const Matrix& a);

struct SquareRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
};

/// Principal square root and its inverse. ValidationError (reporting the
/// smallest eigenvalue) if `a` is not positive definite.
SquareRoots pd_sqrt_invsqrt(const Matrix& a);

/// Orthogonal normal form of a nonsingular skew-symmetric 2n x 2n matrix:
/// rotation^T K rotation = [[0, D], [-D, 0]], D = diag(block_angles)
/// ascending and positive.
struct SkewCanonicalForm {
  Vector block_angles;
  Matrix rotation;
};

SkewCanonicalForm skew_canonical(const Matrix& k, double tol = 1e-10);

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// log det of a symmetric positive definite matrix.
double log_det_pd(const Matrix& a);

/// Matrix exponential by scaling and squaring of a Taylor polynomial.
Matrix expm(const Matrix& a);

}  // namespace sympspec::linalg
