#pragma once

#include "sympspec/linalg/matrix.hpp"

namespace sympspec {
class Rng;
}

namespace sympspec::linalg {

/// Singular values below this fraction of the largest are treated as zero.
inline constexpr double kRankTolerance = 1e-10;
/// Default membership tolerance: x is in S when ||x - P_S x|| <= tol ||x||.
inline constexpr double kMembershipTolerance = 1e-8;

/// A linear subspace of R^ambient held as orthonormal spanning columns.
class Subspace {
 public:
  Subspace() = default;
  /// Zero subspace of R^ambient.
  explicit Subspace(std::size_t ambient) : basis_(ambient, 0) {}
  /// Takes columns that are already orthonormal.
  static Subspace from_orthonormal(Matrix basis);
  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  Vector project(std::span<const double> x) const;
  /// ||x - P x||
  double distance(std::span<const double> x) const;
  bool contains(std::span<const double> x, double tol = kMembershipTolerance) const;
  bool contains(const Subspace& inner, double tol = kMembershipTolerance) const;

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// Orthonormal basis for the column span, dropping numerically dependent
/// directions (singular values <= rank_tol * sigma_max).
Subspace orthonormalize(const Matrix& columns, double rank_tol = kRankTolerance);
Subspace span_of(const std::vector<Vector>& vectors, std::size_t ambient,
                 double rank_tol = kRankTolerance);

/// {x : a x = 0}
Subspace null_space(const Matrix& a, double rank_tol = kRankTolerance);
Subspace orthogonal_complement(const Subspace& s);
Subspace intersect(const Subspace& a, const Subspace& b,
                   double rank_tol = kRankTolerance);
Subspace sum(const Subspace& a, const Subspace& b, double rank_tol = kRankTolerance);

/// Principal angles, ascending, min(dim a, dim b) of them. Small angles are
/// taken from sines and large ones from cosines so both ends stay accurate.
Vector principal_angles(const Subspace& a, const Subspace& b);
/// Largest principal angle when the dimensions agree, pi/2 otherwise.
double subspace_distance(const Subspace& a, const Subspace& b);

/// Unit vector drawn from the Gaussian measure on the subspace.
Vector random_unit_vector(const Subspace& s, Rng& rng);
/// Orthonormal basis of a uniformly random k-dimensional subspace.
Subspace random_subspace(std::size_t ambient, std::size_t k, Rng& rng);
/// Haar-random orthogonal matrix.
Matrix random_orthogonal(std::size_t n, Rng& rng);

}  // namespace sympspec::linalg
