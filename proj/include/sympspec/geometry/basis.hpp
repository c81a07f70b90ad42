#pragma once
// Inner product, complement map and subspace operations attached to a
// symplectic basis B = {u_1..u_m, v_1..v_m}.
//
// Writing x = sum(alpha_i u_i + beta_i v_i), the B-inner product is the
// Euclidean product of the coordinate vectors (alpha, beta) and the
// B-complement is x' = sum(-beta_i u_i + alpha_i v_i). In coordinates the
// complement is J^T and the symplectic form stays J, so every routine here
// works on coordinates and maps back at the end.

#include <optional>
#include <vector>

#include "sympspec/linalg/subspace.hpp"
#include "sympspec/symplectic/form.hpp"

namespace sympspec::geometry {

using linalg::Matrix;
using linalg::Subspace;
using linalg::Vector;

class SymplecticBasis {
 public:
  /// Columns (u_1..u_m, v_1..v_m) of a 2n x 2m matrix. ValidationError when
  /// the symplectic relations fail by more than tol.
  explicit SymplecticBasis(Matrix columns, double tol = 1e-9);
  static SymplecticBasis standard(std::size_t n);

  std::size_t ambient() const { return columns_.rows(); }
  /// m, the number of (u_i, v_i) pairs.
  std::size_t half_rank() const { return columns_.cols() / 2; }
  bool spans_ambient() const { return columns_.rows() == columns_.cols(); }
  const Matrix& matrix() const { return columns_; }
  Vector u(std::size_t i) const { return columns_.column(i); }
  Vector v(std::size_t i) const { return columns_.column(half_rank() + i); }

  /// (alpha, beta) of x. ValidationError when x is not in span(B) within
  /// 1e-9 relative.
  Vector coordinates(std::span<const double> x) const;
  Vector from_coordinates(std::span<const double> c) const;
  /// Coordinates of every column.
  Matrix coordinates(const Matrix& columns) const;
  Matrix from_coordinates(const Matrix& coords) const;

  /// Subspace of coordinate space (orthonormal = B-orthonormal).
  Subspace to_coordinates(const Subspace& w) const;
  Subspace to_ambient(const Subspace& coords) const;

 private:
  Matrix columns_;
  Matrix pairing_;  // -J_m S^T J_n, a left inverse of S on span(B)
};

double b_inner(std::span<const double> x, std::span<const double> y,
               const SymplecticBasis& b);
double b_norm(std::span<const double> x, const SymplecticBasis& b);
/// x' with u_j' = v_j and v_j' = -u_j.
Vector b_complement(std::span<const double> x, const SymplecticBasis& b);

struct PrimeSharp {
  Subspace prime;  // W' = {x' : x in W}
  Subspace sharp;  // W# = W n W'
};

/// Requires W inside span(B). W# is always prime-invariant, so its dimension
/// is even.
PrimeSharp subspace_prime_sharp(const Subspace& w, const SymplecticBasis& b);

/// {y in ambient : <x, J y> = 0 for all x in S}. ValidationError when S is
/// not inside `ambient` or `ambient` is not a symplectic subspace.
Subspace symplectic_complement(const Subspace& s, const Subspace& ambient);

/// All pairwise symplectic products vanish (within tol).
bool is_isotropic(const Subspace& w, double tol = 1e-10);
/// A subspace V is symplectic when the restricted form V^T J V is
/// nonsingular.
bool is_symplectic_subspace(const Subspace& v, double rank_tol = 1e-10);

/// Gram-Schmidt in the B-inner product, same span, same order. When
/// skew_constraint is given and the inputs were skew-orthogonal to it, the
/// outputs are checked to still be (NumericalError otherwise).
std::vector<Vector> b_gram_schmidt(
    const std::vector<Vector>& vectors, const SymplecticBasis& b,
    const std::vector<Vector>* skew_constraint = nullptr);

/// For x_1..x_k, how far {x_1..x_k, x_1'..x_k'} is from being
/// B-orthosymplectic: max of the B-Gram defect and the symplectic defect.
double b_orthosymplectic_defect(const std::vector<Vector>& xs, const SymplecticBasis& b);

/// Tuple (x_1..x_k ; x_1'..x_k').
symplectic::SymplecticTupleSet complement_tuple(const std::vector<Vector>& xs,
                                                const SymplecticBasis& b);

/// x is in W and x' is in W.
bool in_sharp(std::span<const double> x, const Subspace& w, const SymplecticBasis& b,
              double tol = linalg::kMembershipTolerance);

/// The operator acting as d_i on both u_i and v_i of a full basis B.
class BDiagonalOperator {
 public:
  BDiagonalOperator(SymplecticBasis basis, Vector d);

  Vector apply(std::span<const double> x) const;
  /// <x, D x>_B = sum d_i (alpha_i^2 + beta_i^2)
  double quadratic(std::span<const double> x) const;
  const SymplecticBasis& basis() const { return basis_; }
  const Vector& d() const { return d_; }

 private:
  SymplecticBasis basis_;
  Vector d_;
};

}  // namespace sympspec::geometry
