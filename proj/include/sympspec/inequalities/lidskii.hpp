#pragma once
// Geometric mean of positive definite matrices and the sum/product
// inequalities for symplectic eigenvalues, evaluated as per-trial records.

#include <cstdint>
#include <string>
#include <vector>

#include "sympspec/symplectic/williamson.hpp"

namespace sympspec::inequalities {

using linalg::Matrix;
using linalg::Vector;
using symplectic::PositiveDefiniteMatrix;

/// A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}
PositiveDefiniteMatrix geometric_mean(const PositiveDefiniteMatrix& a,
                                      const PositiveDefiniteMatrix& b);

/// ||U^T U - I||_F for U = A^{-1/2} (A#B) B^{-1/2}.
double polar_factor_check(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b);

struct InstanceDigest {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::size_t n = 0;
  std::vector<std::size_t> index_set;
};

enum class Direction { GreaterEqual, LessEqual };

std::string_view direction_symbol(Direction d);

/// lhs (direction) rhs. slack >= 0 means satisfied; the record is violated
/// when slack < -tol * scale.
struct InequalityRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Direction direction = Direction::GreaterEqual;
  double slack = 0.0;
  double scale = 1.0;
  InstanceDigest digest;

  bool violated(double tol) const { return slack < -tol * scale; }
};

/// Sums: slack = oriented difference, scale = max(1, |lhs|).
InequalityRecord sum_record(std::string name, double lhs, double rhs, Direction dir,
                            InstanceDigest digest);
/// Products given by their logarithms: slack = expm1(oriented log
/// difference), i.e. relative, scale 1.
InequalityRecord log_product_record(std::string name, double log_lhs, double log_rhs,
                                    Direction dir, InstanceDigest digest);

struct LidskiiInstance {
  Matrix a;
  Matrix b;
  std::vector<std::size_t> index_set;
  InstanceDigest digest;
};

/// Trial `trial` of a suite: n uniform in [n_min, n_max], A and B drawn from
/// a mix of Wishart and prescribed-spectrum matrices (occasionally B = A or
/// a multiple of I), index set uniform over nonempty subsets.
LidskiiInstance draw_lidskii_instance(std::uint64_t seed, std::string_view suite,
                                      std::uint64_t trial, std::size_t n_min, std::size_t n_max);

/// sum d_{i_j}(A+B) >= sum d_{i_j}(A) + sum_{j<=k} d_j(B), and the full
/// prefix case sum_{j<=k} d_j(A+B) >= sum_{j<=k} (d_j(A) + d_j(B)).
std::vector<InequalityRecord> additive_lidskii_records(const PositiveDefiniteMatrix& a,
                                                       const PositiveDefiniteMatrix& b,
                                                       const std::vector<std::size_t>& index_set,
                                                       const InstanceDigest& digest);

/// prod d_{i_j}(A) d_j(B) <= prod d_{i_j}^2(A#B) <= prod d_{i_j}(A) d_{n-j+1}(B),
/// plus the prefix bound prod_{j<=k} d_j^2(A#B) >= prod_{j<=k} d_j(A) d_j(B)
/// and the tail bound prod_{j>=k} d_j^2(A#B) <= prod_{j>=k} d_j(A) d_j(B)
/// for every k.
std::vector<InequalityRecord> multiplicative_lidskii_records(
    const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
    const std::vector<std::size_t>& index_set, const InstanceDigest& digest);

std::vector<InequalityRecord> additive_lidskii_suite(std::size_t trials, std::size_t n_min,
                                                     std::size_t n_max, std::uint64_t seed);
std::vector<InequalityRecord> multiplicative_lidskii_suite(std::size_t trials,
                                                           std::size_t n_min,
                                                           std::size_t n_max,
                                                           std::uint64_t seed);

/// Largest relative change of the multiplicative records when (A, B) is
/// replaced by (M^T A M, M^T B M) with M from williamson(B).
double congruence_reduction_gap(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                const std::vector<std::size_t>& index_set);

}  // namespace sympspec::inequalities
