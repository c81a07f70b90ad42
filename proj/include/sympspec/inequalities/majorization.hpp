#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sympspec/extremal/functional.hpp"
#include "sympspec/random.hpp"

namespace sympspec::inequalities {

/// A real vector with its ascending rearrangement kept alongside.
class MajorizationVector {
 public:
  MajorizationVector() = default;
  explicit MajorizationVector(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& ascending() const { return ascending_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  std::vector<double> ascending_;
};

/// alpha is supermajorised by beta: every ascending partial sum of alpha is
/// at least the matching partial sum of beta. `tol` is an absolute allowance
/// per partial sum (0 gives the exact relation).
bool supermajorize(const MajorizationVector& alpha, const MajorizationVector& beta,
                   double tol = 0.0);
/// Supermajorised with equal totals, both up to 1e-12 of the total.
bool majorize(const MajorizationVector& alpha, const MajorizationVector& beta);

/// Smallest k-th partial-sum difference sum(alpha_up) - sum(beta_up) over k.
double supermajorization_margin(const MajorizationVector& alpha, const MajorizationVector& beta);

struct SchurCheckResult {
  bool passed = true;
  std::size_t pairs = 0;
  std::string failed_property;
  std::vector<double> alpha;
  std::vector<double> beta;
  double phi_alpha = 0.0;
  double phi_beta = 0.0;
};

/// Empirical test of the claims behind an admissible functional on random
/// positive vectors: alpha majorised by beta gives phi(alpha) >= phi(beta),
/// alpha <= beta elementwise gives phi(alpha) <= phi(beta), alpha
/// supermajorised by beta gives phi(alpha) >= phi(beta), and phi ignores
/// permutations. Relative tolerance 1e-12 on the value comparisons.
SchurCheckResult schur_concave_monotone_check(const extremal::SpectralFunctional& phi,
                                              std::size_t trials, Rng& rng);

/// Generators used by the check (exposed for tests). The second vector of
/// each pair dominates in the named sense.
std::pair<std::vector<double>, std::vector<double>> random_majorization_pair(std::size_t n,
                                                                             Rng& rng);
std::pair<std::vector<double>, std::vector<double>> random_supermajorization_pair(
    std::size_t n, Rng& rng);

}  // namespace sympspec::inequalities
