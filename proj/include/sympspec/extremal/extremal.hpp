#pragma once
// Witness-based checks of the variational characterisations of symplectic
// eigenvalues. Lower bounds come from tuples sampled inside the canonical
// chain of an eigenbasis; upper bounds from tuples constructed inside
// arbitrary chains. The infimum itself is never computed.

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympspec/extremal/functional.hpp"
#include "sympspec/geometry/chains.hpp"
#include "sympspec/symplectic/williamson.hpp"

namespace sympspec::extremal {

using geometry::SubspaceChain;
using linalg::Matrix;
using linalg::Subspace;
using linalg::Vector;
using symplectic::PositiveDefiniteMatrix;
using symplectic::SymplecticTupleSet;
using symplectic::WilliamsonDecomposition;

struct ExtremalCertificate {
  std::string kind;
  double claimed_value = 0.0;
  /// Tuple attaining the claimed value (from the eigenbasis).
  SymplecticTupleSet witness;
  /// Smallest value over canonical-chain samples.
  double sampled_min = std::numeric_limits<double>::infinity();
  std::string achieved_at;
  /// sampled_min - claimed_value, for reporting.
  double slack = 0.0;
  /// |value at witness - claimed_value|
  double equality_gap = 0.0;
  /// Largest value over constructed upper-side witnesses, and
  /// claimed_value - witness_max.
  double witness_max = -std::numeric_limits<double>::infinity();
  double upper_slack = std::numeric_limits<double>::infinity();
  std::optional<SymplecticTupleSet> worst_upper_witness;

  std::size_t samples = 0;
  std::size_t skipped_samples = 0;
  std::size_t witnesses = 0;
  std::size_t failed_witnesses = 0;
  double tolerance = 1e-9;
  /// Kind-specific measurements, e.g. worst elementwise domination gap.
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
  void metric(std::string name, double value) { metrics.emplace_back(std::move(name), value); }
};

struct ExtremalOptions {
  std::size_t samples = 200;
  std::size_t chains = 100;
  /// Absolute tolerance, scaled by max(1, |claimed value|).
  double tol = 1e-9;
  /// Tolerance for the value of the attaining tuple.
  double equality_tol = 1e-10;
  /// Share of samples drawn near the attaining tuple rather than uniformly.
  double near_optimal_fraction = 0.5;
};

struct PoincareWitness {
  Vector u;
  Vector v;
  double value = 0.0;  // (<u,Au> + <v,Av>)/2
};

/// For a subspace of dimension 2n - k + 1, a pair (u, v) inside it with
/// <u, J v> = 1 and value at most d_k: intersect with
/// span{u_1..u_n, v_1..v_k} of the eigenbasis and take a prime-invariant
/// unit vector and its complement.
PoincareWitness poincare_witness(const PositiveDefiniteMatrix& a, const Subspace& m,
                                 const WilliamsonDecomposition& w, Rng& rng);

struct SampleOptions {
  /// When set, draws are anchor + eps * noise projected to the feasible set.
  const SymplecticTupleSet* anchor = nullptr;
  double eps = 0.0;
  std::size_t max_attempts = 50;
};

struct TupleSample {
  std::optional<SymplecticTupleSet> tuple;
  std::size_t attempts = 0;
};

/// Greedy draw of a symplectically orthonormal tuple with x_j, y_j in W_j,
/// from j = k down to 1, each pair taken in W_j intersected with the
/// symplectic complement of the pairs already chosen. Empty tuple when
/// every attempt fails.
TupleSample sample_tuple_in_chain(const SubspaceChain& chain, Rng& rng,
                                  const SampleOptions& opts = {});

/// (u_{i_j}, v_{i_j}) of the Williamson basis.
SymplecticTupleSet eigen_tuple(const WilliamsonDecomposition& w,
                               const std::vector<std::size_t>& index_set);

ExtremalCertificate maxmin_check(const PositiveDefiniteMatrix& a, std::size_t k, Rng& rng,
                                 const ExtremalOptions& opts = {});

ExtremalCertificate wielandt_certify(const PositiveDefiniteMatrix& a,
                                     const std::vector<std::size_t>& index_set, Rng& rng,
                                     const ExtremalOptions& opts = {});

/// ValidationError if phi is not flagged admissible.
ExtremalCertificate phi_extremal_check(const PositiveDefiniteMatrix& a,
                                       const std::vector<std::size_t>& index_set,
                                       const SpectralFunctional& phi, Rng& rng,
                                       const ExtremalOptions& opts = {});

ExtremalCertificate det_product_check(const PositiveDefiniteMatrix& a,
                                      const std::vector<std::size_t>& index_set, Rng& rng,
                                      const ExtremalOptions& opts = {});

}  // namespace sympspec::extremal
