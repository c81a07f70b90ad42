#pragma once
// Nested subspace chains and the two constructive steps built on them:
// extending a skew-orthogonal family down a decreasing chain, and producing
// two orthosymplectic families with the same span from an increasing and a
// decreasing chain.

#include <vector>

#include "sympspec/geometry/basis.hpp"
#include "sympspec/random.hpp"

namespace sympspec::geometry {

enum class ChainDirection { Increasing, Decreasing };

/// indexSet is 1-based and strictly increasing. For an increasing chain
/// dim V_j = n + i_j, for a decreasing one dim W_j = 2n - i_j + 1.
struct SubspaceChain {
  std::vector<Subspace> subspaces;
  ChainDirection direction = ChainDirection::Decreasing;
  std::vector<std::size_t> index_set;

  std::size_t size() const { return subspaces.size(); }
  std::size_t ambient() const { return subspaces.empty() ? 0 : subspaces.front().ambient(); }
  /// Nesting and the dimension pattern. ValidationError with the first
  /// failure.
  void validate(bool exact_dims = true) const;
};

void validate_index_set(const std::vector<std::size_t>& index_set, std::size_t n);

/// M_j = span{u_1..u_n, v_{i_j}..v_n} of a full symplectic basis.
SubspaceChain canonical_decreasing_chain(const SymplecticBasis& b,
                                         const std::vector<std::size_t>& index_set);
/// V_j = span{u_1..u_n, v_1..v_{i_j}}.
SubspaceChain canonical_increasing_chain(const SymplecticBasis& b,
                                         const std::vector<std::size_t>& index_set);
/// Random chains: one random flag of R^{2n} cut down to the required
/// dimensions, so each member is an intersection of random hyperplanes.
SubspaceChain random_decreasing_chain(std::size_t n, const std::vector<std::size_t>& index_set,
                                      Rng& rng);
SubspaceChain random_increasing_chain(std::size_t n, const std::vector<std::size_t>& index_set,
                                      Rng& rng);
/// Uniform over nonempty subsets of {1..n}, sorted.
std::vector<std::size_t> random_index_set(std::size_t n, Rng& rng);

struct ChainExtension {
  Vector v;                // in W_1# and skew-orthogonal to w_1..w_{k-1}
  std::vector<Vector> vs;  // v_j in W_j#
  std::size_t attempts = 1;
};

/// W_1 > ... > W_k with dim W_j >= n + k - j + 1, and w_1..w_{k-1} with
/// w_j in W_j#, B-orthonormal and skew-orthogonal. B must span the ambient
/// space. Postconditions are checked on every call; a failed check is
/// retried with fresh draws, up to 20 times (NumericalError after that).
ChainExtension chain_extend(const std::vector<Subspace>& chain, const std::vector<Vector>& ws,
                            const SymplecticBasis& b, Rng& rng);

struct DualChainResult {
  std::vector<Vector> v;
  std::vector<Vector> w;
  double v_defect = 0.0;     // b_orthosymplectic_defect of v
  double w_defect = 0.0;
  double span_angle = 0.0;   // largest principal angle between the spans
  double membership = 0.0;   // worst relative distance of v_j, v_j', w_j, w_j' from their spaces
  std::size_t attempts = 1;
};

/// V_1 < ... < V_k with dim V_j = n + i_j and W_1 > ... > W_k with
/// dim W_j = 2n - i_j + 1. Returns v_j in V_j#, w_j in W_j#, both families
/// B-orthosymplectic with equal spans. Postconditions asserted on every call.
DualChainResult dual_chain_construct(const SubspaceChain& increasing,
                                     const SubspaceChain& decreasing, const SymplecticBasis& b,
                                     Rng& rng);

struct TraceCheck {
  double lhs = 0.0;           // sum <x_j, A x_j> + <y_j, A y_j> over X
  double rhs = 0.0;           // same over V
  double lhs_operator = 0.0;  // sum <x, D x>_B + <x', D x'>_B over X
  double rhs_operator = 0.0;
  double relative_gap() const;
};

/// X and V must be B-orthosymplectic (the y's equal to the B-complements)
/// with equal spans; B is a symplectic eigenbasis of A. The eigenvalues of
/// D are read off B as the half-traces <u_i, A u_i>, <v_i, A v_i>.
TraceCheck same_span_trace_check(const Matrix& a, const symplectic::SymplecticTupleSet& x,
                                 const symplectic::SymplecticTupleSet& v,
                                 const SymplecticBasis& eigenbasis);

}  // namespace sympspec::geometry
