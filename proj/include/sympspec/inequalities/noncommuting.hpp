#pragma once
// Symplectic spectra are not invariant under swapping the factors of a
// product: the closing example and a random search for the
// square-root-product variant.

#include <cstdint>

#include "sympspec/symplectic/williamson.hpp"

namespace sympspec::inequalities {

/// A = [[A1, 0], [0, A2]] with A1 = diag(1, 2) and A2 = [[0, 1], [2, 0]].
linalg::Matrix closing_example_factor();

struct FactorOrderResult {
  linalg::Vector d_ata;  // d(A^T A)
  linalg::Vector d_aat;  // d(A A^T)
  double det_ata = 0.0;
  double det_aat = 0.0;
  /// Largest Williamson residual (relative A-residual or J-residual) of the
  /// two decompositions.
  double max_residual = 0.0;
};

FactorOrderResult factor_order_spectra(const linalg::Matrix& a);

struct SqrtProductAsymmetry {
  bool found = false;
  std::uint64_t trial = 0;
  linalg::Matrix a;
  linalg::Matrix b;
  linalg::Vector d_ab;  // d(A^{1/2} B A^{1/2})
  linalg::Vector d_ba;  // d(B^{1/2} A B^{1/2})
  double relative_gap = 0.0;
};

/// Draws random PD pairs of half-dimension n until the two spectra differ
/// by more than `threshold` (max relative entry difference).
SqrtProductAsymmetry search_sqrt_product_asymmetry(std::uint64_t seed, std::size_t n,
                                                   std::size_t max_trials,
                                                   double threshold = 1e-6);

}  // namespace sympspec::inequalities
