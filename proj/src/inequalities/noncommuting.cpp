#include "sympspec/inequalities/noncommuting.hpp"

#include <algorithm>
#include <cmath>

#include "sympspec/linalg/decompositions.hpp"
#include "sympspec/random.hpp"
#include "sympspec/symplectic/generators.hpp"

namespace sympspec::inequalities {

using linalg::Matrix;
using linalg::Vector;
using symplectic::PositiveDefiniteMatrix;

Matrix closing_example_factor() {
  Matrix a(4, 4);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  a(2, 3) = 1.0;
  a(3, 2) = 2.0;
  return a;
}

FactorOrderResult factor_order_spectra(const Matrix& a) {
  const PositiveDefiniteMatrix ata(linalg::transpose_times(a, a));
  const PositiveDefiniteMatrix aat(a * a.transpose());
  const auto w1 = symplectic::williamson(ata);
  const auto w2 = symplectic::williamson(aat);
  FactorOrderResult r;
  r.d_ata = w1.d;
  r.d_aat = w2.d;
  r.det_ata = std::exp(linalg::log_det_pd(ata.matrix()));
  r.det_aat = std::exp(linalg::log_det_pd(aat.matrix()));
  r.max_residual = std::max({w1.residual_a, w1.residual_j, w2.residual_a, w2.residual_j});
  return r;
}

namespace {

Matrix sandwich(const Matrix& outer, const Matrix& inner) {
  const Matrix s = linalg::pd_sqrt_invsqrt(outer).sqrt;
  return linalg::symmetrize(s * (inner * s));
}

}  // namespace

SqrtProductAsymmetry search_sqrt_product_asymmetry(std::uint64_t seed, std::size_t n,
                                                   std::size_t max_trials, double threshold) {
  SqrtProductAsymmetry out;
  for (std::size_t t = 0; t < max_trials; ++t) {
    Rng rng = Rng::stream(seed, "sqrt-asymmetry", t);
    const Matrix a = symplectic::random_pd_wishart(rng, n).matrix();
    const Matrix b = symplectic::random_pd_wishart(rng, n).matrix();
    const Vector dab = symplectic::symplectic_eigenvalues(PositiveDefiniteMatrix(sandwich(a, b)));
    const Vector dba = symplectic::symplectic_eigenvalues(PositiveDefiniteMatrix(sandwich(b, a)));
    double gap = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      gap = std::max(gap, std::abs(dab[j] - dba[j]) / std::max(dab[j], dba[j]));
    if (gap > threshold) {
      out = {true, t, a, b, dab, dba, gap};
      return out;
    }
  }
  return out;
}

}  // namespace sympspec::inequalities
