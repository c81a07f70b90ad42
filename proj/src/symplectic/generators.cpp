#include "sympspec/symplectic/generators.hpp"

#include <algorithm>

#include "sympspec/error.hpp"
#include "sympspec/linalg/decompositions.hpp"

namespace sympspec::symplectic {

Matrix symplectic_exp(const Matrix& h) {
  if (!h.is_square() || h.rows() % 2 != 0) {
    throw ValidationError("symplectic_exp: need a 2n x 2n matrix");
  }
  return linalg::expm(standard_form(h.rows() / 2) * linalg::symmetrize(h));
}

Matrix random_symmetric(Rng& rng, std::size_t dim) {
  Matrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) g(i, j) = g(j, i) = rng.normal();
  return g;
}

Matrix random_symplectic(Rng& rng, std::size_t n) {
  if (n == 0) throw ValidationError("random_symplectic: n must be positive");
  Matrix h = random_symmetric(rng, 2 * n);
  const double norm = linalg::spectral_norm(h);
  const double target = 2.0 * rng.uniform();
  if (norm > 0.0) h *= target / norm;
  return symplectic_exp(h);
}

Matrix random_symplectic(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  return random_symplectic(rng, n);
}

PositiveDefiniteMatrix random_pd_wishart(Rng& rng, std::size_t n) {
  if (n == 0) throw ValidationError("random_pd: n must be positive");
  const std::size_t dim = 2 * n;
  Matrix r(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) r(i, j) = rng.normal();
  Matrix a = linalg::symmetrize(r * r.transpose());
  const double shift = 1e-3 * linalg::trace(a) / static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i) a(i, i) += shift;
  return PositiveDefiniteMatrix(a);
}

PositiveDefiniteMatrix random_pd_prescribed(Rng& rng, std::span<const double> d) {
  if (d.empty()) throw ValidationError("random_pd: empty spectrum");
  if (std::any_of(d.begin(), d.end(), [](double x) { return !(x > 0.0); })) {
    throw ValidationError("random_pd: prescribed spectrum must be positive");
  }
  const std::size_t n = d.size();
  Vector dd(2 * n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = dd[n + i] = d[i];
  const Matrix s = random_symplectic(rng, n);
  return PositiveDefiniteMatrix(linalg::congruence(Matrix::diagonal(dd), s));
}

PositiveDefiniteMatrix random_pd(std::uint64_t seed, std::size_t n, PdMode mode,
                                 std::span<const double> d) {
  Rng rng(seed);
  if (mode == PdMode::Wishart) return random_pd_wishart(rng, n);
  if (d.size() != n) throw ValidationError("random_pd: spectrum length must equal n");
  return random_pd_prescribed(rng, d);
}

Vector random_spectrum(Rng& rng, std::size_t n, double lo, double hi) {
  Vector d(n);
  for (auto& x : d) x = rng.uniform(lo, hi);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace sympspec::symplectic
