#pragma once

#include <cstdint>
#include <optional>

#include "sympspec/random.hpp"
#include "sympspec/symplectic/williamson.hpp"

namespace sympspec::symplectic {

enum class PdMode { Wishart, PrescribedSpectrum };

/// exp(J H) for symmetric H. Always symplectic.
Matrix symplectic_exp(const Matrix& h);

/// exp(J H) with H a random symmetric matrix rescaled so ||H||_2 <= 2.
Matrix random_symplectic(Rng& rng, std::size_t n);
Matrix random_symplectic(std::uint64_t seed, std::size_t n);

/// R R^T + 1e-3 tr(R R^T)/(2n) I with R a standard Gaussian 2n x 2n matrix.
PositiveDefiniteMatrix random_pd_wishart(Rng& rng, std::size_t n);
/// S^T diag(D, D) S with S = random_symplectic; d must be positive.
PositiveDefiniteMatrix random_pd_prescribed(Rng& rng, std::span<const double> d);

/// Seeded entry point: same seed, same matrix.
PositiveDefiniteMatrix random_pd(std::uint64_t seed, std::size_t n, PdMode mode,
                                 std::span<const double> d = {});

/// Ascending spectrum drawn uniformly from [lo, hi].
Vector random_spectrum(Rng& rng, std::size_t n, double lo, double hi);

/// Random symmetric Gaussian matrix (GOE-like, unscaled).
Matrix random_symmetric(Rng& rng, std::size_t dim);

}  // namespace sympspec::symplectic
