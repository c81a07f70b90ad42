#include "sympspec/linalg/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sympspec/error.hpp"
#include "sympspec/linalg/decompositions.hpp"
#include "sympspec/random.hpp"
#include "sympspec/simd/kernels.hpp"

namespace sympspec::linalg {
namespace {

// Two passes of modified Gram-Schmidt on the rows of `rows_t`, in place.
// Rows that collapse below `floor` are dropped.
Matrix gram_schmidt_rows(Matrix rows_t, double floor) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < rows_t.rows(); ++i) {
    auto ri = rows_t.row(i);
    const double before = norm2(ri);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k : kept) {
        simd::axpy(-simd::dot(rows_t.row(k), ri), rows_t.row(k), ri);
      }
    }
    const double after = norm2(ri);
    if (after <= floor * std::max(before, 1e-300) || after == 0.0) continue;
    simd::scale(1.0 / after, ri);
    kept.push_back(i);
  }
  Matrix out(kept.size(), rows_t.cols());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    std::copy(rows_t.row(kept[r]).begin(), rows_t.row(kept[r]).end(),
              out.row(r).begin());
  }
  return out;
}

}  // namespace

Subspace Subspace::from_orthonormal(Matrix basis) { return Subspace(std::move(basis)); }

Subspace Subspace::whole(std::size_t ambient) {
  return Subspace(Matrix::identity(ambient));
}

Vector Subspace::project(std::span<const double> x) const {
  if (x.size() != ambient()) throw ValidationError("project: dimension mismatch");
  const Vector coeffs = basis_.transpose() * x;
  return basis_ * coeffs;
}

double Subspace::distance(std::span<const double> x) const {
  return norm2(subtract(x, project(x)));
}

bool Subspace::contains(std::span<const double> x, double tol) const {
  return distance(x) <= tol * norm2(x);
}

bool Subspace::contains(const Subspace& inner, double tol) const {
  if (inner.ambient() != ambient()) return false;
  for (std::size_t j = 0; j < inner.dim(); ++j) {
    if (!contains(inner.basis().column(j), tol)) return false;
  }
  return true;
}

Subspace orthonormalize(const Matrix& columns, double rank_tol) {
  const std::size_t ambient = columns.rows();
  if (columns.cols() == 0) return Subspace(ambient);
  const SingularValueDecomposition dec = svd(columns);
  const std::size_t r = dec.rank(rank_tol);
  Matrix rows_t(r, ambient);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < ambient; ++i) rows_t(j, i) = dec.u(i, j);
  const Matrix cleaned = gram_schmidt_rows(std::move(rows_t), 0.5);
  return Subspace::from_orthonormal(cleaned.transpose());
}

Subspace span_of(const std::vector<Vector>& vectors, std::size_t ambient,
                 double rank_tol) {
  if (vectors.empty()) return Subspace(ambient);
  return orthonormalize(Matrix::from_columns(vectors, ambient), rank_tol);
}

Subspace null_space(const Matrix& a, double rank_tol) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return Subspace::whole(n);
  const SingularValueDecomposition dec = svd(a);
  const std::size_t r = dec.singular_values.empty() || dec.singular_values[0] == 0.0
                            ? 0
                            : dec.rank(rank_tol);
  Matrix rows_t(n - r, n);
  for (std::size_t j = r; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) rows_t(j - r, i) = dec.v(i, j);
  const Matrix cleaned = gram_schmidt_rows(std::move(rows_t), 0.5);
  return Subspace::from_orthonormal(cleaned.transpose());
}

Subspace orthogonal_complement(const Subspace& s) {
  if (s.dim() == 0) return Subspace::whole(s.ambient());
  return null_space(s.basis().transpose());
}

Subspace intersect(const Subspace& a, const Subspace& b, double rank_tol) {
  if (a.ambient() != b.ambient()) throw ValidationError("intersect: ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient());
  const Matrix stacked = hstack(a.basis(), b.basis() * -1.0);
  const Subspace kernel = null_space(stacked, rank_tol);
  if (kernel.dim() == 0) return Subspace(a.ambient());
  const Matrix top = kernel.basis().block(0, 0, a.dim(), kernel.dim());
  return orthonormalize(a.basis() * top, rank_tol);
}

Subspace sum(const Subspace& a, const Subspace& b, double rank_tol) {
  if (a.ambient() != b.ambient()) throw ValidationError("sum: ambient mismatch");
  return orthonormalize(hstack(a.basis(), b.basis()), rank_tol);
}

Vector principal_angles(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient())
    throw ValidationError("principal_angles: ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0)
    throw ValidationError("principal_angles: zero subspace");
  const Subspace& big = a.dim() >= b.dim() ? a : b;
  const Subspace& small = a.dim() >= b.dim() ? b : a;
  const std::size_t q = small.dim();

  const Matrix c = transpose_times(big.basis(), small.basis());
  const Vector cosines = svd(c).singular_values;  // descending
  const Matrix residual = small.basis() - big.basis() * c;
  Vector sines = svd(residual).singular_values;  // descending
  std::reverse(sines.begin(), sines.end());

  Vector angles(q);
  for (std::size_t i = 0; i < q; ++i) {
    const double cs = std::min(1.0, cosines[i]);
    if (cs * cs >= 0.5) {
      angles[i] = std::asin(std::min(1.0, sines[i]));
    } else {
      angles[i] = std::acos(cs);
    }
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return std::numbers::pi / 2;
  if (a.dim() == 0) return 0.0;
  return principal_angles(a, b).back();
}

Vector random_unit_vector(const Subspace& s, Rng& rng) {
  if (s.dim() == 0) throw ValidationError("random_unit_vector: zero subspace");
  const Vector g = rng.normal_vector(s.dim());
  return normalized(s.basis() * g);
}

Subspace random_subspace(std::size_t ambient, std::size_t k, Rng& rng) {
  Matrix g(k, ambient);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < ambient; ++j) g(i, j) = rng.normal();
  const Matrix q = gram_schmidt_rows(std::move(g), 1e-8);
  if (q.rows() != k) throw NumericalError("random_subspace: degenerate draw");
  return Subspace::from_orthonormal(q.transpose());
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  return random_subspace(n, n, rng).basis();
}

}  // namespace sympspec::linalg
