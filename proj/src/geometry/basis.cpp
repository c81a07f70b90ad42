#include "sympspec/geometry/basis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sympspec/error.hpp"
#include "sympspec/linalg/decompositions.hpp"

namespace sympspec::geometry {

using symplectic::apply_j;
using symplectic::apply_jt;
using symplectic::standard_form;

SymplecticBasis::SymplecticBasis(Matrix columns, double tol)
    : columns_(std::move(columns)) {
  if (columns_.rows() % 2 != 0 || columns_.cols() % 2 != 0 || columns_.cols() == 0 ||
      columns_.cols() > columns_.rows()) {
    throw ValidationError("symplectic basis needs a 2n x 2m matrix with 0 < m <= n");
  }
  const double defect = symplectic::symplectic_defect(columns_);
  if (defect > tol) {
    std::ostringstream msg;
    msg << "columns are not symplectically orthonormal (defect " << defect << ")";
    throw ValidationError(msg.str());
  }
  const std::size_t m = half_rank();
  const Matrix jn = standard_form(ambient() / 2);
  // alpha_i = <x, J v_i>, beta_i = -<x, J u_i>  =>  c = -J_m S^T J_n x
  pairing_ = (standard_form(m) * linalg::transpose_times(columns_, jn)) * -1.0;
}

SymplecticBasis SymplecticBasis::standard(std::size_t n) {
  return SymplecticBasis(Matrix::identity(2 * n));
}

Vector SymplecticBasis::coordinates(std::span<const double> x) const {
  if (x.size() != ambient()) throw ValidationError("coordinates: dimension mismatch");
  Vector c = pairing_ * x;
  if (!spans_ambient()) {
    const double miss = linalg::norm2(linalg::subtract(columns_ * c, x));
    if (miss > 1e-9 * std::max(linalg::norm2(x), 1e-300)) {
      throw ValidationError("vector is not in the span of the symplectic basis");
    }
  }
  return c;
}

Vector SymplecticBasis::from_coordinates(std::span<const double> c) const {
  return columns_ * c;
}

Matrix SymplecticBasis::coordinates(const Matrix& columns) const {
  Matrix out(2 * half_rank(), columns.cols());
  for (std::size_t j = 0; j < columns.cols(); ++j) out.set_column(j, coordinates(columns.column(j)));
  return out;
}

Matrix SymplecticBasis::from_coordinates(const Matrix& coords) const {
  return columns_ * coords;
}

Subspace SymplecticBasis::to_coordinates(const Subspace& w) const {
  if (w.ambient() != ambient()) throw ValidationError("to_coordinates: ambient mismatch");
  if (w.dim() == 0) return Subspace(2 * half_rank());
  return linalg::orthonormalize(coordinates(w.basis()));
}

Subspace SymplecticBasis::to_ambient(const Subspace& coords) const {
  if (coords.dim() == 0) return Subspace(ambient());
  return linalg::orthonormalize(from_coordinates(coords.basis()));
}

double b_inner(std::span<const double> x, std::span<const double> y,
               const SymplecticBasis& b) {
  return linalg::dot(b.coordinates(x), b.coordinates(y));
}

double b_norm(std::span<const double> x, const SymplecticBasis& b) {
  return linalg::norm2(b.coordinates(x));
}

Vector b_complement(std::span<const double> x, const SymplecticBasis& b) {
  return b.from_coordinates(apply_jt(b.coordinates(x)));
}

PrimeSharp subspace_prime_sharp(const Subspace& w, const SymplecticBasis& b) {
  const Subspace wc = b.to_coordinates(w);
  if (wc.dim() != w.dim()) throw NumericalError("subspace_prime_sharp: rank lost in coordinates");
  Matrix primed(wc.ambient(), wc.dim());
  for (std::size_t j = 0; j < wc.dim(); ++j) primed.set_column(j, apply_jt(wc.basis().column(j)));
  const Subspace prime_c = Subspace::from_orthonormal(primed);
  const Subspace sharp_c = linalg::intersect(wc, prime_c);
  return {b.to_ambient(prime_c), b.to_ambient(sharp_c)};
}

bool is_symplectic_subspace(const Subspace& v, double rank_tol) {
  if (v.dim() == 0) return true;
  if (v.dim() % 2 != 0) return false;
  const Matrix jn = standard_form(v.ambient() / 2);
  const Matrix restricted = linalg::transpose_times(v.basis(), jn * v.basis());
  const auto sv = linalg::svd(restricted).singular_values;
  return sv.back() > rank_tol * std::max(sv.front(), 1.0);
}

Subspace symplectic_complement(const Subspace& s, const Subspace& ambient) {
  if (s.ambient() != ambient.ambient()) {
    throw ValidationError("symplectic_complement: ambient dimension mismatch");
  }
  if (!ambient.contains(s)) {
    throw ValidationError("symplectic_complement: S is not inside the ambient space");
  }
  if (!is_symplectic_subspace(ambient)) {
    throw ValidationError("symplectic_complement: ambient space is not symplectic");
  }
  if (s.dim() == 0) return ambient;
  const Matrix jn = standard_form(s.ambient() / 2);
  // y = V c with S^T J V c = 0
  const Matrix constraint = linalg::transpose_times(s.basis(), jn * ambient.basis());
  const Subspace kernel = linalg::null_space(constraint);
  if (kernel.dim() == 0) return Subspace(s.ambient());
  return linalg::orthonormalize(ambient.basis() * kernel.basis());
}

bool is_isotropic(const Subspace& w, double tol) {
  if (w.dim() == 0) return true;
  const Matrix jn = standard_form(w.ambient() / 2);
  return linalg::max_abs(linalg::transpose_times(w.basis(), jn * w.basis())) <= tol;
}

std::vector<Vector> b_gram_schmidt(const std::vector<Vector>& vectors,
                                   const SymplecticBasis& b,
                                   const std::vector<Vector>* skew_constraint) {
  std::vector<Vector> coords;
  for (const auto& x : vectors) {
    Vector c = b.coordinates(x);
    const double before = linalg::norm2(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : coords) linalg::axpy(-linalg::dot(q, c), q, c);
    const double after = linalg::norm2(c);
    if (!(after > 1e-10 * before)) {
      throw ValidationError("b_gram_schmidt: input vectors are linearly dependent");
    }
    coords.push_back(linalg::scaled(c, 1.0 / after));
  }
  std::vector<Vector> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(b.from_coordinates(c));

  if (skew_constraint != nullptr) {
    auto worst = [&](const std::vector<Vector>& xs) {
      double w = 0.0;
      for (const auto& x : xs)
        for (const auto& z : *skew_constraint)
          w = std::max(w, std::abs(symplectic::symplectic_inner(z, x)) /
                              std::max(linalg::norm2(x) * linalg::norm2(z), 1e-300));
      return w;
    };
    if (worst(vectors) <= 1e-10 && worst(out) > 1e-8) {
      throw NumericalError("b_gram_schmidt: skew-orthogonality to constraint lost");
    }
  }
  return out;
}

double b_orthosymplectic_defect(const std::vector<Vector>& xs, const SymplecticBasis& b) {
  if (xs.empty()) return 0.0;
  const std::size_t k = xs.size();
  const std::size_t dim = 2 * b.half_rank();
  Matrix c(dim, 2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    const Vector cj = b.coordinates(xs[j]);
    c.set_column(j, cj);
    c.set_column(k + j, apply_jt(cj));
  }
  const double gram =
      linalg::frobenius_norm(linalg::transpose_times(c, c) - Matrix::identity(2 * k));
  return std::max(gram, symplectic::symplectic_defect(b.from_coordinates(c)));
}

symplectic::SymplecticTupleSet complement_tuple(const std::vector<Vector>& xs,
                                                const SymplecticBasis& b) {
  symplectic::SymplecticTupleSet t;
  for (const auto& x : xs) {
    t.x.push_back(x);
    t.y.push_back(b_complement(x, b));
  }
  return t;
}

bool in_sharp(std::span<const double> x, const Subspace& w, const SymplecticBasis& b,
              double tol) {
  return w.contains(x, tol) && w.contains(b_complement(x, b), tol);
}

BDiagonalOperator::BDiagonalOperator(SymplecticBasis basis, Vector d)
    : basis_(std::move(basis)), d_(std::move(d)) {
  if (!basis_.spans_ambient() || d_.size() != basis_.half_rank()) {
    throw ValidationError("BDiagonalOperator: needs a full basis and n values");
  }
}

Vector BDiagonalOperator::apply(std::span<const double> x) const {
  Vector c = basis_.coordinates(x);
  const std::size_t n = d_.size();
  for (std::size_t i = 0; i < n; ++i) {
    c[i] *= d_[i];
    c[n + i] *= d_[i];
  }
  return basis_.from_coordinates(c);
}

double BDiagonalOperator::quadratic(std::span<const double> x) const {
  const Vector c = basis_.coordinates(x);
  const std::size_t n = d_.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += d_[i] * (c[i] * c[i] + c[n + i] * c[n + i]);
  return acc;
}

}  // namespace sympspec::geometry
