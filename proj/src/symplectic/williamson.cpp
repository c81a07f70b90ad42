#include "sympspec/symplectic/williamson.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "sympspec/error.hpp"
#include "sympspec/linalg/decompositions.hpp"

namespace sympspec::symplectic {

using linalg::frobenius_norm;

PositiveDefiniteMatrix::PositiveDefiniteMatrix(const Matrix& a) {
  if (!a.is_square() || a.rows() == 0 || a.rows() % 2 != 0) {
    std::ostringstream msg;
    msg << "expected a nonempty 2n x 2n matrix, got " << a.rows() << " x " << a.cols();
    throw ValidationError(msg.str());
  }
  if (!linalg::all_finite(a)) throw ValidationError("matrix has non-finite entries");
  const double fro = frobenius_norm(a);
  const double defect = linalg::symmetry_defect(a);
  if (defect > 1e-12 * fro) {
    std::ostringstream msg;
    msg << "matrix is not symmetric (||A - A^T||_F / ||A||_F = " << defect / fro << ")";
    throw ValidationError(msg.str());
  }
  a_ = linalg::symmetrize(a);
  const auto eig = linalg::sym_eig(a_);
  lambda_min_ = eig.eigenvalues.front();
  lambda_max_ = eig.eigenvalues.back();
  if (!(lambda_min_ > 0.0)) {
    std::ostringstream msg;
    msg << "matrix is not positive definite (smallest eigenvalue " << lambda_min_ << ")";
    throw ValidationError(msg.str());
  }
}

SymplecticEigenpair WilliamsonDecomposition::pair(std::size_t j) const {
  const std::size_t n = half_dim();
  return {m.column(j), m.column(n + j), d[j]};
}

WilliamsonDecomposition williamson(const PositiveDefiniteMatrix& a,
                                   WilliamsonTolerances tol) {
  const std::size_t n = a.half_dim();
  const Matrix j = standard_form(n);
  const auto roots = linalg::pd_sqrt_invsqrt(a.matrix());
  // K' = A^{-1/2} J A^{-1/2} is skew-symmetric with block angles 1/d_j.
  Matrix kprime = roots.inv_sqrt * (j * roots.inv_sqrt);
  kprime = 0.5 * (kprime - kprime.transpose());
  const auto canon = linalg::skew_canonical(kprime, 1e-8);

  // Block angles ascending means d descending; reverse the block order.
  WilliamsonDecomposition out;
  out.d.resize(n);
  Matrix q(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = n - 1 - i;
    const double di = 1.0 / canon.block_angles[src];
    out.d[i] = di;
    const double root = std::sqrt(di);
    q.set_column(i, linalg::scaled(canon.rotation.column(src), root));
    q.set_column(n + i, linalg::scaled(canon.rotation.column(n + src), root));
  }
  out.m = roots.inv_sqrt * q;

  Vector dd(2 * n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = dd[n + i] = out.d[i];
  out.residual_a = frobenius_norm(linalg::transpose_times(out.m, a.matrix() * out.m) -
                                  Matrix::diagonal(dd)) /
                   frobenius_norm(a.matrix());
  out.residual_j = symplectic_defect(out.m);
  out.condition_number = a.condition_number();
  if (out.condition_number > kIllConditioned) {
    std::ostringstream msg;
    msg << "ill-conditioned input (condition number " << out.condition_number << ")";
    out.warnings.push_back(msg.str());
  }
  if (out.residual_a > tol.relative_a) {
    std::ostringstream msg;
    msg << "williamson: ||M^T A M - diag(D,D)||_F / ||A||_F = " << out.residual_a
        << " exceeds " << tol.relative_a;
    throw NumericalError(msg.str());
  }
  if (out.residual_j > tol.symplectic) {
    std::ostringstream msg;
    msg << "williamson: ||M^T J M - J||_F = " << out.residual_j << " exceeds "
        << tol.symplectic;
    throw NumericalError(msg.str());
  }
  return out;
}

std::string_view method_name(EigenMethod m) {
  switch (m) {
    case EigenMethod::SkewCanonical: return "skew-canonical";
    case EigenMethod::JaEigen: return "ja-eigen";
    case EigenMethod::Williamson: return "williamson";
  }
  return "?";
}

EigenMethod parse_method(std::string_view name) {
  if (name == "skew-canonical") return EigenMethod::SkewCanonical;
  if (name == "ja-eigen" || name == "JA-eigen") return EigenMethod::JaEigen;
  if (name == "williamson") return EigenMethod::Williamson;
  throw ValidationError("unknown method '" + std::string(name) + "'");
}

namespace {

Vector eigenvalues_skew(const PositiveDefiniteMatrix& a) {
  const std::size_t n = a.half_dim();
  const auto roots = linalg::pd_sqrt_invsqrt(a.matrix());
  Matrix kprime = roots.inv_sqrt * (standard_form(n) * roots.inv_sqrt);
  kprime = 0.5 * (kprime - kprime.transpose());
  const auto canon = linalg::skew_canonical(kprime, 1e-8);
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 / canon.block_angles[n - 1 - i];
  return d;
}

Vector eigenvalues_ja(const PositiveDefiniteMatrix& a) {
  const std::size_t dim = a.dim();
  const std::size_t n = a.half_dim();
  Eigen::MatrixXd ja(dim, dim);
  const Matrix prod = standard_form(n) * a.matrix();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) ja(i, k) = prod(i, k);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(ja, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("ja-eigen: general eigensolver failed");
  }
  // Eigenvalues are +-i d_j; sort the moduli and average each +- pair.
  std::vector<double> moduli;
  for (const auto& z : solver.eigenvalues()) moduli.push_back(std::abs(z));
  std::sort(moduli.begin(), moduli.end());
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = 0.5 * (moduli[2 * i] + moduli[2 * i + 1]);
  return d;
}

Vector eigenvalues_williamson(const PositiveDefiniteMatrix& a) {
  const auto w = williamson(a);
  const std::size_t n = a.half_dim();
  const Matrix normal = linalg::transpose_times(w.m, a.matrix() * w.m);
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = 0.5 * (normal(i, i) + normal(n + i, n + i));
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

Vector symplectic_eigenvalues(const PositiveDefiniteMatrix& a, EigenMethod method) {
  switch (method) {
    case EigenMethod::SkewCanonical: return eigenvalues_skew(a);
    case EigenMethod::JaEigen: return eigenvalues_ja(a);
    case EigenMethod::Williamson: return eigenvalues_williamson(a);
  }
  throw ValidationError("unknown method");
}

std::pair<double, double> eigenpair_residual(const Matrix& a,
                                             const SymplecticEigenpair& pair) {
  if (a.rows() != pair.u.size() || pair.u.size() != pair.v.size()) {
    throw ValidationError("eigenpair_residual: dimension mismatch");
  }
  Vector r1 = a * pair.u;
  linalg::axpy(-pair.d, apply_j(pair.v), r1);
  Vector r2 = a * pair.v;
  linalg::axpy(pair.d, apply_j(pair.u), r2);
  return {linalg::norm2(r1), linalg::norm2(r2)};
}

Compression compress(const PositiveDefiniteMatrix& a, const SymplecticTupleSet& t,
                     double tol) {
  if (t.size() == 0) throw ValidationError("compress: empty tuple");
  if (t.ambient() != a.dim()) throw ValidationError("compress: dimension mismatch");
  const Matrix s = t.matrix();
  const double scale = std::max(1.0, std::pow(frobenius_norm(s), 2));
  const double defect = symplectic_defect(s);
  if (defect > tol * scale) {
    std::ostringstream msg;
    msg << "compress: tuple is not symplectically orthonormal (defect " << defect << ")";
    throw ValidationError(msg.str());
  }
  Compression out;
  out.a_m = linalg::congruence(a.matrix(), s);
  const PositiveDefiniteMatrix am(out.a_m);
  out.d_m = symplectic_eigenvalues(am);
  out.log_det = linalg::log_det_pd(out.a_m);
  return out;
}

}  // namespace sympspec::symplectic
