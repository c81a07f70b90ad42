#include "sympspec/linalg/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sympspec/error.hpp"
#include "sympspec/simd/kernels.hpp"

namespace sympspec::linalg {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxQlIterations = 64;

// Householder reduction to tridiagonal form (EISPACK tred2 ordering).
// On exit v holds the accumulated orthogonal transform, d the diagonal and
// e the subdiagonal in e[1..n-1].
void tridiagonalize(Matrix& v, Vector& d, Vector& e) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e). vt holds the transform transposed
// so each Givens rotation touches two contiguous rows.
void tridiagonal_ql(Matrix& vt, Vector& d, Vector& e) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= kEps * tst1) break;
      ++m;
    }
    if (m == n) m = n - 1;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlIterations) {
          throw NumericalError("sym_eig: QL iteration did not converge");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          simd::rotate(vt.row(ii), vt.row(ii + 1), c, s);
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > kEps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
  Matrix scaled_vecs = eigenvectors;
  for (std::size_t i = 0; i < scaled_vecs.rows(); ++i)
    for (std::size_t j = 0; j < scaled_vecs.cols(); ++j)
      scaled_vecs(i, j) *= eigenvalues[j];
  return scaled_vecs * eigenvectors.transpose();
}

SpectralDecomposition sym_eig(const Matrix& s, double tol) {
  if (!s.is_square()) throw ValidationError("sym_eig: matrix is not square");
  if (!all_finite(s)) throw ValidationError("sym_eig: non-finite entry");
  const std::size_t n = s.rows();
  if (n == 0) return {};
  const double fro = frobenius_norm(s);
  const double defect = symmetry_defect(s);
  if (defect > tol * std::max(fro, std::numeric_limits<double>::min())) {
    std::ostringstream msg;
    msg << "sym_eig: input is not symmetric (||S - S^T||_F = " << defect
        << ", ||S||_F = " << fro << ")";
    throw ValidationError(msg.str());
  }

  Matrix v = symmetrize(s);
  Vector d(n);
  Vector e(n);
  if (n == 1) {
    return {{v(0, 0)}, Matrix::identity(1)};
  }
  tridiagonalize(v, d, e);
  Matrix vt = v.transpose();
  tridiagonal_ql(vt, d, e);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  SpectralDecomposition out{Vector(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = d[order[j]];
    const auto src = vt.row(order[j]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = src[i];
  }
  return out;
}

std::size_t SingularValueDecomposition::rank(double rel_tol) const {
  if (singular_values.empty()) return 0;
  const double cutoff = rel_tol * singular_values.front();
  return static_cast<std::size_t>(std::count_if(
      singular_values.begin(), singular_values.end(),
      [&](double s) { return s > cutoff; }));
}

SingularValueDecomposition svd(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // Rows of `work` are the columns of a; rows of `vt` the columns of V.
  Matrix work = a.transpose();
  Matrix vt = Matrix::identity(n);

  // Columns that have collapsed to roundoff are left alone; rotating them
  // against each other never settles.
  double total = 0.0;
  for (std::size_t p = 0; p < n; ++p) total += simd::sum_squares(work.row(p));
  const double negligible = 1e-28 * total;
  const double orth_tol = static_cast<double>(std::max<std::size_t>(m, 1)) * kEps;

  constexpr int kMaxSweeps = 80;
  bool rotated = true;
  for (int sweep = 0; sweep < kMaxSweeps && rotated; ++sweep) {
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = simd::sum_squares(work.row(p));
        const double beta = simd::sum_squares(work.row(q));
        const double gamma = simd::dot(work.row(p), work.row(q));
        if (gamma == 0.0 || std::abs(gamma) <= orth_tol * std::sqrt(alpha * beta) ||
            std::min(alpha, beta) <= negligible) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        // (x, y) <- (c x - s y, s x + c y) with x = col p, y = col q
        simd::rotate(work.row(p), work.row(q), c, s);
        simd::rotate(vt.row(p), vt.row(q), c, s);
      }
    }
    if (sweep + 1 == kMaxSweeps && rotated) {
      throw NumericalError("svd: Jacobi sweeps did not converge");
    }
  }

  Vector sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(work.row(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SingularValueDecomposition out{Vector(n), Matrix(m, n), Matrix(n, n)};
  const double smax = n ? sigma[order[0]] : 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = sigma[src];
    for (std::size_t i = 0; i < n; ++i) out.v(i, j) = vt(src, i);
    if (sigma[src] > kEps * smax && sigma[src] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, j) = work(src, i) / sigma[src];
    }
  }
  return out;
}

SquareRoots pd_sqrt_invsqrt(const Matrix& a) {
  const SpectralDecomposition eig = sym_eig(a);
  const double lmin = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  if (!(lmin > 0.0)) {
    std::ostringstream msg;
    msg << "matrix is not positive definite (smallest eigenvalue " << lmin << ")";
    throw ValidationError(msg.str());
  }
  const std::size_t n = a.rows();
  Matrix qs = eig.eigenvectors;
  Matrix qi = eig.eigenvectors;
  for (std::size_t j = 0; j < n; ++j) {
    // Q diag(l^{1/4}) times its transpose is Q diag(l^{1/2}) Q^T.
    const double quarter = std::pow(eig.eigenvalues[j], 0.25);
    for (std::size_t i = 0; i < n; ++i) {
      qs(i, j) *= quarter;
      qi(i, j) /= quarter;
    }
  }
  return {symmetrize(qs * qs.transpose()), symmetrize(qi * qi.transpose())};
}

SkewCanonicalForm skew_canonical(const Matrix& k, double tol) {
  if (!k.is_square() || k.rows() % 2 != 0 || k.rows() == 0) {
    throw ValidationError("skew_canonical: need a nonempty even square matrix");
  }
  const std::size_t dim = k.rows();
  const std::size_t n = dim / 2;
  const double fro = frobenius_norm(k);
  const double skew_defect = frobenius_norm(k + k.transpose());
  if (skew_defect > tol * fro) {
    throw ValidationError("skew_canonical: input is not skew-symmetric");
  }

  // -K^2 = K^T K has eigenvalues d_j^2, each with even multiplicity.
  const SpectralDecomposition eig = sym_eig(transpose_times(k, k), 1e-8);
  const double knorm = std::sqrt(std::max(eig.eigenvalues.back(), 0.0));
  if (knorm == 0.0) throw ValidationError("skew_canonical: K is singular (zero)");
  const double cluster_threshold = 1e-8 * knorm;

  // Group eigenvalues (largest first) into clusters by separation in d.
  std::vector<double> dvals(dim);
  for (std::size_t i = 0; i < dim; ++i)
    dvals[i] = std::sqrt(std::max(eig.eigenvalues[i], 0.0));
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t idx = dim; idx-- > 0;) {
    const bool joins =
        !clusters.empty() &&
        (dvals[clusters.back().back()] - dvals[idx] <= cluster_threshold ||
         clusters.back().size() % 2 == 1);
    if (joins) {
      clusters.back().push_back(idx);
    } else {
      clusters.push_back({idx});
    }
  }
  if (clusters.back().size() % 2 == 1) {
    throw NumericalError("skew_canonical: eigenvalues of -K^2 do not pair up");
  }

  std::vector<Vector> chosen;  // all accepted u and w vectors
  std::vector<Vector> us;
  std::vector<Vector> ws;
  Vector angles;
  auto project_out = [&](Vector& x) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& c : chosen) axpy(-dot(c, x), c, x);
  };

  for (const auto& cluster : clusters) {
    std::vector<Vector> candidates;
    for (std::size_t idx : cluster) candidates.push_back(eig.eigenvectors.column(idx));
    for (std::size_t pair = 0; pair < cluster.size() / 2; ++pair) {
      // Take the candidate with the largest component outside the chosen span.
      double best = -1.0;
      Vector u;
      for (Vector cand : candidates) {
        project_out(cand);
        const double nr = norm2(cand);
        if (nr > best) {
          best = nr;
          u = std::move(cand);
        }
      }
      if (best < 1e-3) {
        std::ostringstream msg;
        msg << "skew_canonical: lost orthogonality inside eigenvalue cluster "
               "(cluster gap threshold "
            << cluster_threshold << ")";
        throw NumericalError(msg.str());
      }
      u = normalized(u);
      Vector w = k * u;
      const double kn = norm2(w);
      if (kn <= 1e-12 * knorm) throw ValidationError("skew_canonical: K is singular");
      w = scaled(w, -1.0 / kn);
      chosen.push_back(u);
      project_out(w);
      w = normalized(w);
      chosen.push_back(w);
      angles.push_back(dot(u, k * w));
      us.push_back(std::move(u));
      ws.push_back(std::move(w));
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return angles[a] < angles[b]; });
  SkewCanonicalForm out{Vector(n), Matrix(dim, dim)};
  for (std::size_t j = 0; j < n; ++j) {
    out.block_angles[j] = angles[order[j]];
    out.rotation.set_column(j, us[order[j]]);
    out.rotation.set_column(n + j, ws[order[j]]);
  }

  if (out.block_angles.front() <= 1e-12 * knorm) {
    throw ValidationError("skew_canonical: K is singular");
  }

  Matrix target(dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    target(j, n + j) = out.block_angles[j];
    target(n + j, j) = -out.block_angles[j];
  }
  const double residual =
      frobenius_norm(transpose_times(out.rotation, k * out.rotation) - target);
  if (residual > tol * fro) {
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < n; ++j)
      min_gap = std::min(min_gap, out.block_angles[j + 1] - out.block_angles[j]);
    std::ostringstream msg;
    msg << "skew_canonical: residual " << residual << " exceeds " << tol * fro
        << " (smallest gap between block angles " << min_gap << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

double spectral_norm(const Matrix& a) {
  if (a.empty()) return 0.0;
  const SpectralDecomposition eig = sym_eig(transpose_times(a, a), 1e-8);
  return std::sqrt(std::max(eig.eigenvalues.back(), 0.0));
}

double log_det_pd(const Matrix& a) {
  const SpectralDecomposition eig = sym_eig(a);
  double acc = 0.0;
  for (double l : eig.eigenvalues) {
    if (!(l > 0.0)) throw ValidationError("log_det_pd: matrix is not positive definite");
    acc += std::log(l);
  }
  return acc;
}

Matrix expm(const Matrix& a) {
  if (!a.is_square()) throw ValidationError("expm: matrix is not square");
  const std::size_t n = a.rows();
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a(i, j));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Matrix b = a * std::ldexp(1.0, -squarings);

  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int p = 1; p <= 30; ++p) {
    term = (term * b) * (1.0 / p);
    result += term;
    if (frobenius_norm(term) <= kEps * frobenius_norm(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace sympspec::linalg
