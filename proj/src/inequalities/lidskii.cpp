#include "sympspec/inequalities/lidskii.hpp"

#include <algorithm>
#include <cmath>

#include "sympspec/error.hpp"
#include "sympspec/geometry/chains.hpp"
#include "sympspec/linalg/decompositions.hpp"
#include "sympspec/symplectic/generators.hpp"

namespace sympspec::inequalities {

using symplectic::symplectic_eigenvalues;

PositiveDefiniteMatrix geometric_mean(const PositiveDefiniteMatrix& a,
                                      const PositiveDefiniteMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("geometric_mean: dimension mismatch");
  const auto ra = linalg::pd_sqrt_invsqrt(a.matrix());
  const Matrix inner = linalg::symmetrize(ra.inv_sqrt * (b.matrix() * ra.inv_sqrt));
  const auto ri = linalg::pd_sqrt_invsqrt(inner);
  return PositiveDefiniteMatrix(linalg::symmetrize(ra.sqrt * (ri.sqrt * ra.sqrt)));
}

double polar_factor_check(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  const PositiveDefiniteMatrix g = geometric_mean(a, b);
  const auto ra = linalg::pd_sqrt_invsqrt(a.matrix());
  const auto rb = linalg::pd_sqrt_invsqrt(b.matrix());
  const Matrix u = ra.inv_sqrt * (g.matrix() * rb.inv_sqrt);
  return linalg::frobenius_norm(linalg::transpose_times(u, u) - Matrix::identity(u.rows()));
}

std::string_view direction_symbol(Direction d) {
  return d == Direction::GreaterEqual ? ">=" : "<=";
}

InequalityRecord sum_record(std::string name, double lhs, double rhs, Direction dir,
                            InstanceDigest digest) {
  InequalityRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.direction = dir;
  r.slack = dir == Direction::GreaterEqual ? lhs - rhs : rhs - lhs;
  r.scale = std::max(1.0, std::abs(lhs));
  r.digest = std::move(digest);
  return r;
}

InequalityRecord log_product_record(std::string name, double log_lhs, double log_rhs,
                                    Direction dir, InstanceDigest digest) {
  InequalityRecord r;
  r.name = std::move(name);
  r.lhs = std::exp(log_lhs);
  r.rhs = std::exp(log_rhs);
  r.direction = dir;
  r.slack = std::expm1(dir == Direction::GreaterEqual ? log_lhs - log_rhs : log_rhs - log_lhs);
  r.scale = 1.0;
  r.digest = std::move(digest);
  return r;
}

LidskiiInstance draw_lidskii_instance(std::uint64_t seed, std::string_view suite,
                                      std::uint64_t trial, std::size_t n_min, std::size_t n_max) {
  if (n_min < 1 || n_min > n_max) throw ValidationError("need 1 <= n_min <= n_max");
  Rng rng = Rng::stream(seed, suite, trial);
  const std::size_t n = rng.uniform_index(n_min, n_max);
  auto draw = [&]() {
    if (rng.uniform() < 0.5) return symplectic::random_pd_wishart(rng, n).matrix();
    return symplectic::random_pd_prescribed(rng, symplectic::random_spectrum(rng, n, 0.2, 8.0))
        .matrix();
  };
  LidskiiInstance inst;
  inst.a = draw();
  const double mode = rng.uniform();
  if (mode < 0.1) {
    inst.b = inst.a;
  } else if (mode < 0.15) {
    inst.b = Matrix::identity(2 * n) * rng.uniform(0.01, 3.0);
  } else {
    inst.b = draw();
  }
  inst.index_set = geometry::random_index_set(n, rng);
  inst.digest = {seed, trial, n, inst.index_set};
  return inst;
}

std::vector<InequalityRecord> additive_lidskii_records(const PositiveDefiniteMatrix& a,
                                                       const PositiveDefiniteMatrix& b,
                                                       const std::vector<std::size_t>& idx,
                                                       const InstanceDigest& digest) {
  if (a.dim() != b.dim()) throw ValidationError("additive_lidskii: dimension mismatch");
  geometry::validate_index_set(idx, a.half_dim());
  const PositiveDefiniteMatrix sum(a.matrix() + b.matrix());
  const Vector da = symplectic_eigenvalues(a);
  const Vector db = symplectic_eigenvalues(b);
  const Vector ds = symplectic_eigenvalues(sum);
  const std::size_t k = idx.size();

  double lhs = 0.0, rhs = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    lhs += ds[idx[j] - 1];
    rhs += da[idx[j] - 1] + db[j];
  }
  double pl = 0.0, pr = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    pl += ds[j];
    pr += da[j] + db[j];
  }
  return {sum_record("lidskii-add", lhs, rhs, Direction::GreaterEqual, digest),
          sum_record("lidskii-add-prefix", pl, pr, Direction::GreaterEqual, digest)};
}

std::vector<InequalityRecord> multiplicative_lidskii_records(
    const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
    const std::vector<std::size_t>& idx, const InstanceDigest& digest) {
  if (a.dim() != b.dim()) throw ValidationError("multiplicative_lidskii: dimension mismatch");
  const std::size_t n = a.half_dim();
  geometry::validate_index_set(idx, n);
  const PositiveDefiniteMatrix g = geometric_mean(a, b);
  const Vector da = symplectic_eigenvalues(a);
  const Vector db = symplectic_eigenvalues(b);
  const Vector dg = symplectic_eigenvalues(g);

  double log_low = 0.0, log_mid = 0.0, log_high = 0.0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const double la = std::log(da[idx[j] - 1]);
    log_low += la + std::log(db[j]);
    log_mid += 2.0 * std::log(dg[idx[j] - 1]);
    log_high += la + std::log(db[n - 1 - j]);
  }
  std::vector<InequalityRecord> out{
      log_product_record("lidskii-mult-lower", log_mid, log_low, Direction::GreaterEqual, digest),
      log_product_record("lidskii-mult-upper", log_mid, log_high, Direction::LessEqual, digest)};

  for (std::size_t k = 1; k <= n; ++k) {
    double head_g = 0.0, head_ab = 0.0, tail_g = 0.0, tail_ab = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double lg = 2.0 * std::log(dg[j]);
      const double lab = std::log(da[j]) + std::log(db[j]);
      if (j < k) {
        head_g += lg;
        head_ab += lab;
      }
      if (j >= k - 1) {
        tail_g += lg;
        tail_ab += lab;
      }
    }
    InstanceDigest dk = digest;
    dk.index_set = {k};
    out.push_back(log_product_record("product-prefix", head_g, head_ab, Direction::GreaterEqual, dk));
    out.push_back(log_product_record("product-tail", tail_g, tail_ab, Direction::LessEqual, dk));
  }
  return out;
}

std::vector<InequalityRecord> additive_lidskii_suite(std::size_t trials, std::size_t n_min,
                                                     std::size_t n_max, std::uint64_t seed) {
  std::vector<InequalityRecord> out;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto inst = draw_lidskii_instance(seed, "lidskii-add", t, n_min, n_max);
    auto recs = additive_lidskii_records(PositiveDefiniteMatrix(inst.a),
                                         PositiveDefiniteMatrix(inst.b), inst.index_set,
                                         inst.digest);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

std::vector<InequalityRecord> multiplicative_lidskii_suite(std::size_t trials,
                                                           std::size_t n_min,
                                                           std::size_t n_max,
                                                           std::uint64_t seed) {
  std::vector<InequalityRecord> out;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto inst = draw_lidskii_instance(seed, "lidskii-mult", t, n_min, n_max);
    auto recs = multiplicative_lidskii_records(PositiveDefiniteMatrix(inst.a),
                                               PositiveDefiniteMatrix(inst.b), inst.index_set,
                                               inst.digest);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

double congruence_reduction_gap(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                const std::vector<std::size_t>& index_set) {
  const auto w = symplectic::williamson(b);
  const PositiveDefiniteMatrix ar(linalg::congruence(a.matrix(), w.m));
  const PositiveDefiniteMatrix br(linalg::congruence(b.matrix(), w.m));
  const auto before = multiplicative_lidskii_records(a, b, index_set, {});
  const auto after = multiplicative_lidskii_records(ar, br, index_set, {});
  double gap = 0.0;
  for (std::size_t r = 0; r < before.size(); ++r) {
    gap = std::max(gap, std::abs(before[r].lhs - after[r].lhs) / std::abs(before[r].lhs));
    gap = std::max(gap, std::abs(before[r].rhs - after[r].rhs) / std::abs(before[r].rhs));
  }
  return gap;
}

}  // namespace sympspec::inequalities
