#include "sympspec/inequalities/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sympspec/error.hpp"

namespace sympspec::inequalities {

MajorizationVector::MajorizationVector(std::vector<double> values)
    : values_(std::move(values)), ascending_(values_) {
  std::sort(ascending_.begin(), ascending_.end());
}

namespace {

void require_same_length(const MajorizationVector& a, const MajorizationVector& b) {
  if (a.size() != b.size()) throw ValidationError("majorization: length mismatch");
}

}  // namespace

double supermajorization_margin(const MajorizationVector& alpha,
                                const MajorizationVector& beta) {
  require_same_length(alpha, beta);
  double sa = 0.0, sb = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    sa += alpha.ascending()[k];
    sb += beta.ascending()[k];
    margin = std::min(margin, sa - sb);
  }
  return margin;
}

bool supermajorize(const MajorizationVector& alpha, const MajorizationVector& beta, double tol) {
  require_same_length(alpha, beta);
  double sa = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    sa += alpha.ascending()[k];
    sb += beta.ascending()[k];
    if (sa + tol < sb) return false;
  }
  return true;
}

bool majorize(const MajorizationVector& alpha, const MajorizationVector& beta) {
  require_same_length(alpha, beta);
  const double ta = std::accumulate(alpha.values().begin(), alpha.values().end(), 0.0);
  const double tb = std::accumulate(beta.values().begin(), beta.values().end(), 0.0);
  // Equal totals are only equal up to roundoff, and the same slack has to
  // apply to the last partial sum or an exact rearrangement can fail.
  const double tol = 1e-12 * std::max({std::abs(ta), std::abs(tb), 1e-300});
  return std::abs(ta - tb) <= tol && supermajorize(alpha, beta, tol);
}

std::pair<std::vector<double>, std::vector<double>> random_majorization_pair(std::size_t n,
                                                                             Rng& rng) {
  std::vector<double> beta(n);
  for (auto& b : beta) b = rng.uniform(0.1, 5.0);
  std::vector<double> alpha = beta;
  // Averaging two entries moves a vector down the majorization order.
  const std::size_t steps = n < 2 ? 0 : rng.uniform_index(1, 2 * n);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng.uniform_index(0, n - 1);
    std::size_t j = rng.uniform_index(0, n - 2);
    if (j >= i) ++j;
    const double t = rng.uniform();
    const double ai = alpha[i], aj = alpha[j];
    alpha[i] = t * ai + (1.0 - t) * aj;
    alpha[j] = (1.0 - t) * ai + t * aj;
  }
  std::shuffle(alpha.begin(), alpha.end(), std::mt19937_64(rng.next_u64()));
  return {alpha, beta};
}

std::pair<std::vector<double>, std::vector<double>> random_supermajorization_pair(
    std::size_t n, Rng& rng) {
  auto [alpha, beta] = random_majorization_pair(n, rng);
  for (auto& a : alpha)
    if (rng.uniform() < 0.5) a += rng.uniform(0.0, 1.0);
  return {alpha, beta};
}

SchurCheckResult schur_concave_monotone_check(const extremal::SpectralFunctional& phi,
                                              std::size_t trials, Rng& rng) {
  SchurCheckResult out;
  auto fail = [&](const char* what, std::vector<double> a, std::vector<double> b, double fa,
                  double fb) {
    out.passed = false;
    out.failed_property = what;
    out.alpha = std::move(a);
    out.beta = std::move(b);
    out.phi_alpha = fa;
    out.phi_beta = fb;
  };
  auto tol = [](double x, double y) {
    return 1e-12 * std::max({std::abs(x), std::abs(y), 1.0});
  };

  for (std::size_t t = 0; t < trials && out.passed; ++t) {
    const std::size_t n = rng.uniform_index(1, 8);
    ++out.pairs;

    auto [ma, mb] = random_majorization_pair(n, rng);
    double fa = phi(ma), fb = phi(mb);
    if (phi.schur_concave && fa < fb - tol(fa, fb)) {
      fail("schur-concave", ma, mb, fa, fb);
      break;
    }

    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = rng.uniform(0.1, 5.0);
      hi[i] = lo[i] + (rng.uniform() < 0.5 ? rng.uniform(0.0, 2.0) : 0.0);
    }
    fa = phi(lo);
    fb = phi(hi);
    if (phi.monotone && fa > fb + tol(fa, fb)) {
      fail("monotone", lo, hi, fa, fb);
      break;
    }

    std::vector<double> perm = hi;
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(rng.next_u64()));
    const double fp = phi(perm);
    if (phi.permutation_invariant && std::abs(fp - fb) > tol(fp, fb)) {
      fail("permutation-invariant", perm, hi, fp, fb);
      break;
    }

    auto [sa, sb] = random_supermajorization_pair(n, rng);
    fa = phi(sa);
    fb = phi(sb);
    if (phi.admissible() && fa < fb - tol(fa, fb)) {
      fail("supermajorization-lemma", sa, sb, fa, fb);
      break;
    }
  }
  return out;
}

}  // namespace sympspec::inequalities
