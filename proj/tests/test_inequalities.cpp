#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sympspec/error.hpp"
#include "sympspec/geometry/chains.hpp"
#include "sympspec/inequalities/lidskii.hpp"
#include "sympspec/inequalities/majorization.hpp"
#include "sympspec/inequalities/noncommuting.hpp"
#include "sympspec/symplectic/generators.hpp"
#include "support.hpp"

using namespace sympspec;
using namespace sympspec::inequalities;
using testing::diag;
using testing::max_diff;
using testing::pd;

namespace {

const InequalityRecord& find(const std::vector<InequalityRecord>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  FAIL("record not found: " << name);
  return rs.front();
}

std::vector<std::vector<std::size_t>> all_index_sets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("majorization") {
  const MajorizationVector a({2, 2}), b({3, 1});
  CHECK(supermajorize(a, b));
  CHECK(majorize(a, b));
  CHECK_FALSE(supermajorize(b, a));
  CHECK(supermajorize(MajorizationVector({3, 3}), b));
  CHECK_FALSE(majorize(MajorizationVector({3, 3}), b));
  CHECK(supermajorization_margin(a, b) == doctest::Approx(0.0));
  CHECK(supermajorization_margin(MajorizationVector({1, 5}), MajorizationVector({2, 2})) ==
        doctest::Approx(-1.0));
  CHECK_THROWS_AS(supermajorize(a, MajorizationVector({1})), ValidationError);

  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.uniform_index(1, 8);
    auto [x, y] = random_majorization_pair(n, rng);
    CHECK(majorize(MajorizationVector(x), MajorizationVector(y)));
    auto [u, v] = random_supermajorization_pair(n, rng);
    CHECK(supermajorize(MajorizationVector(u), MajorizationVector(v), 1e-12));
  }
}

TEST_CASE("Schur-concavity check") {
  Rng rng(4);
  for (const auto& phi : extremal::shipped_functionals()) {
    CAPTURE(phi.name);
    CHECK(schur_concave_monotone_check(phi, 300, rng).passed);
  }
  extremal::SpectralFunctional mx{"max", [](std::span<const double> x) {
                                     double m = x[0];
                                     for (double v : x) m = std::max(m, v);
                                     return m;
                                   }};
  const auto r = schur_concave_monotone_check(mx, 300, rng);
  CHECK_FALSE(r.passed);
  CHECK(r.failed_property == "schur-concave");
}

TEST_CASE("geometric mean") {
  SUBCASE("A # A = A") {
    const auto a = pd(testing::fixed_a6());
    CHECK(max_diff(geometric_mean(a, a).matrix(), a.matrix()) <= 1e-11);
  }
  SUBCASE("4I # 9I = 6I") {
    const auto g = geometric_mean(pd(linalg::Matrix::identity(4) * 4.0), pd(linalg::Matrix::identity(4) * 9.0));
    CHECK(max_diff(g.matrix(), linalg::Matrix::identity(4) * 6.0) <= 1e-13);
  }
  SUBCASE("commuting diagonals") {
    const auto g = geometric_mean(pd(diag({1, 4, 9, 16})), pd(diag({4, 1, 1, 4})));
    CHECK(max_diff(g.matrix(), diag({2, 2, 3, 8})) <= 1e-13);
  }
  SUBCASE("symmetric in its arguments, polar residual, congruence") {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = rng.uniform_index(1, 5);
      const auto a = symplectic::random_pd_wishart(rng, n);
      const auto b = symplectic::random_pd_wishart(rng, n);
      const auto g = geometric_mean(a, b);
      const double s = linalg::max_abs(g.matrix());
      CHECK(max_diff(g.matrix(), geometric_mean(b, a).matrix()) <= 1e-9 * s);
      CHECK(polar_factor_check(a, b) <= 1e-8);
      const auto m = symplectic::random_symplectic(rng, n);
      const auto gc = geometric_mean(pd(linalg::congruence(a.matrix(), m)),
                                     pd(linalg::congruence(b.matrix(), m)));
      const auto expect = linalg::congruence(g.matrix(), m);
      CHECK(max_diff(gc.matrix(), expect) <= 1e-8 * linalg::max_abs(expect));
    }
  }
  SUBCASE("frozen 6x6 value") {
    // numpy: A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}, then eig(J G)
    const auto g = geometric_mean(pd(testing::fixed_a6()), pd(testing::fixed_b6()));
    CHECK(max_diff(symplectic::symplectic_eigenvalues(g),
                   {2.7111234067050756, 3.669354481286529, 5.604524467559633}) <= 1e-10);
  }
}

TEST_CASE("additive Lidskii") {
  SUBCASE("frozen d(A + B)") {
    const auto s = pd(testing::fixed_a6() + testing::fixed_b6());
    CHECK(max_diff(symplectic::symplectic_eigenvalues(s),
                   {6.022815181706445, 9.354043366814617, 13.60983357645338}) <= 1e-10);
  }
  SUBCASE("every index set on the fixed pair") {
    const auto a = pd(testing::fixed_a6()), b = pd(testing::fixed_b6());
    for (const auto& idx : all_index_sets(3)) {
      for (const auto& r : additive_lidskii_records(a, b, idx, {})) {
        CAPTURE(r.name);
        CHECK_FALSE(r.violated(1e-9));
      }
    }
  }
  SUBCASE("A = B = I: equality") {
    const auto i = pd(linalg::Matrix::identity(6));
    const auto r = find(additive_lidskii_records(i, i, {1, 3}, {}), "lidskii-add");
    CHECK(r.lhs == doctest::Approx(4.0));
    CHECK(r.rhs == doctest::Approx(4.0));
  }
  SUBCASE("seeded suite") {
    for (const auto& r : additive_lidskii_suite(200, 2, 6, 11)) CHECK_FALSE(r.violated(1e-9));
  }
}

TEST_CASE("multiplicative Lidskii") {
  SUBCASE("A = B = I") {
    const auto i = pd(linalg::Matrix::identity(4));
    for (const auto& r : multiplicative_lidskii_records(i, i, {2}, {})) {
      CHECK(r.slack == doctest::Approx(0.0).scale(1.0));
    }
  }
  SUBCASE("scaling B leaves every slack unchanged") {
    const auto a = pd(testing::fixed_a6()), b = pd(testing::fixed_b6());
    const auto r1 = multiplicative_lidskii_records(a, b, {1, 3}, {});
    const auto r2 = multiplicative_lidskii_records(a, pd(testing::fixed_b6() * 1e-3), {1, 3}, {});
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(std::abs(r1[i].slack - r2[i].slack) <= 1e-10);
  }
  SUBCASE("normal forms: the scalar inequalities hold") {
    // A = diag(D1, D1), B = diag(D2, D2) give A # B = diag(sqrt(D1 D2), ...).
    Rng rng(6);
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = rng.uniform_index(1, 5);
      const auto d1 = symplectic::random_spectrum(rng, n, 0.2, 8.0);
      const auto d2 = symplectic::random_spectrum(rng, n, 0.2, 8.0);
      std::vector<double> e2(d2);
      std::shuffle(e2.begin(), e2.end(), std::mt19937_64(rng.next_u64()));
      const auto a = pd(testing::normal_form(d1)), b = pd(testing::normal_form(e2));
      for (const auto& r : multiplicative_lidskii_records(a, b, geometry::random_index_set(n, rng), {})) {
        CAPTURE(r.name);
        CHECK_FALSE(r.violated(1e-9));
      }
    }
  }
  SUBCASE("the prefix and tail product bounds hold on the fixed pair") {
    const auto a = pd(testing::fixed_a6()), b = pd(testing::fixed_b6());
    for (const auto& r : multiplicative_lidskii_records(a, b, {1, 2, 3}, {})) {
      if (r.name.rfind("product-", 0) == 0) CHECK_FALSE(r.violated(1e-9));
    }
  }
  SUBCASE("closed-form counterexample: both sides fail") {
    // A = [[P,0],[0,Q]], P = [[5,4],[4,5]], Q = diag(1,9); B = I.
    // A # I = A^{1/2} = [[R,0],[0,diag(1,3)]], R = [[2,1],[1,2]].
    const auto a = pd(linalg::Matrix{{5, 4, 0, 0}, {4, 5, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 9}});
    const auto b = pd(linalg::Matrix::identity(4));
    const auto g = geometric_mean(a, b);
    CHECK(max_diff(g.matrix(), linalg::Matrix{{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 3}}) <= 1e-13);
    const auto da = symplectic::symplectic_eigenvalues(a);
    const auto dg = symplectic::symplectic_eigenvalues(g);
    // d(A)^2 = 25 -+ 4 sqrt(34), d(A#B)^2 = 4 -+ sqrt(7)
    CHECK(max_diff(da, {1.2946785008714705, 6.9515327503638506}) <= 1e-12);
    CHECK(dg[0] * dg[0] == doctest::Approx(4 - std::sqrt(7.0)).epsilon(1e-12));
    CHECK(dg[1] * dg[1] == doctest::Approx(4 + std::sqrt(7.0)).epsilon(1e-12));

    const auto up = find(multiplicative_lidskii_records(a, b, {1}, {}), "lidskii-mult-upper");
    CHECK(up.lhs == doctest::Approx(1.3542486889354094).epsilon(1e-12));
    CHECK(up.rhs == doctest::Approx(1.2946785008714705).epsilon(1e-12));
    CHECK(up.violated(1e-9));
    const auto lo = find(multiplicative_lidskii_records(a, b, {2}, {}), "lidskii-mult-lower");
    CHECK(lo.lhs == doctest::Approx(6.6457513110645906).epsilon(1e-12));
    CHECK(lo.rhs == doctest::Approx(6.9515327503638506).epsilon(1e-12));
    CHECK(lo.violated(1e-9));
    for (const auto& r : multiplicative_lidskii_records(a, b, {1, 2}, {})) {
      if (r.name.rfind("product-", 0) == 0) CHECK_FALSE(r.violated(1e-9));
    }
  }
  SUBCASE("congruence by the Williamson factor of B changes nothing") {
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = rng.uniform_index(1, 5);
      const auto a = symplectic::random_pd_wishart(rng, n);
      const auto b = symplectic::random_pd_wishart(rng, n);
      CHECK(congruence_reduction_gap(a, b, geometry::random_index_set(n, rng)) <= 1e-8);
    }
  }
  SUBCASE("instances are reproducible") {
    const auto i1 = draw_lidskii_instance(5, "lidskii-mult", 17, 2, 5);
    const auto i2 = draw_lidskii_instance(5, "lidskii-mult", 17, 2, 5);
    CHECK(i1.a == i2.a);
    CHECK(i1.b == i2.b);
    CHECK(i1.index_set == i2.index_set);
    CHECK(i1.digest.trial == 17);
  }
}

TEST_CASE("factor order and square-root order") {
  const auto r = factor_order_spectra(closing_example_factor());
  CHECK(max_diff(r.d_ata, {2, 2}) <= 1e-12);
  CHECK(max_diff(r.d_aat, {1, 4}) <= 1e-12);
  CHECK(r.det_ata == doctest::Approx(16.0));
  CHECK(r.det_aat == doctest::Approx(16.0));
  CHECK(r.max_residual <= 1e-10);

  const auto s = search_sqrt_product_asymmetry(1, 2, 100);
  REQUIRE(s.found);
  CHECK(s.relative_gap > 1e-6);
  CHECK(max_diff(s.d_ab, s.d_ba) > 1e-6);
  // same determinant either way
  CHECK(s.d_ab[0] * s.d_ab[1] == doctest::Approx(s.d_ba[0] * s.d_ba[1]).epsilon(1e-9));
}
