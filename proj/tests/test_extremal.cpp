#include <doctest.h>

#include <cmath>

#include "sympspec/error.hpp"
#include "sympspec/extremal/extremal.hpp"
#include "sympspec/symplectic/generators.hpp"
#include "support.hpp"

using namespace sympspec;
using namespace sympspec::extremal;
using testing::diag;
using testing::max_diff;
using testing::pd;

namespace {

ExtremalOptions small_opts() {
  ExtremalOptions o;
  o.samples = 60;
  o.chains = 20;
  return o;
}

}  // namespace

TEST_CASE("functionals") {
  const std::vector<double> x{1, 2, 3};
  CHECK(phi_sum()(x) == 6.0);
  CHECK(phi_product()(x) == 6.0);
  CHECK(phi_min()(x) == 1.0);
  CHECK(phi_elementary(2)(x) == 11.0);
  CHECK(phi_elementary(4)(x) == 0.0);
  CHECK(functional_by_name("e3")(x) == 6.0);
  CHECK(functional_by_name("min").name == "min");
  CHECK_THROWS_AS(functional_by_name("max"), ValidationError);
  CHECK(shipped_functionals().size() == 5);
}

TEST_CASE("poincare witness") {
  const auto a = pd(diag({1, 2, 3, 1, 2, 3}));
  const auto w = symplectic::williamson(a);
  Rng rng(5);
  for (std::size_t k = 1; k <= 3; ++k) {
    for (int t = 0; t < 10; ++t) {
      const auto m = linalg::random_subspace(6, 6 - k + 1, rng);
      const auto pw = poincare_witness(a, m, w, rng);
      CHECK(std::abs(symplectic::symplectic_inner(pw.u, pw.v) - 1.0) <= 1e-9);
      CHECK(m.contains(pw.u));
      CHECK(m.contains(pw.v));
      CHECK(pw.value <= w.d[k - 1] * (1 + 1e-9));
    }
  }
}

TEST_CASE("maxmin examples") {
  Rng rng(1);
  SUBCASE("identity") {
    const auto c = maxmin_check(pd(linalg::Matrix::identity(6)), 2, rng, small_opts());
    CHECK(c.claimed_value == doctest::Approx(1.0));
    CHECK(c.passed());
  }
  SUBCASE("diag(1,2,3,4), k = 2") {
    const auto c = maxmin_check(pd(diag({1, 2, 3, 4})), 2, rng, small_opts());
    CHECK(c.claimed_value == doctest::Approx(std::sqrt(8.0)));
    CHECK(c.equality_gap <= 1e-10);
    CHECK(c.slack >= -1e-9);
    CHECK(c.upper_slack >= -1e-9);
    CHECK(c.passed());
  }
  SUBCASE("k out of range") {
    CHECK_THROWS_AS(maxmin_check(pd(diag({1, 2, 3, 4})), 3, rng), ValidationError);
    CHECK_THROWS_AS(maxmin_check(pd(diag({1, 2, 3, 4})), 0, rng), ValidationError);
  }
}

TEST_CASE("wielandt examples") {
  Rng rng(2);
  const auto a = pd(testing::fixed_a6());
  const auto c = wielandt_certify(a, {1, 3}, rng, small_opts());
  CHECK(c.claimed_value == doctest::Approx(2.424438737638331 + 9.284034017603963).epsilon(1e-12));
  CHECK(c.passed());
  CHECK(c.witnesses > 0);
  CHECK(c.failed_witnesses == 0);
  CHECK_THROWS_AS(wielandt_certify(a, {2, 2}, rng), ValidationError);
}

TEST_CASE("sampled tuples live in the chain") {
  Rng rng(3);
  const auto a = symplectic::random_pd_wishart(rng, 4);
  const auto w = symplectic::williamson(a);
  const geometry::SymplecticBasis b(w.m);
  const std::vector<std::size_t> idx{2, 4};
  const auto chain = geometry::canonical_decreasing_chain(b, idx);
  for (int t = 0; t < 20; ++t) {
    const auto s = sample_tuple_in_chain(chain, rng);
    REQUIRE(s.tuple.has_value());
    const auto& tup = *s.tuple;
    CHECK(tup.size() == 2);
    CHECK(tup.defect() <= 1e-9);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(chain.subspaces[j].contains(tup.x[j]));
      CHECK(chain.subspaces[j].contains(tup.y[j]));
      // pairs come back balanced
      CHECK(linalg::norm2(tup.x[j]) == doctest::Approx(linalg::norm2(tup.y[j])).epsilon(1e-12));
    }
  }
  const auto eig = eigen_tuple(w, idx);
  CHECK(eig.half_trace_sum(a.matrix()) == doctest::Approx(w.d[1] + w.d[3]).epsilon(1e-10));
}

TEST_CASE("phi and determinant examples") {
  Rng rng(4);
  const auto a = pd(diag({1, 2, 3, 4}));
  SUBCASE("det on diag(1,2,3,4), index set {1}") {
    const auto c = det_product_check(a, {1}, rng, small_opts());
    CHECK(c.claimed_value == doctest::Approx(3.0));
  }
  SUBCASE("sum agrees with the Wielandt value, product squared with det") {
    const auto b = pd(testing::fixed_a6());
    for (const auto& idx : {std::vector<std::size_t>{1}, {2, 3}, {1, 2, 3}}) {
      const double s = phi_extremal_check(b, idx, phi_sum(), rng, small_opts()).claimed_value;
      const double wv = wielandt_certify(b, idx, rng, small_opts()).claimed_value;
      CHECK(s == doctest::Approx(wv).epsilon(1e-12));
      const double p = phi_extremal_check(b, idx, phi_product(), rng, small_opts()).claimed_value;
      const double d = det_product_check(b, idx, rng, small_opts()).claimed_value;
      CHECK(p * p == doctest::Approx(d).epsilon(1e-10));
    }
  }
  SUBCASE("min value holds") {
    const auto c = phi_extremal_check(pd(testing::fixed_a6()), {1, 3}, phi_min(), rng, small_opts());
    CHECK(c.claimed_value == doctest::Approx(2.424438737638331));
    // The min value itself holds. The certificate can still carry an
    // elementwise domination violation (see the fixed tuple below).
    CHECK(c.slack >= -1e-9 * c.claimed_value);
    CHECK(c.equality_gap <= 1e-10);
    CHECK(c.upper_slack >= -1e-9 * c.claimed_value);
  }
  SUBCASE("non-admissible phi is rejected") {
    SpectralFunctional bad = phi_sum();
    bad.schur_concave = false;
    CHECK_THROWS_AS(phi_extremal_check(a, {1}, bad, rng), ValidationError);
  }
}

TEST_CASE("elementwise domination fails on a fixed tuple") {
  // A = diag(1,2,3,1,2,3), index set {1,3}: the tuple below lies in the
  // canonical chain M_1 = R^6, M_2 = span{u1,u2,u3,v3}, yet the second
  // symplectic eigenvalue of the compression is below d_3 = 3.
  const auto a = pd(diag({1, 2, 3, 1, 2, 3}));
  symplectic::SymplecticTupleSet t;
  t.x = {{1, -1, -1, -1, -1, 1}, {1, 0, 0, 0, 0, 1}};
  t.y = {{0.5, 0.5, 0, 0, -0.5, 0.5}, {0, -1, -1, 0, 0, 0}};
  CHECK(t.defect() <= 1e-15);
  const auto chain = geometry::canonical_decreasing_chain(geometry::SymplecticBasis::standard(3), {1, 3});
  CHECK(chain.subspaces[1].contains(t.x[1]));
  CHECK(chain.subspaces[1].contains(t.y[1]));
  const auto c = symplectic::compress(a, t);
  CHECK(max_diff(c.a_m, linalg::Matrix{{12, 4, 2, 5}, {4, 4, 2, 0}, {2, 2, 2, -1}, {5, 0, -1, 5}}) <= 1e-14);
  // roots of t^4 + 12 t^2 + 28
  CHECK(max_diff(c.d_m, {1.7808910340764282, 2.9712669225006006}) <= 1e-12);
  CHECK(c.d_m[1] < 3.0 - 1e-2);
  // d_1 = 1 is still dominated, and det(A_M) = 28 >= (1 * 3)^2
  CHECK(c.d_m[0] >= 1.0);
  CHECK(std::exp(c.log_det) == doctest::Approx(28.0));
}

TEST_CASE("random instances: maxmin and Wielandt certificates pass") {
  Rng rng(99);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = rng.uniform_index(1, 4);
    const auto a = symplectic::random_pd_wishart(rng, n);
    const std::size_t k = rng.uniform_index(1, n);
    const auto mm = maxmin_check(a, k, rng, small_opts());
    CHECK(mm.passed());
    const auto idx = geometry::random_index_set(n, rng);
    const auto wc = wielandt_certify(a, idx, rng, small_opts());
    CHECK(wc.passed());
  }
}

TEST_CASE("full index set: every compression is the whole space") {
  // d~ = d exactly here, so any reported violation would be rounding.
  Rng rng(60);
  for (int t = 0; t < 4; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(t);
    const auto a = symplectic::random_pd_wishart(rng, n);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i + 1;
    for (const auto& phi : {phi_min(), phi_sum(), phi_product()}) {
      const auto c = phi_extremal_check(a, idx, phi, rng, small_opts());
      CHECK(c.passed());
      CHECK(c.sampled_min == doctest::Approx(c.claimed_value).epsilon(1e-8));
    }
    CHECK(det_product_check(a, idx, rng, small_opts()).passed());
  }
}

TEST_CASE("determinant bound fails on a fixed tuple") {
  // Same A and index set. The pair (x2, y2) = (u2 + u3/4, 16 u1 + 4 v3) lies
  // in M_2; the span tilts toward span{u1, u2, v1, v2} as the 1/4 shrinks and
  // det(A_M) = 2 (1 + 3 e^2)(2 + 3 e^2) -> 4 < (d1 d3)^2 = 9.
  const auto a = pd(diag({1, 2, 3, 1, 2, 3}));
  symplectic::SymplecticTupleSet t;
  t.x = {{0, 16, 4, 1, 0, 0}, {0, 1, 0.25, 0, 0, 0}};
  t.y = {{-1, 0, 0, 0, 0.0625, -0.25}, {16, 0, 0, 0, 0, 4}};
  CHECK(t.defect() == 0.0);
  const auto chain = geometry::canonical_decreasing_chain(geometry::SymplecticBasis::standard(3), {1, 3});
  CHECK(chain.subspaces[1].contains(t.x[1]));
  CHECK(chain.subspaces[1].contains(t.y[1]));
  const auto c = symplectic::compress(a, t);
  CHECK(max_diff(c.a_m, linalg::Matrix{{561, 35, 0, 0}, {35, 35.0 / 16, 0, 0},
                                       {0, 0, 153.0 / 128, -19}, {0, 0, -19, 304}}) <= 1e-12);
  // A_M has condition ~1e5, hence 1e-10 rather than 1e-12 below.
  CHECK(std::exp(c.log_det) == doctest::Approx(665.0 / 128).epsilon(1e-10));
  // roots of 128 t^4 + 713 t^2 + 665
  CHECK(max_diff(c.d_m, {1.0883929485397006, 2.0942094664978135}) <= 1e-10);
  CHECK(std::exp(c.log_det) < 9.0 - 1.0);
  CHECK(c.d_m[0] * c.d_m[1] < 3.0);
  CHECK(c.d_m[0] + c.d_m[1] < 4.0);
  CHECK(c.d_m[0] >= 1.0);  // min still holds
}
