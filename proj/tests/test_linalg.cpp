#include <doctest.h>

#include <cmath>

#include "sympspec/error.hpp"
#include "sympspec/linalg/decompositions.hpp"
#include "sympspec/linalg/subspace.hpp"
#include "sympspec/symplectic/form.hpp"
#include "sympspec/symplectic/generators.hpp"
#include "support.hpp"

using namespace sympspec;
using namespace sympspec::linalg;
using testing::diag;
using testing::max_diff;

TEST_CASE("sym_eig examples") {
  SUBCASE("identity") {
    const auto e = sym_eig(Matrix::identity(3));
    CHECK(max_diff(e.eigenvalues, Vector{1, 1, 1}) <= 1e-15);
    CHECK(max_diff(transpose_times(e.eigenvectors, e.eigenvectors), Matrix::identity(3)) <= 1e-15);
  }
  SUBCASE("constant row sums") {
    const auto e = sym_eig(Matrix{{2, 1}, {1, 2}});
    CHECK(max_diff(e.eigenvalues, Vector{1, 3}) <= 1e-14);
    const Vector q0 = e.eigenvectors.column(0), q1 = e.eigenvectors.column(1);
    CHECK(std::abs(q0[0] + q0[1]) <= 1e-14);  // along (1, -1)
    CHECK(std::abs(q1[0] - q1[1]) <= 1e-14);  // along (1, 1)
  }
  SUBCASE("frozen 6x6 spectrum") {
    // numpy.linalg.eigvalsh
    const Vector ref{1.752974591963653, 1.868794493247863, 3.558484113033984,
                     8.177031762662807, 11.172861580766543, 19.46985345832514};
    CHECK(max_diff(sym_eig(testing::fixed_a6()).eigenvalues, ref) <= 1e-12);
  }
  SUBCASE("non-symmetric input rejected") {
    CHECK_THROWS_AS(sym_eig(Matrix{{1, 2}, {0, 1}}), ValidationError);
  }
}

TEST_CASE("sym_eig residual and orthogonality on random input") {
  Rng rng(5);
  for (std::size_t dim : {8u, 20u, 50u}) {
    const Matrix s = symplectic::random_symmetric(rng, dim);
    const auto e = sym_eig(s);
    CHECK(frobenius_norm(e.reconstruct() - s) <= 1e-12 * frobenius_norm(s) * std::sqrt(dim / 8.0));
    CHECK(max_abs(transpose_times(e.eigenvectors, e.eigenvectors) - Matrix::identity(dim)) <= 1e-12);
    CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
  }
}

TEST_CASE("pd_sqrt_invsqrt") {
  SUBCASE("identity") {
    const auto r = pd_sqrt_invsqrt(Matrix::identity(4));
    CHECK(max_diff(r.sqrt, Matrix::identity(4)) <= 1e-15);
    CHECK(max_diff(r.inv_sqrt, Matrix::identity(4)) <= 1e-15);
  }
  SUBCASE("diagonal") {
    const auto r = pd_sqrt_invsqrt(diag({4, 9}));
    CHECK(max_diff(r.sqrt, diag({2, 3})) <= 1e-14);
    CHECK(max_diff(r.inv_sqrt, diag({0.5, 1.0 / 3.0})) <= 1e-14);
  }
  SUBCASE("squaring and orthogonal congruence") {
    Rng rng(8);
    const Matrix a = symplectic::random_pd_wishart(rng, 3).matrix();
    const auto r = pd_sqrt_invsqrt(a);
    CHECK(frobenius_norm(r.sqrt * r.sqrt - a) <= 1e-11 * frobenius_norm(a));
    CHECK(max_abs(r.sqrt * r.inv_sqrt - Matrix::identity(6)) <= 1e-11);
    const Matrix q = random_orthogonal(6, rng);
    const Matrix rq = pd_sqrt_invsqrt(q * a * q.transpose()).sqrt;
    CHECK(max_abs(rq - q * r.sqrt * q.transpose()) <= 1e-10);
  }
  SUBCASE("indefinite rejected") {
    CHECK_THROWS_AS(pd_sqrt_invsqrt(diag({1, -1})), ValidationError);
  }
}

TEST_CASE("skew_canonical") {
  SUBCASE("J is canonical") {
    const auto f = skew_canonical(symplectic::standard_form(2));
    CHECK(max_diff(f.block_angles, Vector{1, 1}) <= 1e-14);
  }
  SUBCASE("2x2") {
    const auto f = skew_canonical(Matrix{{0, 5}, {-5, 0}});
    CHECK(max_diff(f.block_angles, Vector{5}) <= 1e-14);
    const Matrix k = f.rotation.transpose() * Matrix{{0, 5}, {-5, 0}} * f.rotation;
    CHECK(max_diff(k, Matrix{{0, 5}, {-5, 0}}) <= 1e-13);
  }
  SUBCASE("construction oracle") {
    Rng rng(21);
    const Vector angles{0.3, 1.1, 2.5, 7.0};
    Matrix canon(8, 8);
    for (std::size_t i = 0; i < 4; ++i) {
      canon(i, 4 + i) = angles[i];
      canon(4 + i, i) = -angles[i];
    }
    const Matrix q0 = random_orthogonal(8, rng);
    const Matrix k = q0 * canon * q0.transpose();
    const auto f = skew_canonical(k);
    CHECK(max_diff(f.block_angles, angles) <= 1e-9);
    CHECK(max_abs(f.rotation.transpose() * k * f.rotation - canon) <= 1e-9);
  }
}

TEST_CASE("subspace operations") {
  auto span_e = [](std::initializer_list<std::size_t> idx) {
    std::vector<Vector> v;
    for (auto i : idx) v.push_back(testing::unit(4, i));
    return span_of(v, 4);
  };
  SUBCASE("coordinate intersection") {
    const Subspace s = intersect(span_e({0, 1}), span_e({1, 2}));
    REQUIRE(s.dim() == 1);
    CHECK(s.contains(testing::unit(4, 1)));
  }
  SUBCASE("idempotence") {
    Rng rng(2);
    const Subspace v = random_subspace(7, 3, rng);
    CHECK(intersect(v, v).dim() == 3);
    CHECK(subspace_distance(intersect(v, v), v) <= 1e-10);
  }
  SUBCASE("generic 5 + 5 in R^8") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
      const Subspace a = random_subspace(8, 5, rng), b = random_subspace(8, 5, rng);
      const Subspace c = intersect(a, b);
      CHECK(c.dim() == 2);
      CHECK(a.contains(c));
      CHECK(b.contains(c));
    }
  }
  SUBCASE("dimension bound") {
    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = rng.uniform_index(2, 9);
      const std::size_t da = rng.uniform_index(1, n), db = rng.uniform_index(1, n);
      const Subspace c = intersect(random_subspace(n, da, rng), random_subspace(n, db, rng));
      CHECK(c.dim() + n >= da + db);
    }
  }
  SUBCASE("principal angles") {
    const Vector ang = principal_angles(span_e({0, 1}), span_e({1, 2}));
    REQUIRE(ang.size() == 2);
    CHECK(std::abs(ang[0]) <= 1e-12);
    CHECK(ang[1] == doctest::Approx(M_PI / 2));
  }
  SUBCASE("complement and sum") {
    const Subspace a = span_e({0, 3});
    const Subspace c = orthogonal_complement(a);
    CHECK(c.dim() == 2);
    CHECK(sum(a, c).dim() == 4);
    CHECK(intersect(a, c).dim() == 0);
  }
}

TEST_CASE("svd handles rank deficiency") {
  Matrix a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}, {0, 0, 0}};
  const auto s = svd(a);
  CHECK(s.rank(1e-12) == 2);
  Matrix us(4, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) us(i, j) = s.u(i, j) * s.singular_values[j];
  CHECK(max_abs(us * s.v.transpose() - a) <= 1e-13);
  CHECK(null_space(a).dim() == 1);
}

TEST_CASE("log_det and expm") {
  CHECK(log_det_pd(diag({2, 3, 4})) == doctest::Approx(std::log(24.0)));
  const Matrix e = expm(Matrix{{0, 1}, {-1, 0}});
  CHECK(max_diff(e, Matrix{{std::cos(1.0), std::sin(1.0)}, {-std::sin(1.0), std::cos(1.0)}}) <= 1e-14);
}
