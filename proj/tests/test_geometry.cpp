#include <doctest.h>

#include <cmath>

#include "sympspec/error.hpp"
#include "sympspec/geometry/basis.hpp"
#include "sympspec/geometry/chains.hpp"
#include "sympspec/symplectic/generators.hpp"
#include "support.hpp"

using namespace sympspec;
using namespace sympspec::geometry;
using testing::max_diff;
using testing::unit;

namespace {

Subspace span_e(std::size_t dim, std::initializer_list<std::size_t> idx) {
  std::vector<Vector> vs;
  for (auto i : idx) vs.push_back(unit(dim, i));
  return linalg::span_of(vs, dim);
}

SymplecticBasis random_basis(Rng& rng, std::size_t n) {
  return SymplecticBasis(symplectic::random_symplectic(rng, n));
}

}  // namespace

TEST_CASE("B-inner product and complement") {
  SUBCASE("standard basis reduces to the Euclidean product") {
    const auto b = SymplecticBasis::standard(3);
    Rng rng(2);
    const Vector x = rng.normal_vector(6), y = rng.normal_vector(6);
    CHECK(b_inner(x, y, b) == doctest::Approx(linalg::dot(x, y)).epsilon(1e-14));
    CHECK(max_diff(b_complement(unit(6, 0), b), unit(6, 3)) == 0.0);
    CHECK(max_diff(b_complement(unit(6, 3), b), linalg::scaled(unit(6, 0), -1.0)) == 0.0);
  }
  SUBCASE("basis vectors are B-orthonormal, x'' = -x") {
    Rng rng(5);
    const auto b = random_basis(rng, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const double delta = i == j ? 1.0 : 0.0;
        CHECK(std::abs(b_inner(b.u(i), b.u(j), b) - delta) <= 1e-9);
        CHECK(std::abs(b_inner(b.v(i), b.v(j), b) - delta) <= 1e-9);
        CHECK(std::abs(b_inner(b.u(i), b.v(j), b)) <= 1e-9);
      }
      CHECK(max_diff(b_complement(b.u(i), b), b.v(i)) <= 1e-9);
    }
    const Vector x = rng.normal_vector(6);
    const Vector xpp = b_complement(b_complement(x, b), b);
    CHECK(max_diff(xpp, linalg::scaled(x, -1.0)) <= 1e-9 * linalg::norm2(x));
    // <x, J x'> = |x|_B^2
    const double bn = b_norm(x, b);
    CHECK(symplectic::symplectic_inner(x, b_complement(x, b)) == doctest::Approx(bn * bn).epsilon(1e-9));
  }
  SUBCASE("non-symplectic columns rejected") {
    CHECK_THROWS_AS(SymplecticBasis(linalg::Matrix::identity(4) * 2.0), ValidationError);
  }
}

TEST_CASE("prime and sharp") {
  const auto b = SymplecticBasis::standard(2);
  SUBCASE("Lagrangian span{u1,u2}") {
    const auto ps = subspace_prime_sharp(span_e(4, {0, 1}), b);
    CHECK(ps.prime.dim() == 2);
    CHECK(ps.prime.contains(unit(4, 2)));
    CHECK(ps.prime.contains(unit(4, 3)));
    CHECK(ps.sharp.dim() == 0);
  }
  SUBCASE("span{u1,v1} is prime-invariant") {
    const auto ps = subspace_prime_sharp(span_e(4, {0, 2}), b);
    CHECK(ps.sharp.dim() == 2);
  }
  SUBCASE("span{u1,u2,v1}") {
    const auto ps = subspace_prime_sharp(span_e(4, {0, 1, 2}), b);
    CHECK(ps.sharp.dim() == 2);
    CHECK(ps.sharp.contains(unit(4, 0)));
    CHECK(ps.sharp.contains(unit(4, 2)));
  }
  SUBCASE("sharp dimension is always even") {
    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = rng.uniform_index(1, 5);
      const auto bb = random_basis(rng, n);
      const auto w = linalg::random_subspace(2 * n, rng.uniform_index(1, 2 * n), rng);
      CHECK(subspace_prime_sharp(w, bb).sharp.dim() % 2 == 0);
    }
  }
}

TEST_CASE("symplectic complement and isotropy") {
  const Subspace all = Subspace::whole(4);
  const Subspace c = symplectic_complement(span_e(4, {0}), all);
  CHECK(c.dim() == 3);
  CHECK(c.contains(unit(4, 0)));
  CHECK(c.contains(unit(4, 1)));
  CHECK(c.contains(unit(4, 3)));
  CHECK_FALSE(c.contains(unit(4, 2)));
  CHECK(is_isotropic(span_e(4, {0, 1})));
  CHECK_FALSE(is_isotropic(span_e(4, {0, 2})));
  CHECK(is_symplectic_subspace(span_e(4, {0, 2})));
  CHECK_FALSE(is_symplectic_subspace(span_e(4, {0, 1})));
  CHECK_THROWS_AS(symplectic_complement(span_e(4, {0}), span_e(4, {0, 1})), ValidationError);
}

TEST_CASE("B-Gram-Schmidt") {
  Rng rng(10);
  const auto b = random_basis(rng, 3);
  std::vector<Vector> vs;
  for (int i = 0; i < 4; ++i) vs.push_back(rng.normal_vector(6));
  const auto q = b_gram_schmidt(vs, b);
  REQUIRE(q.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(std::abs(b_inner(q[i], q[j], b) - (i == j ? 1.0 : 0.0)) <= 1e-9);
    }
  }
  const auto s0 = linalg::span_of(vs, 6), s1 = linalg::span_of(q, 6);
  CHECK(linalg::subspace_distance(s0, s1) <= 1e-9);
  // first vector keeps its direction
  CHECK(std::abs(std::abs(linalg::dot(linalg::normalized(vs[0]), linalg::normalized(q[0]))) - 1.0) <= 1e-12);
}

TEST_CASE("canonical chains") {
  const auto b = SymplecticBasis::standard(4);
  const auto dec = canonical_decreasing_chain(b, {1, 3});
  dec.validate();
  CHECK(dec.subspaces[0].dim() == 8);
  CHECK(dec.subspaces[1].dim() == 6);
  CHECK_FALSE(dec.subspaces[1].contains(unit(8, 4)));
  CHECK(dec.subspaces[1].contains(unit(8, 6)));
  const auto inc = canonical_increasing_chain(b, {1, 3});
  inc.validate();
  CHECK(inc.subspaces[0].dim() == 5);
  CHECK(inc.subspaces[1].dim() == 7);
  CHECK_THROWS_AS(validate_index_set({2, 2}, 4), ValidationError);
  CHECK_THROWS_AS(validate_index_set({0}, 4), ValidationError);
  CHECK_THROWS_AS(validate_index_set({5}, 4), ValidationError);
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = rng.uniform_index(1, 6);
    const auto idx = random_index_set(n, rng);
    random_decreasing_chain(n, idx, rng).validate();
    random_increasing_chain(n, idx, rng).validate();
  }
}

TEST_CASE("chain_extend") {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = rng.uniform_index(2, 6);
    const auto b = random_basis(rng, n);
    const std::size_t k = rng.uniform_index(1, n);
    // random decreasing chain with dim W_j = n + k - j + 1
    std::vector<Subspace> chain{linalg::random_subspace(2 * n, n + k, rng)};
    for (std::size_t j = 1; j < k; ++j) {
      const Subspace& prev = chain.back();
      const Subspace sub = linalg::random_subspace(prev.dim(), prev.dim() - 1, rng);
      chain.push_back(Subspace::from_orthonormal(prev.basis() * sub.basis()));
    }
    // The w's for the k-step call come from running the shorter prefixes.
    std::vector<Vector> ws;
    for (std::size_t m = 1; m < k; ++m) {
      ws = chain_extend(std::vector<Subspace>(chain.begin(), chain.begin() + m), ws, b, rng).vs;
    }
    const auto ext = chain_extend(chain, ws, b, rng);
    CHECK(in_sharp(ext.v, chain[0], b));
    CHECK(std::abs(b_norm(ext.v, b) - 1.0) <= 1e-9);
    for (const auto& w : ws) CHECK(std::abs(symplectic::symplectic_inner(w, ext.v)) <= 1e-9);
    REQUIRE(ext.vs.size() == k);
    for (std::size_t j = 0; j < k; ++j) CHECK(in_sharp(ext.vs[j], chain[j], b));
    CHECK(b_orthosymplectic_defect(ext.vs, b) <= 1e-9);
  }
  SUBCASE("preconditions") {
    Rng r2(3);
    const auto b = SymplecticBasis::standard(2);
    CHECK_THROWS_AS(chain_extend({}, {}, b, r2), ValidationError);
    CHECK_THROWS_AS(chain_extend({span_e(4, {0, 1})}, {}, b, r2), ValidationError);
  }
}

TEST_CASE("dual chain construction") {
  SUBCASE("canonical chains, full index set, standard basis") {
    const std::size_t n = 3;
    const auto b = SymplecticBasis::standard(n);
    const std::vector<std::size_t> idx{1, 2, 3};
    Rng rng(4);
    const auto res = dual_chain_construct(canonical_increasing_chain(b, idx),
                                          canonical_decreasing_chain(b, idx), b, rng);
    REQUIRE(res.v.size() == 3);
    CHECK(res.v_defect <= 1e-9);
    CHECK(res.w_defect <= 1e-9);
    // the span of the 2n vectors is everything
    auto all = res.v;
    for (const auto& x : res.v) all.push_back(b_complement(x, b));
    CHECK(linalg::span_of(all, 2 * n).dim() == 2 * n);
  }
  SUBCASE("random chains and eigenbases") {
    Rng rng(77);
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = rng.uniform_index(1, 6);
      const auto idx = random_index_set(n, rng);
      const auto a = symplectic::random_pd_wishart(rng, n);
      const SymplecticBasis b(symplectic::williamson(a).m);
      const auto res = dual_chain_construct(random_increasing_chain(n, idx, rng),
                                            random_decreasing_chain(n, idx, rng), b, rng);
      CHECK(res.v_defect <= 1e-8);
      CHECK(res.w_defect <= 1e-8);
      CHECK(res.span_angle <= 1e-8);
      CHECK(res.membership <= 1e-8);
      const auto tc = same_span_trace_check(a.matrix(), complement_tuple(res.w, b),
                                            complement_tuple(res.v, b), b);
      CHECK(tc.relative_gap() <= 1e-9);
    }
  }
}

TEST_CASE("same-span trace equality, direct example") {
  // A = diag(1,2,1,2): B = standard basis is an eigenbasis. X rotates the
  // pair (e1, e3) inside span{e1,e3}; traces over it stay 2 * 1.
  const auto b = SymplecticBasis::standard(2);
  const double c = std::cos(0.3), s = std::sin(0.3);
  const Vector x{c, 0, s, 0};
  const auto tx = complement_tuple({x}, b);
  const auto tv = complement_tuple({unit(4, 0)}, b);
  const auto tc = same_span_trace_check(testing::diag({1, 2, 1, 2}), tx, tv, b);
  CHECK(tc.lhs == doctest::Approx(2.0));
  CHECK(tc.rhs == doctest::Approx(2.0));
  CHECK(tc.relative_gap() <= 1e-14);
}
