#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "sympspec/random.hpp"
#include "sympspec/simd/kernels.hpp"

using namespace sympspec;

namespace {

std::vector<double> draw(Rng& rng, std::size_t n) { return rng.normal_vector(n); }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("avx2 kernels match the scalar reference") {
  const simd::KernelTable* v = simd::avx2_kernels();
  if (v == nullptr || !simd::cpu_supports_avx2()) {
    MESSAGE("no AVX2 on this build/CPU; equivalence not exercised");
    return;
  }
  const simd::KernelTable& s = simd::scalar_kernels();
  CHECK(v->isa == simd::Isa::Avx2);
  Rng rng(11);
  // Lengths straddling the 4-wide and 8-wide unrolls and their tails.
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 101u}) {
    CAPTURE(n);
    auto x = draw(rng, n), y = draw(rng, n);
    CHECK(rel(v->dot(x.data(), y.data(), n), s.dot(x.data(), y.data(), n)) <= 1e-13);
    CHECK(rel(v->sum_squares(x.data(), n), s.sum_squares(x.data(), n)) <= 1e-13);

    auto y1 = y, y2 = y;
    s.axpy(0.37, x.data(), y1.data(), n);
    v->axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(y2[i], y1[i]) <= 1e-15);

    auto x1 = x, x2 = x;
    s.scale(-1.7, x1.data(), n);
    v->scale(-1.7, x2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(x2[i] == x1[i]);

    auto a1 = x, b1 = y, a2 = x, b2 = y;
    const double c = std::cos(0.3), sn = std::sin(0.3);
    s.rotate(a1.data(), b1.data(), c, sn, n);
    v->rotate(a2.data(), b2.data(), c, sn, n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(rel(a2[i], a1[i]) <= 1e-15);
      CHECK(rel(b2[i], b1[i]) <= 1e-15);
    }
  }
  const std::size_t shapes[][3] = {{1, 1, 1}, {3, 5, 7}, {8, 8, 8}, {13, 9, 17}, {2, 33, 4}};
  for (const auto& [m, n, k] : shapes) {
    CAPTURE(m);
    CAPTURE(n);
    CAPTURE(k);
    auto a = draw(rng, m * k), b = draw(rng, k * n);
    std::vector<double> c1(m * n), c2(m * n);
    s.gemm(m, n, k, a.data(), b.data(), c1.data());
    v->gemm(m, n, k, a.data(), b.data(), c2.data());
    for (std::size_t i = 0; i < m * n; ++i) CHECK(rel(c2[i], c1[i]) <= 1e-13);
  }
}

TEST_CASE("isa switch round-trips") {
  const simd::Isa before = simd::active_isa();
  simd::set_isa(simd::Isa::Scalar);
  CHECK(simd::active_isa() == simd::Isa::Scalar);
  CHECK(simd::isa_name(simd::Isa::Scalar) == "scalar");
  const std::vector<double> x{1, 2, 3, 4, 5}, y{5, 4, 3, 2, 1};
  CHECK(simd::dot(x, y) == doctest::Approx(35.0));
  if (simd::avx2_kernels() && simd::cpu_supports_avx2()) {
    simd::set_isa(simd::Isa::Avx2);
    CHECK(simd::dot(x, y) == doctest::Approx(35.0));
  }
  simd::set_isa(before);
}
