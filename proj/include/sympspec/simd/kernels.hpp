#pragma once
// Data-parallel inner loops shared by the dense linear algebra.
//
// Each kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant. The variant is chosen once at startup from CPUID; SYMPSPEC_ISA
// (scalar | avx2) overrides the choice. The scalar table is always
// available so the two can be checked against each other.

#include <cstddef>
#include <span>
#include <string_view>

namespace sympspec::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*scale)(double a, double* x, std::size_t n);
  // (x, y) <- (c x - s y, s x + c y)
  void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
  // C[m x n] = A[m x k] * B[k x n], all dense row-major
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const double* a,
               const double* b, double* c);
};

const KernelTable& scalar_kernels();
/// nullptr when the build has no AVX2 translation unit.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();

/// Kernel table currently in use.
const KernelTable& kernels();
Isa active_isa();
/// Switches the active table. Throws if the ISA is unavailable on this CPU.
/// Not meant to be flipped while other threads are computing.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> x, std::span<const double> y) {
  return kernels().dot(x.data(), y.data(), x.size());
}

inline double sum_squares(std::span<const double> x) {
  return kernels().sum_squares(x.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  kernels().axpy(a, x.data(), y.data(), x.size());
}

inline void scale(double a, std::span<double> x) {
  kernels().scale(a, x.data(), x.size());
}

inline void rotate(std::span<double> x, std::span<double> y, double c,
                   double s) {
  kernels().rotate(x.data(), y.data(), c, s, x.size());
}

}  // namespace sympspec::simd
