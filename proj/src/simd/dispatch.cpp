#include <atomic>
#include <cstdlib>
#include <string>

#include "sympspec/error.hpp"
#include "sympspec/simd/kernels.hpp"

namespace sympspec::simd {
namespace {

const KernelTable* initial_table() {
  if (const char* env = std::getenv("SYMPSPEC_ISA")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && cpu_supports_avx2()) return avx2_kernels();
  }
  if (cpu_supports_avx2()) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

bool cpu_supports_avx2() {
  if (avx2_kernels() == nullptr) return false;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& kernels() {
  return *active().load(std::memory_order_relaxed);
}

Isa active_isa() { return kernels().isa; }

void set_isa(Isa isa) {
  if (isa == Isa::Scalar) {
    active().store(&scalar_kernels());
    return;
  }
  if (!cpu_supports_avx2()) {
    throw Error("AVX2 kernels are not available on this machine");
  }
  active().store(avx2_kernels());
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

}  // namespace sympspec::simd
