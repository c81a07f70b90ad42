#include "sympspec/simd/kernels.hpp"

namespace sympspec::simd {

const KernelTable* avx2_kernels() { return nullptr; }

}  // namespace sympspec::simd
