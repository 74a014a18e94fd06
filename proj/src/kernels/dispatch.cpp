#include <cstdlib>
#include <string_view>

#include "scl/kernels.hpp"

namespace scl::kernels {

#if defined(SCL_HAVE_AVX2_TU)
namespace avx2 {
void compose(std::span<const point_t> p, std::span<const point_t> q, std::span<point_t> out);
std::size_t fix_count(std::span<const point_t> p);
bool is_identity(std::span<const point_t> p);
}  // namespace avx2
#endif

const KernelSet& scalar_kernels() noexcept {
  static const KernelSet set{"scalar", &scalar::compose, &scalar::fix_count, &scalar::is_identity};
  return set;
}

const KernelSet* avx2_kernels() noexcept {
#if defined(SCL_HAVE_AVX2_TU)
  static const KernelSet set{"avx2", &avx2::compose, &avx2::fix_count, &avx2::is_identity};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &set : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() noexcept {
  static const KernelSet& chosen = [] () -> const KernelSet& {
    const char* force = std::getenv("SCL_SIMD");
    if (force && std::string_view(force) == "scalar") return scalar_kernels();
    if (const KernelSet* simd = avx2_kernels()) return *simd;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace scl::kernels
