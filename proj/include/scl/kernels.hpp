#pragma once

// Inner loops of permutation arithmetic. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant; the active set is chosen
// once at runtime from CPUID. Setting SCL_SIMD=scalar forces the reference
// kernels.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace scl {
using point_t = std::uint32_t;
}

namespace scl::kernels {

/// out[i] = q[p[i]] (apply p, then q). All spans have equal length and
/// out must not alias q.
using ComposeFn = void (*)(std::span<const point_t> p, std::span<const point_t> q, std::span<point_t> out);
/// Number of i with p[i] == i.
using FixCountFn = std::size_t (*)(std::span<const point_t> p);
/// Whether p[i] == i for all i.
using IsIdentityFn = bool (*)(std::span<const point_t> p);

struct KernelSet {
  std::string_view name;
  ComposeFn compose;
  FixCountFn fix_count;
  IsIdentityFn is_identity;
};

namespace scalar {
void compose(std::span<const point_t> p, std::span<const point_t> q, std::span<point_t> out);
std::size_t fix_count(std::span<const point_t> p);
bool is_identity(std::span<const point_t> p);
}  // namespace scalar

const KernelSet& scalar_kernels() noexcept;
/// nullptr when the AVX2 translation unit is not built or the CPU lacks AVX2.
const KernelSet* avx2_kernels() noexcept;
/// Selected once per process.
const KernelSet& active() noexcept;

}  // namespace scl::kernels
