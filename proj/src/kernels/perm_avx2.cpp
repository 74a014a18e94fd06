// Compiled with -mavx2; only reached through the runtime dispatcher.

#include <immintrin.h>

#include "scl/kernels.hpp"

namespace scl::kernels::avx2 {

void compose(std::span<const point_t> p, std::span<const point_t> q, std::span<point_t> out) {
  const std::size_t n = p.size();
  const auto* base = reinterpret_cast<const int*>(q.data());
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p.data() + i));
    const __m256i gathered = _mm256_i32gather_epi32(base, idx, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), gathered);
  }
  for (; i < n; ++i) out[i] = q[p[i]];
}

namespace {

inline __m256i lane_iota(std::size_t start) {
  const auto s = static_cast<int>(start);
  return _mm256_setr_epi32(s, s + 1, s + 2, s + 3, s + 4, s + 5, s + 6, s + 7);
}

}  // namespace

std::size_t fix_count(std::span<const point_t> p) {
  const std::size_t n = p.size();
  const __m256i step = _mm256_set1_epi32(8);
  __m256i iota = lane_iota(0);
  std::size_t fixed = 0, i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p.data() + i));
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(v, iota)));
    fixed += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    iota = _mm256_add_epi32(iota, step);
  }
  for (; i < n; ++i) fixed += (p[i] == i);
  return fixed;
}

bool is_identity(std::span<const point_t> p) {
  const std::size_t n = p.size();
  const __m256i step = _mm256_set1_epi32(8);
  __m256i iota = lane_iota(0);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p.data() + i));
    if (_mm256_movemask_epi8(_mm256_cmpeq_epi32(v, iota)) != -1) return false;
    iota = _mm256_add_epi32(iota, step);
  }
  for (; i < n; ++i)
    if (p[i] != i) return false;
  return true;
}

}  // namespace scl::kernels::avx2
