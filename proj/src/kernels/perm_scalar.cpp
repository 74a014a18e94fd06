#include "scl/kernels.hpp"

namespace scl::kernels::scalar {

void compose(std::span<const point_t> p, std::span<const point_t> q, std::span<point_t> out) {
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = q[p[i]];
}

std::size_t fix_count(std::span<const point_t> p) {
  std::size_t fixed = 0;
  for (std::size_t i = 0; i < p.size(); ++i) fixed += (p[i] == i);
  return fixed;
}

bool is_identity(std::span<const point_t> p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

}  // namespace scl::kernels::scalar
