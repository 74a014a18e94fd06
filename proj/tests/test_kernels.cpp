#include <cstdlib>
#include <numeric>
#include <random>

#include <stdexcept>

#include "doctest.h"
#include "scl/kernels.hpp"
#include "test_support.hpp"

using namespace scl;

namespace {

void check_equivalent(const kernels::KernelSet& a, const kernels::KernelSet& b) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 0; n <= 70; ++n) {
    for (int t = 0; t < 20; ++t) {
      const auto p = testing::random_permutation(rng, n), q = testing::random_permutation(rng, n);
      std::vector<point_t> pv(p.images().begin(), p.images().end()), qv(q.images().begin(), q.images().end());
      // Plant some fixed points so fix_count is exercised away from zero.
      for (std::size_t i = 0; i + 1 < n && t % 3 == 0; i += 5)
        if (pv[i] != i) {
          const auto j = std::find(pv.begin(), pv.end(), static_cast<point_t>(i)) - pv.begin();
          std::swap(pv[i], pv[static_cast<std::size_t>(j)]);
        }
      std::vector<point_t> ra(n), rb(n);
      a.compose(pv, qv, ra);
      b.compose(pv, qv, rb);
      CHECK(ra == rb);
      CHECK(a.fix_count(pv) == b.fix_count(pv));
      CHECK(a.is_identity(pv) == b.is_identity(pv));
      std::vector<point_t> id(n);
      std::iota(id.begin(), id.end(), point_t{0});
      CHECK(a.is_identity(id));
      CHECK(b.is_identity(id));
      CHECK(b.fix_count(id) == n);
      if (n > 0) {
        auto almost = id;
        std::swap(almost[n - 1], almost[0]);
        CHECK(a.is_identity(almost) == b.is_identity(almost));
      }
    }
  }
}

}  // namespace

TEST_CASE("scalar kernels") {
  const auto& s = kernels::scalar_kernels();
  std::vector<point_t> p{1, 2, 0, 3}, q{0, 1, 3, 2}, out(4);
  s.compose(p, q, out);
  CHECK(out == std::vector<point_t>{1, 3, 0, 2});
  CHECK(s.fix_count(p) == 1);
  CHECK_FALSE(s.is_identity(p));
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const auto* avx = kernels::avx2_kernels();
  if (!avx) {
    MESSAGE("AVX2 not available on this machine; equivalence test skipped");
    return;
  }
  check_equivalent(kernels::scalar_kernels(), *avx);
}

TEST_CASE("active kernel set is one of the known sets") {
  const auto& k = kernels::active();
  CHECK((k.name == "scalar" || k.name == "avx2"));
  if (const char* force = std::getenv("SCL_SIMD"); force && std::string_view(force) == "scalar")
    CHECK(k.name == "scalar");
  check_equivalent(kernels::scalar_kernels(), k);
}
