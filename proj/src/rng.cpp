#include "scl/rng.hpp"

#include <stdexcept>
#include <vector>

namespace scl {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(Seed seed) : key_(mix64(seed.value ^ mix64(seed.stream * kGolden + 0x632be59bd9b4e019ull))) {}

CounterRng::result_type CounterRng::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

ExactInt CounterRng::below(const ExactInt& bound) {
  if (bound <= 0) throw std::invalid_argument("CounterRng::below: bound must be positive");
  if (bound.fits_ulong_p()) return ExactInt(below(static_cast<std::uint64_t>(bound.get_ui())));
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask = top_bits == 64 ? ~0ull : ((1ull << top_bits) - 1);
  std::vector<std::uint64_t> limbs(words);
  ExactInt candidate;
  do {
    for (auto& w : limbs) w = (*this)();
    limbs.back() &= top_mask;
    // Least significant word first, native endianness within each word.
    mpz_import(candidate.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, limbs.data());
  } while (candidate >= bound);
  return candidate;
}

}  // namespace scl
