#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace scl {

/// Integer partition with parts stored weakly decreasing. Doubles as the
/// cycle type of a permutation.
class Partition {
 public:
  Partition() = default;
  /// Sorts the parts into weakly decreasing order; throws
  /// std::invalid_argument on a zero part.
  explicit Partition(std::vector<std::uint32_t> parts);
  Partition(std::initializer_list<std::uint32_t> parts)
      : Partition(std::vector<std::uint32_t>(parts)) {}

  std::span<const std::uint32_t> parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  std::uint32_t size() const noexcept { return n_; }
  std::uint32_t operator[](std::size_t i) const { return parts_[i]; }

  /// Multiplicity of part k.
  std::uint32_t multiplicity(std::uint32_t k) const noexcept;
  /// +1 for even permutations of this cycle type, -1 otherwise.
  int sign() const noexcept;
  bool is_identity_class() const noexcept;

  /// "(3,1,1)"; the empty partition is "()".
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> parts_;
  std::uint32_t n_ = 0;
};

using CycleType = Partition;

/// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ...,
/// (1^n). n = 0 yields the single empty partition.
std::vector<Partition> partitions(std::uint32_t n);

}  // namespace scl

template <>
struct std::hash<scl::Partition> {
  std::size_t operator()(const scl::Partition& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto part : p.parts()) h = (h ^ part) * 0x100000001b3ull;
    return h;
  }
};
