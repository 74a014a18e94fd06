#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "scl/exact.hpp"
#include "scl/partition.hpp"

namespace scl {

/// Hook length formula: n! / prod(hooks).
ExactInt dim_irrep(const Partition& lambda);

/// Murnaghan-Nakayama value chi_lambda(mu) computed by signed rim-hook
/// removal on beta-sets, without a cache. Throws std::invalid_argument if
/// |lambda| != |mu|.
std::int64_t mn_character(const Partition& lambda, const Partition& mu);

/// Full character table of S_n. Built once (single writer) and immutable
/// afterwards, so concurrent reads are safe.
class CharacterTable {
 public:
  explicit CharacterTable(std::uint32_t n);

  std::uint32_t degree() const noexcept { return n_; }
  /// Rows (irreducibles) and columns (classes) share this order.
  const std::vector<Partition>& partitions() const noexcept { return partitions_; }
  std::size_t class_count() const noexcept { return partitions_.size(); }
  /// Throws std::out_of_range for a partition of another n.
  std::size_t index_of(const Partition& p) const;

  std::int64_t value(std::size_t lambda, std::size_t mu) const { return table_[lambda * partitions_.size() + mu]; }
  std::int64_t value(const Partition& lambda, const Partition& mu) const {
    return value(index_of(lambda), index_of(mu));
  }
  const ExactInt& dim(std::size_t lambda) const { return dims_[lambda]; }
  const ExactInt& class_size(std::size_t mu) const { return class_sizes_[mu]; }
  const ExactInt& group_order() const noexcept { return order_; }

  /// sum over lambda of chi_lambda(mu) / dim(lambda)^k, exactly.
  ExactRational character_ratio_sum(std::size_t mu, unsigned k) const;

 private:
  std::uint32_t n_;
  std::vector<Partition> partitions_;
  std::unordered_map<Partition, std::size_t> index_;
  std::vector<std::int64_t> table_;
  std::vector<ExactInt> dims_;
  std::vector<ExactInt> class_sizes_;
  ExactInt order_;
};

/// Process-wide table for S_n, built on first use and shared afterwards.
std::shared_ptr<const CharacterTable> character_table(std::uint32_t n);

/// Largest n for which full tables are built (int64 character storage).
inline constexpr std::uint32_t kMaxCharacterDegree = 30;

ExactInt centralizer_size(const CycleType& mu);
ExactInt class_size(const CycleType& mu);

/// sum over irreducibles of dim^-s.
ExactRational witten_zeta(std::uint32_t n, unsigned s);

/// #Hom(surface group of genus g, S_n) = (n!)^{2g-1} zeta(2g-2). Throws
/// std::logic_error if the character sum is not an integer.
ExactInt hom_count(std::uint32_t n, int g);

/// Number of pairs (a, b) with [a, b] equal to a fixed element of class mu:
/// n! sum chi(mu)/dim.
ExactInt commutator_count(std::uint32_t n, const CycleType& mu);

/// Number of 2g-tuples with [a1,b1]...[ag,bg] equal to a fixed element of
/// class mu: (n!)^{2g-1} sum chi(mu)/dim^{2g-1}. Valid for g >= 1.
ExactInt g_commutator_product_count(std::uint32_t n, int g, const CycleType& mu);

/// Number of (x, y) with x in class k1, y in class k2 and x y equal to a
/// fixed element of class sigma.
ExactInt factorization_count(const CycleType& k1, const CycleType& k2, const CycleType& sigma);

}  // namespace scl
