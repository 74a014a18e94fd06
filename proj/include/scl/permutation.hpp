#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scl/kernels.hpp"
#include "scl/partition.hpp"
#include "scl/word.hpp"

namespace scl {

/// Bijection of {0, ..., n-1} stored as its image array. Products compose
/// left to right: (p * q)(i) = q(p(i)).
class Permutation {
 public:
  Permutation() = default;
  /// Identity on n points.
  explicit Permutation(std::size_t n);
  /// Throws std::invalid_argument unless `images` is a bijection of [0, n).
  explicit Permutation(std::vector<point_t> images);

  static Permutation identity(std::size_t n) { return Permutation(n); }
  /// Builds from 0-based disjoint cycles; unlisted points are fixed.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<point_t>>& cycles);

  std::size_t size() const noexcept { return map_.size(); }
  point_t operator[](std::size_t i) const { return map_[i]; }
  point_t operator()(std::size_t i) const { return map_[i]; }
  std::span<const point_t> images() const noexcept { return map_; }

  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  friend class PermutationBuilder;
  std::vector<point_t> map_;
};

/// i -> q(p(i)). Throws std::invalid_argument on size mismatch.
Permutation compose(const Permutation& p, const Permutation& q);
/// Writes compose(p, q) into out, reusing its storage. out must not be q.
void compose_into(const Permutation& p, const Permutation& q, Permutation& out);
Permutation inverse(const Permutation& p);
void inverse_into(const Permutation& p, Permutation& out);
/// by^-1 * p * by; maps by(x) to by(p(x)).
Permutation conjugate(const Permutation& p, const Permutation& by);
/// a^-1 b^-1 a b, in the same orientation as evaluating the word a' b' a b.
Permutation commutator(const Permutation& a, const Permutation& b);
/// p^k for k >= 0.
Permutation power(const Permutation& p, std::uint64_t k);

CycleType cycle_type(const Permutation& p);
std::size_t fix_count(const Permutation& p);
/// Number of d-cycles; throws std::out_of_range unless 1 <= d <= n.
std::size_t d_cycle_count(const Permutation& p, std::size_t d);
/// Counts of cycles per length; entry d holds the number of d-cycles.
std::vector<std::uint32_t> cycle_counts(const Permutation& p);

/// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; identity is "()".
std::string to_cycle_string(const Permutation& p);
/// Parses the 1-based cycle notation above into S_n.
Permutation parse_cycles(std::string_view text, std::size_t n);

/// Raw-array access for hot loops that manage their own storage.
class PermutationBuilder {
 public:
  static std::vector<point_t>& storage(Permutation& p) noexcept { return p.map_; }
  /// Wraps an array already known to be a bijection.
  static Permutation adopt(std::vector<point_t> images) noexcept {
    Permutation p;
    p.map_ = std::move(images);
    return p;
  }
};

/// Images of a_1, b_1, ..., a_g, b_g under a homomorphism from the surface
/// group to S_n, together with their inverses.
class HomPoint {
 public:
  /// Throws std::invalid_argument on a wrong image count, mixed sizes, or
  /// if the relator does not evaluate to the identity.
  HomPoint(Genus genus, std::vector<Permutation> images);

  /// Unvalidated storage for enumeration/sampling loops; callers fill the
  /// images through `set` and must uphold the relator.
  static HomPoint scratch(Genus genus, std::size_t n);
  void set(std::size_t generator, const Permutation& image);
  void set(std::size_t generator, std::span<const point_t> image);
  void set(std::size_t generator, std::span<const point_t> image, std::span<const point_t> inverse_image);

  Genus genus() const noexcept { return genus_; }
  std::size_t degree() const noexcept { return n_; }
  const Permutation& image(std::size_t generator) const { return images_[generator]; }
  const Permutation& inverse_image(std::size_t generator) const { return inverses_[generator]; }
  std::span<const Permutation> images() const noexcept { return images_; }

  bool satisfies_relator() const;

 private:
  HomPoint(Genus genus, std::size_t n);

  Genus genus_;
  std::size_t n_;
  std::vector<Permutation> images_;
  std::vector<Permutation> inverses_;
};

/// Product of letter images, left to right. Throws std::invalid_argument on
/// genus mismatch.
Permutation evaluate_word(const HomPoint& h, const Word& w);

/// evaluate_word with caller-owned scratch space.
class WordEvaluator {
 public:
  void evaluate(const HomPoint& h, const Word& w, Permutation& out);

 private:
  Permutation tmp_;
};

}  // namespace scl
