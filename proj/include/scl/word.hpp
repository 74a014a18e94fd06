#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scl {

/// Genus of the closed orientable surface; only hyperbolic genera (g >= 2)
/// are representable.
class Genus {
 public:
  explicit Genus(int g);

  int value() const noexcept { return g_; }
  /// Number of generators a_1, b_1, ..., a_g, b_g.
  std::uint32_t generator_count() const noexcept { return 2u * static_cast<std::uint32_t>(g_); }

  friend bool operator==(Genus, Genus) = default;

 private:
  int g_;
};

/// A generator or its inverse. Generator 2i is a_{i+1}, generator 2i+1 is b_{i+1}.
struct Letter {
  std::uint32_t generator = 0;
  std::int8_t sign = 1;

  Letter inverse() const noexcept { return {generator, static_cast<std::int8_t>(-sign)}; }
  bool cancels(Letter other) const noexcept {
    return generator == other.generator && sign == -other.sign;
  }

  friend bool operator==(Letter, Letter) = default;
  friend auto operator<=>(Letter, Letter) = default;
};

/// Freely reduced word in the surface group generators.
class Word {
 public:
  explicit Word(Genus genus) : genus_(genus) {}

  /// Free reduction of an arbitrary letter sequence. Throws std::out_of_range
  /// on a generator index outside [0, 2g) or a sign other than +-1.
  static Word free_reduce(std::span<const Letter> raw, Genus genus);

  Genus genus() const noexcept { return genus_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;

  /// Human-readable form, e.g. "a1 b1' a2^2"; the empty word prints as "1".
  std::string to_string() const;

  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  Genus genus_;
  std::vector<Letter> letters_;
};

/// Parses `a1 b1' a2^2 b2^-1`: tokens a<i>/b<i>, optional `'` for inverse and
/// `^k` for a (possibly negative) power. "1" or an empty string is the
/// identity. Throws std::invalid_argument on malformed text.
Word parse_word(std::string_view text, Genus genus);

/// The surface relator [a1,b1]...[ag,bg] with [a,b] = a^-1 b^-1 a b.
Word relator(Genus genus);

/// Strips conjugating prefix/suffix pairs so first and last letters do not cancel.
Word cyclic_reduce(const Word& w);

/// Dehn's algorithm for the surface presentation. Any subword that is more
/// than half of a cyclic rotation of the relator (or its inverse) is replaced
/// by the inverse of the complementary part, followed by free reduction,
/// until no such subword remains. The result is empty iff w is trivial in
/// the surface group.
Word dehn_reduce(const Word& w);

bool is_identity(const Word& w);

/// Exponent sum per generator (the image in H_1 = Z^{2g}).
struct AbelianImage {
  std::vector<std::int64_t> exponents;

  AbelianImage operator-() const;
  friend AbelianImage operator+(const AbelianImage&, const AbelianImage&);
  friend bool operator==(const AbelianImage&, const AbelianImage&) = default;
  bool is_zero() const noexcept;
};

AbelianImage abelianize(const Word& w);

enum class DistinctnessCertificate { distinct, unknown };
enum class PrimitivityCertificate { primitive, unknown };

/// Sound test that u and v are not conjugate to each other or to each
/// other's inverse. Throws std::invalid_argument on an identity word.
DistinctnessCertificate distinct_in_p0_certificate(const Word& u, const Word& v);

/// Sound test that w is not a proper power: gcd of the abelian image is 1.
/// Throws std::invalid_argument on an identity word.
PrimitivityCertificate primitivity_certificate(const Word& w);

/// Free reduction of `base` repeated `exponent` times; exponent >= 1.
Word power_word(const Word& base, int exponent);

/// Claim that a word equals base^exponent, with whatever primitivity
/// certificate the base admits.
struct PowerClaim {
  Word base;
  int exponent;
  PrimitivityCertificate certified;

  Word word() const { return power_word(base, exponent); }
};

PowerClaim make_power_claim(const Word& base, int exponent);

}  // namespace scl
