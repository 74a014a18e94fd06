#include <random>

#include <stdexcept>

#include "doctest.h"
#include "scl/permutation.hpp"
#include "scl/word.hpp"
#include "test_support.hpp"

using namespace scl;

namespace {
const Genus g2(2);
Word w(const char* text, Genus g = g2) { return parse_word(text, g); }
}  // namespace

TEST_CASE("genus below 2 is rejected") {
  CHECK_THROWS_AS(Genus(1), std::invalid_argument);
  CHECK_THROWS_AS(Genus(0), std::invalid_argument);
  CHECK(Genus(3).generator_count() == 6);
}

TEST_CASE("free_reduce") {
  const Letter a1{0, 1}, b1{1, 1};
  CHECK(Word::free_reduce(std::vector<Letter>{a1, a1.inverse()}, g2).empty());
  CHECK(Word::free_reduce(std::vector<Letter>{a1, b1, b1.inverse(), a1}, g2) == w("a1 a1"));
  CHECK(w("a1 b1 a2").to_string() == "a1 b1 a2");
  CHECK_THROWS_AS(Word::free_reduce(std::vector<Letter>{{4, 1}}, g2), std::out_of_range);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Word x = testing::random_word(rng, g2, 20);
    const Word again = Word::free_reduce(x.letters(), g2);
    CHECK(again == x);
    for (std::size_t i = 1; i < x.size(); ++i) CHECK_FALSE(x[i - 1].cancels(x[i]));
  }
}

TEST_CASE("parser and printer") {
  CHECK(w("a1^2 b1' a2").size() == 4);
  CHECK(w("a1^-2") == w("a1' a1'"));
  CHECK(w("1").empty());
  CHECK(w("").empty());
  CHECK(w("b2''") == w("b2"));
  CHECK_THROWS_AS(w("a3"), std::invalid_argument);
  CHECK_THROWS_AS(w("c1"), std::invalid_argument);
  CHECK_THROWS_AS(w("a"), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Word x = testing::random_word(rng, Genus(3), 16);
    CHECK(parse_word(x.to_string(), Genus(3)) == x);
  }
}

TEST_CASE("cyclic_reduce") {
  CHECK(cyclic_reduce(w("a1 b1 a1'")) == w("b1"));
  CHECK(cyclic_reduce(w("b1 a2")) == w("b1 a2"));
  CHECK(cyclic_reduce(w("a1 a1")) == w("a1 a1"));
  CHECK(cyclic_reduce(w("a1 b2 b1 b2' a1'")) == w("b1"));
}

TEST_CASE("dehn_reduce") {
  CHECK(dehn_reduce(relator(g2)).empty());
  CHECK(dehn_reduce(relator(Genus(3))).empty());
  CHECK(dehn_reduce(relator(g2).inverse()).empty());
  // Length 4 is exactly half of the genus-2 relator, so nothing applies.
  CHECK(dehn_reduce(w("a1' b1' a1 b1")) == w("a1' b1' a1 b1"));
  CHECK(dehn_reduce(w("a1")) == w("a1"));

  // Five letters of the relator become the inverse of the other three.
  CHECK(dehn_reduce(w("a1' b1' a1 b1 a2'")) == w("b2' a2' b2"));

  // Conjugates and products of relator conjugates are trivial.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Word c = testing::random_word(rng, g2, 8);
    const Word r = rng() % 2 ? relator(g2) : relator(g2).inverse();
    const Word x = c * r * c.inverse();
    CHECK(dehn_reduce(x).empty());
    const Word y = testing::random_word(rng, g2, 6);
    const Word z = y * x * y.inverse() * x;
    CHECK(is_identity(z));
  }
}

TEST_CASE("is_identity") {
  CHECK(is_identity(relator(g2)));
  CHECK_FALSE(is_identity(w("a1")));
  const Word comm = w("a1 b1 a1' b1'");
  CHECK_FALSE(is_identity(comm));
  // Confirmed by a point where the image is not the identity.
  CHECK_FALSE(evaluate_word(testing::noncommuting_point(), comm).is_identity());
}

TEST_CASE("abelianize") {
  CHECK(abelianize(w("a1^2 b2'")).exponents == std::vector<std::int64_t>{2, 0, 0, -1});
  CHECK(abelianize(relator(g2)).is_zero());
  CHECK(abelianize(w("")).is_zero());
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Word u = testing::random_word(rng, g2, 10), v = testing::random_word(rng, g2, 10);
    CHECK(abelianize(u * v) == abelianize(u) + abelianize(v));
    CHECK(abelianize(u.inverse()) == -abelianize(u));
  }
}

TEST_CASE("certificates") {
  CHECK(distinct_in_p0_certificate(w("a1"), w("a2")) == DistinctnessCertificate::distinct);
  CHECK(distinct_in_p0_certificate(w("a1"), w("a1'")) == DistinctnessCertificate::unknown);
  CHECK(distinct_in_p0_certificate(w("a1 b1"), w("b1 a1")) == DistinctnessCertificate::unknown);
  CHECK_THROWS_AS(distinct_in_p0_certificate(w(""), w("a1")), std::invalid_argument);
  CHECK_THROWS_AS(distinct_in_p0_certificate(w("a1"), relator(g2)), std::invalid_argument);

  CHECK(primitivity_certificate(w("a1")) == PrimitivityCertificate::primitive);
  CHECK(primitivity_certificate(w("a1^2")) == PrimitivityCertificate::unknown);
  CHECK(primitivity_certificate(w("a1 b2")) == PrimitivityCertificate::primitive);
  CHECK_THROWS_AS(primitivity_certificate(w("")), std::invalid_argument);

  // Soundness: no proper power is ever certified primitive.
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const Word base = testing::random_word(rng, g2, 6);
    if (is_identity(base)) continue;
    for (int a = 2; a <= 4; ++a)
      CHECK(primitivity_certificate(power_word(base, a)) == PrimitivityCertificate::unknown);
  }
}

TEST_CASE("power_word") {
  CHECK(power_word(w("a1"), 3) == w("a1 a1 a1"));
  CHECK(power_word(w("a1 b1 a1'"), 2) == w("a1 b1 b1 a1'"));
  CHECK(power_word(w("a2 b1'"), 1) == w("a2 b1'"));
  CHECK_THROWS_AS(power_word(w("a1"), 0), std::invalid_argument);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const Word x = testing::random_word(rng, g2, 6);
    const int a = 1 + static_cast<int>(rng() % 4), b = 1 + static_cast<int>(rng() % 4);
    CHECK(power_word(power_word(x, a), b) == power_word(x, a * b));
  }
  const PowerClaim claim = make_power_claim(w("a1 b1"), 3);
  CHECK(claim.certified == PrimitivityCertificate::primitive);
  CHECK(claim.word() == w("a1 b1 a1 b1 a1 b1"));
}
