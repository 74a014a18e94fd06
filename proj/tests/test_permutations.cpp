#include <random>

#include <stdexcept>

#include "doctest.h"
#include "scl/permutation.hpp"
#include "test_support.hpp"

using namespace scl;

TEST_CASE("construction validates images") {
  CHECK_THROWS_AS(Permutation(std::vector<point_t>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<point_t>{0, 2}), std::invalid_argument);
  CHECK(Permutation::identity(4).is_identity());
  CHECK(Permutation::from_cycles(4, {{0, 1, 2}}) == Permutation(std::vector<point_t>{1, 2, 0, 3}));
}

TEST_CASE("composition is left to right") {
  const auto c = Permutation::from_cycles(3, {{0, 1, 2}});
  const auto t = Permutation::from_cycles(3, {{0, 1}});
  // i -> t(c(i)): 0->1->0, 1->2->2, 2->0->1.
  CHECK(compose(c, t) == Permutation::from_cycles(3, {{1, 2}}));
  CHECK(compose(t, c) == Permutation::from_cycles(3, {{0, 2}}));
}

TEST_CASE("commutator and conjugate") {
  const auto x = Permutation::from_cycles(3, {{0, 1}});
  const auto y = Permutation::from_cycles(3, {{1, 2}});
  const auto k = commutator(x, y);
  CHECK(cycle_type(k) == Partition{3});
  CHECK(k == compose(compose(inverse(x), inverse(y)), compose(x, y)));
  CHECK(conjugate(x, y) == compose(compose(inverse(y), x), y));
  CHECK(commutator(x, x).is_identity());
}

TEST_CASE("group axioms on random permutations") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 20;
    const auto p = testing::random_permutation(rng, n), q = testing::random_permutation(rng, n),
               r = testing::random_permutation(rng, n);
    CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
    CHECK(compose(p, inverse(p)).is_identity());
    CHECK(compose(inverse(p), p).is_identity());
    CHECK(compose(p, Permutation::identity(n)) == p);
    CHECK(inverse(compose(p, q)) == compose(inverse(q), inverse(p)));
    CHECK(cycle_type(conjugate(p, q)) == cycle_type(p));
    CHECK(power(p, 3) == compose(compose(p, p), p));
    CHECK(power(p, 0).is_identity());
  }
}

TEST_CASE("cycle statistics") {
  const auto p = Permutation::from_cycles(7, {{0, 1}, {2, 3, 4}});
  CHECK(cycle_type(p) == Partition{3, 2, 1, 1});
  CHECK(fix_count(p) == 2);
  CHECK(d_cycle_count(p, 2) == 1);
  CHECK(d_cycle_count(p, 3) == 1);
  CHECK(d_cycle_count(p, 5) == 0);
  CHECK_THROWS_AS(d_cycle_count(p, 8), std::out_of_range);
  CHECK_THROWS_AS(d_cycle_count(p, 0), std::out_of_range);
  const auto counts = cycle_counts(p);
  CHECK(counts[1] == 2);
  CHECK(counts[2] == 1);
  CHECK(counts[3] == 1);
}

TEST_CASE("cycle notation") {
  CHECK(to_cycle_string(Permutation::identity(3)) == "()");
  const auto p = Permutation::from_cycles(5, {{0, 2}, {1, 3, 4}});
  CHECK(to_cycle_string(p) == "(1 3)(2 4 5)");
  CHECK(parse_cycles("(1 3)(2 4 5)", 5) == p);
  CHECK(parse_cycles("()", 4).is_identity());
  CHECK_THROWS_AS(parse_cycles("(1 6)", 5), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 5), std::invalid_argument);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto q = testing::random_permutation(rng, 1 + rng() % 12);
    CHECK(parse_cycles(to_cycle_string(q), q.size()) == q);
  }
}

TEST_CASE("HomPoint checks the relator") {
  const auto x = Permutation::from_cycles(3, {{0, 1}});
  const auto y = Permutation::from_cycles(3, {{1, 2}});
  CHECK_THROWS_AS(HomPoint(Genus(2), {x, y, x, y}), std::invalid_argument);
  CHECK_THROWS_AS(HomPoint(Genus(2), {x, y, y}), std::invalid_argument);
  const HomPoint h = testing::noncommuting_point();
  CHECK(h.satisfies_relator());
  CHECK(evaluate_word(h, relator(Genus(2))).is_identity());
  CHECK(evaluate_word(h, parse_word("a1 b1", Genus(2))) == compose(x, y));
  CHECK(evaluate_word(h, parse_word("a1'", Genus(2))) == inverse(x));
  CHECK(evaluate_word(h, parse_word("1", Genus(2))).is_identity());
}

TEST_CASE("evaluate_word is a homomorphism") {
  const HomPoint h = testing::noncommuting_point();
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Word u = testing::random_word(rng, Genus(2), 10), v = testing::random_word(rng, Genus(2), 10);
    CHECK(evaluate_word(h, u * v) == compose(evaluate_word(h, u), evaluate_word(h, v)));
    CHECK(evaluate_word(h, u.inverse()) == inverse(evaluate_word(h, u)));
  }
}
