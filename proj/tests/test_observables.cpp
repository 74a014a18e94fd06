#include <random>

#include <stdexcept>

#include "doctest.h"
#include "scl/observables.hpp"
#include "test_support.hpp"

using namespace scl;

namespace {
const Genus g2(2);
}

TEST_CASE("mobius and divisors") {
  const std::vector<int> mu{1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (std::size_t i = 0; i < mu.size(); ++i) CHECK(mobius(static_cast<std::int64_t>(i + 1)) == mu[i]);
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(1) == std::vector<std::int64_t>{1});
  CHECK(d_count(48) == 10);
  CHECK_THROWS_AS(divisors(0), std::invalid_argument);
  CHECK_THROWS_AS(mobius(0), std::invalid_argument);
  for (std::int64_t n = 2; n <= 200; ++n) {
    int sum = 0;
    for (auto d : divisors(n)) sum += mobius(d);
    CHECK(sum == 0);
  }
}

TEST_CASE("cycles from fixed points") {
  // p = (0 1)(2 3 4)(5): F(p)=1, F(p^2)=3, F(p^3)=3, F(p^6)=6.
  const auto p = Permutation::from_cycles(6, {{0, 1}, {2, 3, 4}});
  std::map<std::int64_t, std::int64_t> f;
  for (std::int64_t q = 1; q <= 6; ++q) f[q] = static_cast<std::int64_t>(fix_count(power(p, static_cast<std::uint64_t>(q))));
  CHECK(cycles_from_fixed_points(f, 1) == 1);
  CHECK(cycles_from_fixed_points(f, 2) == 1);
  CHECK(cycles_from_fixed_points(f, 3) == 1);
  CHECK(cycles_from_fixed_points(f, 6) == 0);
  CHECK_THROWS_AS(cycles_from_fixed_points({{1, 1}}, 2), std::invalid_argument);
}

TEST_CASE("spec parsing") {
  const auto spec = parse_spec(R"(gamma="a1" exps=[2,3] pow=1; delta="a2" exps=[4] pow=1)", g2);
  REQUIRE(spec.size() == 2);
  CHECK(spec.groups()[0].exponents == std::vector<int>{2, 3});
  CHECK(spec.groups()[1].word == parse_word("a2", g2));
  CHECK(parse_spec(spec.to_string(), g2).to_string() == spec.to_string());
  CHECK(parse_spec(R"(x="a1 b1" exps=[1])", g2).groups()[0].power == 1);
  CHECK(parse_spec("", g2).empty());
  CHECK(parse_spec("x=\"a1\" exps=[1]\ny=\"a2\" exps=[2]", g2).size() == 2);
  CHECK_THROWS_AS(parse_spec(R"(x="1" exps=[1])", g2), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec(R"(x="a1" exps=[0])", g2), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec(R"(x="a1" exps=[])", g2), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec(R"(x="a1" exps=[1] pow=0)", g2), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec(R"(x=a1 exps=[1])", g2), std::invalid_argument);
}

TEST_CASE("F, C and the power identity") {
  const HomPoint h = testing::noncommuting_point();
  const Word a1 = parse_word("a1", g2), ab = parse_word("a1 b1", g2);
  CHECK(F(h, a1) == 1);
  CHECK(F(h, ab) == 0);
  CHECK(C(h, ab, 3) == 1);
  CHECK(C(h, a1, 2) == 1);
  CHECK_THROWS_AS(C(h, a1, 4), std::out_of_range);
  CHECK_THROWS_AS(F(h, relator(g2)), std::invalid_argument);
  for (int a = 1; a <= 12; ++a) {
    CHECK(power_identity_check(h, a1, a));
    CHECK(power_identity_check(h, ab, a));
  }
}

TEST_CASE("joint moment matches direct evaluation") {
  std::mt19937_64 rng(9);
  const auto x = testing::random_permutation(rng, 6), y = testing::random_permutation(rng, 6);
  // [a2,b2] = [b1,a1] cancels the first commutator.
  const HomPoint h(g2, {x, y, y, x});
  const auto spec =
      parse_spec(R"(g="a1" exps=[2,3] pow=2; d="a1 b1" exps=[1,4] pow=1; e="b1" exps=[6] pow=1)", g2);
  std::int64_t expected = 1;
  for (const auto& grp : spec.groups()) {
    std::int64_t v = 1;
    for (int a : grp.exponents) v *= static_cast<std::int64_t>(fix_count(evaluate_word(h, power_word(grp.word, a))));
    std::int64_t p = 1;
    for (int s = 0; s < grp.power; ++s) p *= v;
    expected *= p;
  }
  CHECK(joint_moment(h, spec) == expected);
  SpecEvaluator eval(spec);
  std::vector<std::int64_t> values(spec.size());
  CHECK(eval.evaluate(h, values) == expected);
  CHECK(values[0] * values[1] * values[2] == expected);
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_pow(3, 4) == 81);
  CHECK_THROWS_AS(checked_pow(1 << 20, 4), std::overflow_error);
}
