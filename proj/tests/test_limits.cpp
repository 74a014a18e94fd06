#include <random>

#include <stdexcept>

#include "doctest.h"
#include "scl/limits.hpp"

using namespace scl;

namespace {

const Genus g2(2);

// Number of set partitions of [m], by restricted growth strings.
long bell_by_enumeration(int m) {
  std::vector<int> rgs(static_cast<std::size_t>(m), 0);
  long count = 0;
  auto rec = [&](auto&& self, int i, int maxv) -> void {
    if (i == m) {
      ++count;
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      rgs[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, std::max(maxv, v));
    }
  };
  if (m == 0) return 1;
  rec(rec, 0, -1);
  return count;
}

}  // namespace

TEST_CASE("Poisson moments") {
  CHECK(poisson_moment(ExactRational(1, 3), 1) == ExactRational(1, 3));
  CHECK(poisson_moment(ExactRational(1, 2), 2) == ExactRational(3, 4));
  CHECK(poisson_moment(1, 3) == 5);
  CHECK(poisson_moment(1, 0) == 1);
  CHECK_THROWS_AS(poisson_moment(0, 2), std::invalid_argument);
  for (int m = 0; m <= 10; ++m) CHECK(poisson_moment(1, static_cast<unsigned>(m)) == bell_by_enumeration(m));
  CHECK(stirling2(5, 2) == 15);
}

TEST_CASE("the worked example gives 15") {
  const auto spec = parse_spec(R"(gamma="a1" exps=[2,3]; delta="a2" exps=[4])", g2);
  const auto limit = limit_product_moment(spec);
  CHECK(limit.value == 15);
  CHECK(limit.warnings.empty());
  CHECK(limit_product_moment(spec.subspec(0)).value == 5);
  CHECK(limit_product_moment(spec.subspec(1)).value == 3);
  CHECK(factorization_identity_check(spec));
}

TEST_CASE("single word limits are divisor counts") {
  for (int a = 1; a <= 48; ++a) {
    const ObservableSpec spec({{"g", parse_word("a1", g2), {a}, 1}});
    CHECK(limit_product_moment(spec).value == d_count(a));
  }
  const ObservableSpec sq({{"g", parse_word("a1", g2), {1}, 2}});
  CHECK(limit_product_moment(sq).value == 2);
}

TEST_CASE("uncertified hypotheses become warnings") {
  const auto spec = parse_spec(R"(x="a1^2" exps=[1]; y="b1 a1^2 b1'" exps=[1])", g2);
  const auto limit = limit_product_moment(spec);
  CHECK(limit.warnings.size() == 3);
}

TEST_CASE("cycle moments") {
  CHECK(limit_cycle_moment({{0, 1, 1}}) == 1);
  CHECK(limit_cycle_moment({{0, 2, 1}}) == ExactRational(1, 2));
  CHECK(limit_cycle_moment({{0, 1, 1}, {1, 1, 1}}) == 1);
  CHECK(limit_cycle_moment({{0, 1, 1}, {0, 1, 1}}) == 2);
  CHECK(limit_cycle_moment({}) == 1);
  CHECK_THROWS_AS(limit_cycle_moment({{0, 0, 1}}), std::invalid_argument);
  // Independent groups: E[XY] - E[X]E[Y] = 0.
  CHECK(limit_cycle_moment({{0, 1, 1}, {1, 2, 1}}) -
            limit_cycle_moment({{0, 1, 1}}) * limit_cycle_moment({{1, 2, 1}}) ==
        0);
}

TEST_CASE("factorization identity on random specs") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> bases{"a1", "a2", "b1", "b2", "a1 b2"};
  for (int t = 0; t < 200; ++t) {
    std::vector<ObservableGroup> groups;
    const int groups_n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < groups_n; ++i) {
      std::vector<int> exps;
      const int r = 1 + static_cast<int>(rng() % 2);
      for (int j = 0; j < r; ++j) exps.push_back(1 + static_cast<int>(rng() % 12));
      groups.push_back({"g" + std::to_string(i), parse_word(bases[static_cast<std::size_t>(i)], g2), exps,
                        1 + static_cast<int>(rng() % 3)});
    }
    CHECK(factorization_identity_check(ObservableSpec(groups)));
  }
}

TEST_CASE("first moment shadow is the product of divisor counts") {
  const auto spec = parse_spec(R"(x="a1" exps=[4,6] pow=2; y="b1" exps=[12] pow=3)", g2);
  const auto poly = expand_limit_polynomial(spec);
  ExactRational shadow = 0;
  for (const auto& [mono, coeff] : poly) {
    ExactRational term(coeff);
    for (const auto& [var, e] : mono)
      for (unsigned k = 0; k < e; ++k) term /= var.k;
    shadow += term;
  }
  const long expected = (3 * 4) * (3 * 4) * 6 * 6 * 6;
  CHECK(shadow == expected);
}
