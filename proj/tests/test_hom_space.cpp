#include <algorithm>
#include <mutex>
#include <set>

#include <stdexcept>

#include "doctest.h"
#include "scl/hom_space.hpp"
#include "test_support.hpp"

using namespace scl;

namespace {

const Genus g2(2);

EnumerationLimits single_thread() {
  EnumerationLimits l;
  l.threads = 1;
  return l;
}

// All genus-2 tuples in S_n by the quadruple loop.
std::vector<std::vector<Permutation>> brute_homs(std::uint32_t n) {
  const auto perms = testing::all_permutations(n);
  std::map<Permutation, std::vector<std::pair<std::size_t, std::size_t>>> by_comm;
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) by_comm[commutator(perms[a], perms[b])].push_back({a, b});
  std::vector<std::vector<Permutation>> out;
  for (const auto& [c, first] : by_comm) {
    auto it = by_comm.find(inverse(c));
    if (it == by_comm.end()) continue;
    for (auto [a, b] : first)
      for (auto [x, y] : it->second) out.push_back({perms[a], perms[b], perms[x], perms[y]});
  }
  return out;
}

}  // namespace

TEST_CASE("permutation index") {
  const PermutationIndex idx(4);
  CHECK(idx.size() == 24);
  for (std::uint32_t r = 0; r < idx.size(); ++r) {
    CHECK(idx.rank(idx.images(r)) == r);
    CHECK(compose(idx.permutation(r), idx.permutation(idx.inverse_rank(r))).is_identity());
  }
  CHECK(idx.permutation(0).is_identity());
}

TEST_CASE("commutator buckets") {
  for (std::uint32_t n = 1; n <= 5; ++n) {
    const auto buckets = build_buckets(n);
    CHECK(buckets.total() == factorial(n).get_ui() * factorial(n).get_ui());
    const auto& idx = buckets.index();
    for (std::uint32_t s = 0; s < idx.size(); ++s) {
      CHECK(ExactInt(static_cast<unsigned long>(buckets.bucket_size(s))) ==
            commutator_count(n, cycle_type(idx.permutation(s))));
      auto stored = std::vector<BucketPair>(buckets.bucket(s).begin(), buckets.bucket(s).end());
      auto regen = buckets.regenerate(s);
      auto key = [](BucketPair p) { return std::pair(p.a, p.b); };
      std::sort(stored.begin(), stored.end(), [&](auto x, auto y) { return key(x) < key(y); });
      std::sort(regen.begin(), regen.end(), [&](auto x, auto y) { return key(x) < key(y); });
      CHECK(stored == regen);
      for (auto p : stored) CHECK(commutator(idx.permutation(p.a), idx.permutation(p.b)) == idx.permutation(s));
    }
  }
  EnumerationLimits lean;
  lean.materialize_threshold = 3;
  const auto counts_only = build_buckets(4, lean);
  CHECK_FALSE(counts_only.materialized());
  CHECK(counts_only.pairs(0).size() == counts_only.bucket_size(0));
}

TEST_CASE("enumeration visits each homomorphism once") {
  for (auto [n, g] : std::vector<std::pair<std::uint32_t, int>>{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}}) {
    std::set<std::vector<Permutation>> seen;
    bool all_valid = true;
    const auto visits = enumerate_homs(
        n, Genus(g),
        [&](const HomPoint& h) {
          all_valid = all_valid && h.satisfies_relator();
          seen.insert({h.images().begin(), h.images().end()});
        },
        single_thread());
    CHECK(all_valid);
    CHECK(ExactInt(static_cast<unsigned long>(visits)) == hom_count(n, g));
    CHECK(seen.size() == visits);
  }
  // Same set as the quadruple loop.
  for (std::uint32_t n : {2u, 3u, 4u}) {
    std::set<std::vector<Permutation>> seen;
    enumerate_homs(n, g2, [&](const HomPoint& h) { seen.insert({h.images().begin(), h.images().end()}); },
                   single_thread());
    const auto brute = brute_homs(n);
    CHECK(std::set<std::vector<Permutation>>(brute.begin(), brute.end()) == seen);
  }
}

TEST_CASE("visit order does not change totals across thread counts") {
  const auto spec = parse_spec(R"(x="a1" exps=[1,2]; y="a2 b1" exps=[3])", g2);
  EnumerationLimits many;
  many.threads = 4;
  const auto a = exact_totals(4, g2, spec, single_thread());
  const auto b = exact_totals(4, g2, spec, many);
  CHECK(a.joint_sum == b.joint_sum);
  CHECK(a.group_sums == b.group_sums);
}

TEST_CASE("exact expectations") {
  const auto fa1 = parse_spec(R"(x="a1" exps=[1])", g2);
  CHECK(exact_expectation(2, g2, fa1) == 1);
  for (std::uint32_t n : {3u, 4u}) {
    const auto brute = brute_homs(n);
    long sum = 0, joint = 0;
    const auto spec = parse_spec(R"(x="a1" exps=[2,3]; y="a2" exps=[4])", g2);
    for (const auto& t : brute) {
      const HomPoint h(g2, t);
      sum += static_cast<long>(fix_count(t[0]));
      joint += joint_moment(h, spec);
    }
    CHECK(exact_expectation(n, g2, fa1) == ExactRational(ExactInt(sum)) / static_cast<long>(brute.size()));
    const auto totals = exact_totals(n, g2, spec);
    CHECK(totals.joint_mean() == ExactRational(ExactInt(joint)) / static_cast<long>(brute.size()));
  }
}

TEST_CASE("expectations are invariant under inversion and conjugation of the word") {
  const std::vector<std::string> words{"a1 b1", "a1^2 b2", "b1 a2' b2"};
  for (const auto& text : words) {
    const Word w = parse_word(text, g2);
    const Word c = parse_word("a2 b1'", g2);
    auto spec_of = [](const Word& x) { return ObservableSpec({{"w", x, {1, 2}, 1}}); };
    const auto base = exact_expectation(3, g2, spec_of(w));
    CHECK(exact_expectation(3, g2, spec_of(w.inverse())) == base);
    CHECK(exact_expectation(3, g2, spec_of(c * w * c.inverse())) == base);
  }
}

TEST_CASE("budget is enforced") {
  EnumerationLimits tiny;
  tiny.max_visits = 100;
  CHECK_THROWS_AS(enumerate_homs(3, g2, [](const HomPoint&) {}, tiny), BudgetExceeded);
  CHECK_THROWS_AS(build_buckets(10), BudgetExceeded);
  EnumerationLimits small_memory;
  small_memory.max_memory_bytes = 1024;
  CHECK_THROWS_AS(build_buckets(6, small_memory), BudgetExceeded);
}
