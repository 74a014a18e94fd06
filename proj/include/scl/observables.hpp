#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scl/exact.hpp"
#include "scl/permutation.hpp"
#include "scl/word.hpp"

namespace scl {

/// One factor group of a moment specification: (prod_j F(word^{a_j}))^power.
struct ObservableGroup {
  std::string name;
  Word word;
  std::vector<int> exponents;
  int power = 1;
};

/// Product over groups of (prod_j F(gamma_i^{a_ij}))^{s_i}. Words must be
/// non-trivial in the surface group; exponents and powers must be >= 1.
class ObservableSpec {
 public:
  ObservableSpec() = default;
  /// Throws std::invalid_argument on an identity word, a non-positive
  /// exponent/power, an empty exponent list or mixed genera.
  explicit ObservableSpec(std::vector<ObservableGroup> groups);

  const std::vector<ObservableGroup>& groups() const noexcept { return groups_; }
  std::size_t size() const noexcept { return groups_.size(); }
  bool empty() const noexcept { return groups_.empty(); }
  std::optional<Genus> genus() const;

  ObservableSpec subspec(std::size_t group) const;
  /// Round-trips through parse_spec.
  std::string to_string() const;

 private:
  std::vector<ObservableGroup> groups_;
};

/// Parses `gamma="a1" exps=[2,3] pow=1; delta="a2" exps=[4] pow=1`. The
/// pow field is optional (default 1). Groups are separated by ";" or a newline.
/// An empty string is the empty spec.
ObservableSpec parse_spec(std::string_view text, Genus genus);

/// Fixed points of the image of w. Throws std::invalid_argument on a word
/// that is trivial in the surface group.
std::int64_t F(const HomPoint& h, const Word& w);
/// d-cycles of the image of w; throws std::out_of_range unless 1 <= d <= n.
std::int64_t C(const HomPoint& h, const Word& w, std::int64_t d);
/// F(w^a) == sum over d | a of d * C(w, d).
bool power_identity_check(const HomPoint& h, const Word& w, int a);

/// Moebius function; throws std::invalid_argument for n < 1.
int mobius(std::int64_t n);
/// Positive divisors in increasing order.
std::vector<std::int64_t> divisors(std::int64_t a);
std::int64_t d_count(std::int64_t a);

/// C_r = (1/r) sum_{d | r} mu(d) F(gamma^{r/d}), where values maps q to
/// F(gamma^q). Throws std::invalid_argument on missing divisor data.
ExactRational cycles_from_fixed_points(const std::map<std::int64_t, std::int64_t>& values, std::int64_t r);

/// Evaluates a spec on hom points, caching one image per distinct power of
/// each base word. Not thread-safe; use one per worker.
class SpecEvaluator {
 public:
  explicit SpecEvaluator(const ObservableSpec& spec);

  std::size_t group_count() const noexcept { return groups_.size(); }
  /// Writes each group's value into group_values (size group_count()) and
  /// returns their product. Throws std::overflow_error past int64.
  std::int64_t evaluate(const HomPoint& h, std::span<std::int64_t> group_values);
  std::int64_t evaluate(const HomPoint& h);

 private:
  struct Group {
    Word word;
    std::vector<std::pair<int, int>> powers;  // (exponent a, multiplicity)
    int power;
  };
  std::vector<Group> groups_;
  std::vector<std::int64_t> scratch_values_;
  WordEvaluator eval_;
  Permutation base_, pow_, tmp_;
};

/// prod_i (prod_j F(gamma_i^{a_ij}))^{s_i} on one hom point.
std::int64_t joint_moment(const HomPoint& h, const ObservableSpec& spec);

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_pow(std::int64_t base, int exponent);

}  // namespace scl
