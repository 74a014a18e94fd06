#include "scl/observables.hpp"

#include <algorithm>
#include <regex>
#include <stdexcept>

namespace scl {

ObservableSpec::ObservableSpec(std::vector<ObservableGroup> groups) : groups_(std::move(groups)) {
  for (const auto& g : groups_) {
    if (!(g.word.genus() == groups_.front().word.genus()))
      throw std::invalid_argument("spec groups use different genera");
    if (is_identity(g.word)) throw std::invalid_argument("spec group '" + g.name + "' has an identity word");
    if (g.exponents.empty()) throw std::invalid_argument("spec group '" + g.name + "' has no exponents");
    for (int a : g.exponents)
      if (a < 1) throw std::invalid_argument("spec exponents must be >= 1");
    if (g.power < 1) throw std::invalid_argument("spec powers must be >= 1");
  }
}

std::optional<Genus> ObservableSpec::genus() const {
  if (groups_.empty()) return std::nullopt;
  return groups_.front().word.genus();
}

ObservableSpec ObservableSpec::subspec(std::size_t group) const {
  return ObservableSpec({groups_.at(group)});
}

std::string ObservableSpec::to_string() const {
  std::string out;
  for (const auto& g : groups_) {
    if (!out.empty()) out += "; ";
    out += g.name + "=\"" + g.word.to_string() + "\" exps=[";
    for (std::size_t j = 0; j < g.exponents.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(g.exponents[j]);
    }
    out += "] pow=" + std::to_string(g.power);
  }
  return out;
}

ObservableSpec parse_spec(std::string_view text, Genus genus) {
  static const std::regex group_re(
      R"re(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*"([^"]*)"\s+exps\s*=\s*\[([0-9,\s]*)\](?:\s+pow\s*=\s*([0-9]+))?\s*$)re");
  std::vector<ObservableGroup> groups;
  std::string all(text);
  std::size_t start = 0;
  while (start <= all.size()) {
    const std::size_t end = std::min(all.find_first_of(";\n", start), all.size());
    const std::string piece = all.substr(start, end - start);
    start = end + 1;
    if (piece.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::smatch m;
    if (!std::regex_match(piece, m, group_re)) throw std::invalid_argument("malformed spec group: '" + piece + "'");
    ObservableGroup g{m[1].str(), parse_word(m[2].str(), genus), {}, 1};
    std::string exps = m[3].str();
    std::replace(exps.begin(), exps.end(), ',', ' ');
    std::size_t pos = 0;
    while (pos < exps.size()) {
      const auto b = exps.find_first_not_of(' ', pos);
      if (b == std::string::npos) break;
      const auto e = std::min(exps.find(' ', b), exps.size());
      g.exponents.push_back(std::stoi(exps.substr(b, e - b)));
      pos = e;
    }
    if (m[4].matched) g.power = std::stoi(m[4].str());
    groups.push_back(std::move(g));
  }
  return ObservableSpec(std::move(groups));
}

std::int64_t F(const HomPoint& h, const Word& w) {
  if (is_identity(w)) throw std::invalid_argument("F: identity word");
  return static_cast<std::int64_t>(fix_count(evaluate_word(h, w)));
}

std::int64_t C(const HomPoint& h, const Word& w, std::int64_t d) {
  if (d < 1 || static_cast<std::size_t>(d) > h.degree()) throw std::out_of_range("C: cycle length out of range");
  return static_cast<std::int64_t>(d_cycle_count(evaluate_word(h, w), static_cast<std::size_t>(d)));
}

bool power_identity_check(const HomPoint& h, const Word& w, int a) {
  const std::int64_t lhs = static_cast<std::int64_t>(fix_count(evaluate_word(h, power_word(w, a))));
  const auto counts = cycle_counts(evaluate_word(h, w));
  std::int64_t rhs = 0;
  for (auto d : divisors(a))
    if (static_cast<std::size_t>(d) < counts.size()) rhs += d * counts[static_cast<std::size_t>(d)];
  return lhs == rhs;
}

int mobius(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("mobius: n must be >= 1");
  int result = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

std::vector<std::int64_t> divisors(std::int64_t a) {
  if (a < 1) throw std::invalid_argument("divisors: a must be >= 1");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= a; ++d) {
    if (a % d) continue;
    small.push_back(d);
    if (d != a / d) large.push_back(a / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::int64_t d_count(std::int64_t a) { return static_cast<std::int64_t>(divisors(a).size()); }

ExactRational cycles_from_fixed_points(const std::map<std::int64_t, std::int64_t>& values, std::int64_t r) {
  ExactRational sum = 0;
  for (auto d : divisors(r)) {
    auto it = values.find(r / d);
    if (it == values.end())
      throw std::invalid_argument("cycles_from_fixed_points: missing F value for power " + std::to_string(r / d));
    sum += ExactInt(static_cast<long>(mobius(d))) * ExactInt(static_cast<long>(it->second));
  }
  sum /= ExactInt(static_cast<long>(r));
  sum.canonicalize();
  return sum;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("observable value exceeds int64");
  return out;
}

std::int64_t checked_pow(std::int64_t base, int exponent) {
  std::int64_t out = 1;
  for (int k = 0; k < exponent; ++k) out = checked_mul(out, base);
  return out;
}

SpecEvaluator::SpecEvaluator(const ObservableSpec& spec) {
  for (const auto& g : spec.groups()) {
    std::map<int, int> mult;
    for (int a : g.exponents) ++mult[a];
    groups_.push_back({g.word, {mult.begin(), mult.end()}, g.power});
  }
  scratch_values_.resize(groups_.size());
}

std::int64_t SpecEvaluator::evaluate(const HomPoint& h, std::span<std::int64_t> group_values) {
  std::int64_t joint = 1;
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    const auto& g = groups_[i];
    eval_.evaluate(h, g.word, base_);
    std::int64_t value = 1;
    int reached = 1;
    pow_ = base_;
    for (auto [a, mult] : g.powers) {
      for (; reached < a; ++reached) {
        compose_into(pow_, base_, tmp_);
        std::swap(pow_, tmp_);
      }
      value = checked_mul(value, checked_pow(static_cast<std::int64_t>(fix_count(pow_)), mult));
    }
    value = checked_pow(value, g.power);
    group_values[i] = value;
    joint = checked_mul(joint, value);
  }
  return joint;
}

std::int64_t SpecEvaluator::evaluate(const HomPoint& h) { return evaluate(h, scratch_values_); }

std::int64_t joint_moment(const HomPoint& h, const ObservableSpec& spec) {
  SpecEvaluator eval(spec);
  return eval.evaluate(h);
}

}  // namespace scl
