#include "scl/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace scl {

ExactInt factorial(std::uint32_t n) {
  ExactInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::string to_string(const ExactInt& z) { return z.get_str(); }

std::string to_string(const ExactRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const ExactRational& q, int digits) {
  ExactInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  ExactRational scaled = q * scale;
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  // Round half up on the magnitude.
  ExactInt r = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string s = r.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return (negative && r != 0 ? "-" : "") + s;
}

ExactRational parse_rational(const std::string& text) {
  ExactRational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
  q.canonicalize();
  return q;
}

ExactInt dim_irrep(const Partition& lambda) {
  ExactInt prod = 1;
  const auto parts = lambda.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::uint32_t j = 0; j < parts[i]; ++j) {
      std::uint32_t below = 0;
      for (std::size_t r = i + 1; r < parts.size() && parts[r] > j; ++r) ++below;
      prod *= parts[i] - j - 1 + below + 1;
    }
  }
  return factorial(lambda.size()) / prod;
}

namespace {

ExactRational ratio(const ExactInt& num, const ExactInt& den) {
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

using Parts = std::vector<std::uint32_t>;

// Removes a k-rim hook at every admissible position; calls f(remaining, sign).
template <class F>
void for_each_rim_hook(const Parts& lambda, std::uint32_t k, F&& f) {
  const std::size_t len = lambda.size();
  std::vector<std::uint32_t> beta(len);
  for (std::size_t j = 0; j < len; ++j) beta[j] = lambda[j] + static_cast<std::uint32_t>(len - 1 - j);
  for (std::size_t j = 0; j < len; ++j) {
    const std::uint32_t b = beta[j];
    if (b < k) continue;
    const std::uint32_t target = b - k;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int crossed = 0;
    for (auto x : beta) crossed += (x > target && x < b);
    std::vector<std::uint32_t> next = beta;
    next[j] = target;
    std::sort(next.begin(), next.end(), std::greater<>());
    Parts rest;
    for (std::size_t r = 0; r < len; ++r) {
      const std::uint32_t part = next[r] - static_cast<std::uint32_t>(len - 1 - r);
      if (part) rest.push_back(part);
    }
    f(rest, crossed % 2 ? -1 : 1);
  }
}

class MnSolver {
 public:
  std::int64_t solve(const Parts& lambda, const Parts& mu, std::size_t from) {
    if (from == mu.size()) return lambda.empty() ? 1 : 0;
    std::string key;
    key.reserve(lambda.size() + mu.size() - from + 1);
    for (auto p : lambda) key.push_back(static_cast<char>(p));
    key.push_back('\0');
    for (std::size_t i = from; i < mu.size(); ++i) key.push_back(static_cast<char>(mu[i]));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::int64_t total = 0;
    for_each_rim_hook(lambda, mu[from], [&](const Parts& rest, int sign) {
      const std::int64_t term = sign * solve(rest, mu, from + 1);
      if (__builtin_add_overflow(total, term, &total)) throw std::overflow_error("character value overflow");
    });
    memo_.emplace(std::move(key), total);
    return total;
  }

 private:
  std::unordered_map<std::string, std::int64_t> memo_;
};

}  // namespace

std::int64_t mn_character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw std::invalid_argument("mn_character: partition sizes differ");
  if (lambda.size() > 255) throw std::out_of_range("mn_character: n too large");
  MnSolver solver;
  return solver.solve(Parts(lambda.parts().begin(), lambda.parts().end()),
                      Parts(mu.parts().begin(), mu.parts().end()), 0);
}

ExactInt centralizer_size(const CycleType& mu) {
  ExactInt z = 1;
  std::map<std::uint32_t, std::uint32_t> mult;
  for (auto p : mu.parts()) ++mult[p];
  for (auto [k, m] : mult) {
    ExactInt km;
    mpz_ui_pow_ui(km.get_mpz_t(), k, m);
    z *= km * factorial(m);
  }
  return z;
}

ExactInt class_size(const CycleType& mu) { return factorial(mu.size()) / centralizer_size(mu); }

CharacterTable::CharacterTable(std::uint32_t n) : n_(n), partitions_(scl::partitions(n)), order_(factorial(n)) {
  if (n > kMaxCharacterDegree) throw std::out_of_range("character table degree too large");
  const std::size_t c = partitions_.size();
  for (std::size_t i = 0; i < c; ++i) index_.emplace(partitions_[i], i);
  dims_.reserve(c);
  class_sizes_.reserve(c);
  for (const auto& p : partitions_) {
    dims_.push_back(dim_irrep(p));
    class_sizes_.push_back(scl::class_size(p));
  }
  table_.resize(c * c);
  MnSolver solver;
  for (std::size_t l = 0; l < c; ++l) {
    const Parts lambda(partitions_[l].parts().begin(), partitions_[l].parts().end());
    for (std::size_t m = 0; m < c; ++m) {
      const Parts mu(partitions_[m].parts().begin(), partitions_[m].parts().end());
      table_[l * c + m] = solver.solve(lambda, mu, 0);
    }
  }
}

std::size_t CharacterTable::index_of(const Partition& p) const {
  auto it = index_.find(p);
  if (it == index_.end())
    throw std::out_of_range("partition " + p.to_string() + " is not a partition of " + std::to_string(n_));
  return it->second;
}

ExactRational CharacterTable::character_ratio_sum(std::size_t mu, unsigned k) const {
  ExactRational sum = 0;
  for (std::size_t l = 0; l < partitions_.size(); ++l) {
    ExactInt denom;
    mpz_pow_ui(denom.get_mpz_t(), dims_[l].get_mpz_t(), k);
    sum += ratio(ExactInt(static_cast<long>(value(l, mu))), denom);
  }
  sum.canonicalize();
  return sum;
}

std::shared_ptr<const CharacterTable> character_table(std::uint32_t n) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const CharacterTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const CharacterTable>(n);
  return slot;
}

ExactRational witten_zeta(std::uint32_t n, unsigned s) {
  if (n < 1) throw std::invalid_argument("witten_zeta: n must be >= 1");
  ExactRational sum = 0;
  for (const auto& lambda : partitions(n)) {
    ExactInt denom;
    mpz_pow_ui(denom.get_mpz_t(), dim_irrep(lambda).get_mpz_t(), s);
    sum += ratio(1, denom);
  }
  sum.canonicalize();
  return sum;
}

namespace {

ExactInt checked_integer(const ExactRational& q, const char* what) {
  if (!is_integer(q) || q < 0)
    throw std::logic_error(std::string(what) + ": character sum is not a non-negative integer (" + to_string(q) + ")");
  return q.get_num();
}

ExactInt factorial_power(std::uint32_t n, unsigned e) {
  ExactInt out;
  mpz_pow_ui(out.get_mpz_t(), factorial(n).get_mpz_t(), e);
  return out;
}

}  // namespace

ExactInt hom_count(std::uint32_t n, int g) {
  if (n < 1) throw std::invalid_argument("hom_count: n must be >= 1");
  if (g < 2) throw std::invalid_argument("hom_count: genus must be >= 2");
  const auto e = static_cast<unsigned>(2 * g - 1);
  return checked_integer(ExactRational(factorial_power(n, e)) * witten_zeta(n, e - 1), "hom_count");
}

ExactInt g_commutator_product_count(std::uint32_t n, int g, const CycleType& mu) {
  if (mu.size() != n) throw std::invalid_argument("cycle type is not a partition of n");
  if (g < 1) throw std::invalid_argument("g_commutator_product_count: g must be >= 1");
  const auto table = character_table(n);
  const auto e = static_cast<unsigned>(2 * g - 1);
  return checked_integer(ExactRational(factorial_power(n, e)) * table->character_ratio_sum(table->index_of(mu), e),
                         "g_commutator_product_count");
}

ExactInt commutator_count(std::uint32_t n, const CycleType& mu) { return g_commutator_product_count(n, 1, mu); }

ExactInt factorization_count(const CycleType& k1, const CycleType& k2, const CycleType& sigma) {
  const std::uint32_t n = sigma.size();
  if (k1.size() != n || k2.size() != n) throw std::invalid_argument("factorization_count: sizes differ");
  const auto table = character_table(n);
  const auto i1 = table->index_of(k1), i2 = table->index_of(k2), is = table->index_of(sigma);
  ExactRational sum = 0;
  for (std::size_t l = 0; l < table->class_count(); ++l) {
    const ExactInt num = ExactInt(static_cast<long>(table->value(l, i1))) * table->value(l, i2) * table->value(l, is);
    sum += ratio(num, table->dim(l));
  }
  sum *= ratio(table->class_size(i1) * table->class_size(i2), table->group_order());
  sum.canonicalize();
  return checked_integer(sum, "factorization_count");
}

}  // namespace scl
