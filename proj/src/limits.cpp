#include "scl/limits.hpp"

#include <mutex>
#include <stdexcept>

namespace scl {

ExactInt stirling2(unsigned m, unsigned j) {
  static std::mutex mu;
  static std::vector<std::vector<ExactInt>> triangle{{ExactInt(1)}};
  std::lock_guard lock(mu);
  while (triangle.size() <= m) {
    const auto& prev = triangle.back();
    const std::size_t row = triangle.size();
    std::vector<ExactInt> next(row + 1, 0);
    for (std::size_t k = 1; k <= row; ++k) {
      ExactInt v = prev.size() > k ? ExactInt(prev[k] * static_cast<unsigned long>(k)) : ExactInt(0);
      v += prev[k - 1];
      next[k] = v;
    }
    triangle.push_back(std::move(next));
  }
  return j < triangle[m].size() ? triangle[m][j] : ExactInt(0);
}

ExactRational poisson_moment(const ExactRational& lambda, unsigned m) {
  if (lambda <= 0) throw std::invalid_argument("poisson_moment: lambda must be positive");
  ExactRational sum = 0, power = 1;
  for (unsigned j = 0; j <= m; ++j) {
    sum += ExactRational(stirling2(m, j)) * power;
    power *= lambda;
  }
  sum.canonicalize();
  return sum;
}

namespace {

PoissonPolynomial multiply(const PoissonPolynomial& poly, const PoissonPolynomial& linear) {
  PoissonPolynomial out;
  for (const auto& [mono, coeff] : poly) {
    for (const auto& [term, c] : linear) {
      PoissonMonomial m = mono;
      for (const auto& [var, e] : term) m[var] += e;
      out[m] += coeff * c;
    }
  }
  return out;
}

}  // namespace

PoissonPolynomial expand_limit_polynomial(const ObservableSpec& spec) {
  PoissonPolynomial poly{{PoissonMonomial{}, ExactInt(1)}};
  for (std::uint32_t i = 0; i < spec.size(); ++i) {
    const auto& g = spec.groups()[i];
    for (int s = 0; s < g.power; ++s) {
      for (int a : g.exponents) {
        PoissonPolynomial linear;
        for (auto k : divisors(a))
          linear[PoissonMonomial{{PoissonVariable{i, static_cast<std::uint32_t>(k)}, 1u}}] = ExactInt(static_cast<long>(k));
        poly = multiply(poly, linear);
      }
    }
  }
  return poly;
}

ExactRational expectation(const PoissonPolynomial& poly) {
  ExactRational sum = 0;
  std::map<std::pair<std::uint32_t, unsigned>, ExactRational> moments;
  for (const auto& [mono, coeff] : poly) {
    ExactRational term(coeff);
    for (const auto& [var, e] : mono) {
      auto key = std::make_pair(var.k, e);
      auto it = moments.find(key);
      if (it == moments.end()) it = moments.emplace(key, poisson_moment(ExactRational(1, var.k), e)).first;
      term *= it->second;
    }
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

LimitValue limit_product_moment(const ObservableSpec& spec) {
  LimitValue out{expectation(expand_limit_polynomial(spec)), spec.to_string(), {}};
  const auto& groups = spec.groups();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (primitivity_certificate(groups[i].word) != PrimitivityCertificate::primitive)
      out.warnings.push_back("primitivity of '" + groups[i].name + "' not certified");
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      if (distinct_in_p0_certificate(groups[i].word, groups[j].word) != DistinctnessCertificate::distinct)
        out.warnings.push_back("distinctness of '" + groups[i].name + "' and '" + groups[j].name + "' not certified");
  }
  return out;
}

ExactRational limit_cycle_moment(const std::vector<CycleFactor>& factors) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, unsigned> total;
  for (const auto& f : factors) {
    if (f.length == 0) throw std::invalid_argument("limit_cycle_moment: cycle length must be >= 1");
    total[{f.group, f.length}] += f.power;
  }
  ExactRational prod = 1;
  for (const auto& [key, power] : total) prod *= poisson_moment(ExactRational(1, key.second), power);
  return prod;
}

bool factorization_identity_check(const ObservableSpec& spec) {
  ExactRational product = 1;
  for (std::size_t i = 0; i < spec.size(); ++i) product *= limit_product_moment(spec.subspec(i)).value;
  return limit_product_moment(spec).value == product;
}

}  // namespace scl
