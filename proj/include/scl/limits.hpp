#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scl/exact.hpp"
#include "scl/observables.hpp"

namespace scl {

/// m-th raw moment of Poisson(lambda): sum_j S(m, j) lambda^j with Stirling
/// numbers of the second kind. Throws std::invalid_argument if lambda <= 0.
ExactRational poisson_moment(const ExactRational& lambda, unsigned m);

/// Stirling number of the second kind from the cached triangle.
ExactInt stirling2(unsigned m, unsigned j);

/// Variable Z^{(group)}_{1/k}.
struct PoissonVariable {
  std::uint32_t group;
  std::uint32_t k;
  friend auto operator<=>(const PoissonVariable&, const PoissonVariable&) = default;
};

/// Sparse monomial: variable -> exponent (all >= 1).
using PoissonMonomial = std::map<PoissonVariable, unsigned>;
/// Polynomial with integer coefficients in the Z variables.
using PoissonPolynomial = std::map<PoissonMonomial, ExactInt>;

/// Expands prod_i (prod_j sum_{k | a_ij} k Z^{(i)}_{1/k})^{s_i} over the whole
/// spec, merging repeated variables.
PoissonPolynomial expand_limit_polynomial(const ObservableSpec& spec);

/// Expectation of a polynomial under independent Z^{(i)}_{1/k} ~ Poisson(1/k).
ExactRational expectation(const PoissonPolynomial& poly);

struct LimitValue {
  ExactRational value;
  std::string spec;
  /// Hypotheses the certificates could not confirm (primitivity of a base
  /// word, distinctness of two bases up to conjugacy and inversion).
  std::vector<std::string> warnings;
};

/// Limit as n -> infinity of E_n of the joint spec observable, assuming each
/// base word is primitive and the bases are pairwise distinct up to
/// conjugacy and inversion. Unconfirmed assumptions become warnings.
LimitValue limit_product_moment(const ObservableSpec& spec);

/// (group, cycle length j, power s): the factor C_{n,j}(gamma_group)^s.
struct CycleFactor {
  std::uint32_t group;
  std::uint32_t length;
  unsigned power;
};

/// prod over distinct (group, j) of E[Z_{1/j}^{total power}]. Throws
/// std::invalid_argument on a zero cycle length.
ExactRational limit_cycle_moment(const std::vector<CycleFactor>& factors);

/// limit_product_moment(spec) equals the product over single-group subspecs.
bool factorization_identity_check(const ObservableSpec& spec);

}  // namespace scl
