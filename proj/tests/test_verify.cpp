#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "scl/verify.hpp"

using namespace scl;

namespace {

const Genus g2(2);

ExperimentPlan plan(const char* spec, std::vector<std::uint32_t> ns, std::vector<Method> methods = {}) {
  ExperimentPlan p;
  p.genus = g2;
  p.spec = parse_spec(spec, g2);
  p.n_values = std::move(ns);
  p.methods = std::move(methods);
  p.samples = 4000;
  p.seed = Seed{99, 0};
  return p;
}

}  // namespace

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(run_convergence(plan("", {})), std::invalid_argument);
  CHECK_THROWS_AS(run_convergence(plan("", {3, 3})), std::invalid_argument);
  CHECK_THROWS_AS(run_convergence(plan("", {4, 3})), std::invalid_argument);
  CHECK_THROWS_AS(run_convergence(plan("", {2, 3}, {Method::enumerate})), std::invalid_argument);
  auto p = plan("", {8}, {Method::sample});
  p.samples = 1;
  CHECK_THROWS_AS(run_convergence(p), std::invalid_argument);
}

TEST_CASE("method switchover follows the budget") {
  EnumerationLimits l;
  CHECK(choose_method(4, g2, l) == Method::enumerate);
  CHECK(choose_method(12, g2, l) == Method::sample);
  l.max_visits = 1000;
  CHECK(choose_method(3, g2, l) == Method::enumerate);
  CHECK(choose_method(4, g2, l) == Method::sample);
}

TEST_CASE("enumerated convergence rows are exact") {
  const auto r = run_convergence(plan(R"(x="a1" exps=[1])", {2, 3, 4}));
  REQUIRE(r.rows.size() == 3);
  CHECK(r.prediction == 1);
  CHECK(*r.rows[0].exact_joint == 1);
  CHECK(*r.rows[1].exact_joint == ExactRational(10, 9));
  CHECK(*r.rows[2].exact_joint == ExactRational(97, 89));
  for (const auto& row : r.rows) {
    CHECK(row.method == Method::enumerate);
    CHECK(row.n_error == doctest::Approx(row.n * std::abs(row.joint - 1)));
  }
  const auto empty = run_convergence(plan("", {2, 3, 4}));
  for (const auto& row : empty.rows) CHECK(*row.exact_joint == 1);
}

TEST_CASE("reports are reproducible across runs and thread counts") {
  auto p = plan(R"(x="a1" exps=[1,2]; y="b2" exps=[3])", {4, 7}, {Method::enumerate, Method::sample});
  p.limits.threads = 1;
  const auto a = run_convergence(p);
  p.limits.threads = 3;
  const auto b = run_convergence(p);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].joint == b.rows[i].joint);
    CHECK(a.rows[i].product == b.rows[i].product);
    CHECK(a.rows[i].joint_stderr == b.rows[i].joint_stderr);
  }
  CHECK(*a.rows[0].exact_joint == *b.rows[0].exact_joint);
}

TEST_CASE("sampled standard errors shrink like samples^-1/2") {
  auto p = plan(R"(x="a1" exps=[1])", {8}, {Method::sample});
  p.samples = 10000;
  const double small = run_convergence(p).rows[0].joint_stderr;
  p.samples = 40000;
  const double large = run_convergence(p).rows[0].joint_stderr;
  CHECK(small / large == doctest::Approx(2).epsilon(0.2));
}

TEST_CASE("independence gaps") {
  const auto r = run_independence(plan(R"(x="a1" exps=[1]; y="a2" exps=[1])", {3, 4}));
  CHECK(*r.rows[0].exact_joint - *r.rows[0].exact_product == ExactRational(8, 81));
  for (const auto& row : r.rows) CHECK(row.n * std::abs(row.gap) < 1);
  const auto single = run_independence(plan(R"(x="a1" exps=[1])", {3, 4}));
  for (const auto& row : single.rows) CHECK(row.gap == 0);
  // Two "groups" on the same base stay dependent.
  const auto fake = run_independence(plan(R"(x="a1" exps=[1]; y="a1" exps=[2])", {3, 4}));
  for (const auto& row : fake.rows) CHECK(std::abs(row.gap) > 0.5);
  CHECK_THROWS_AS(run_independence(plan("", {3})), std::invalid_argument);
}

TEST_CASE("sampled gap standard error") {
  auto p = plan(R"(x="a1" exps=[1]; y="a2" exps=[1])", {8}, {Method::sample});
  const auto r = run_independence(p);
  CHECK(r.rows[0].gap_stderr > 0);
  CHECK(r.rows[0].gap == doctest::Approx(r.rows[0].joint - r.rows[0].product));
}

TEST_CASE("cycle convergence") {
  const std::vector<Word> words{parse_word("a1", g2), parse_word("a2", g2)};
  const auto r = run_cycle_convergence(words, 2, plan("", {3, 4}));
  CHECK(r.means.size() == 2 * 2 * 2);
  CHECK(r.covariances.size() == 2 * 4);
  for (const auto& m : r.means)
    if (m.n == 3 && m.d == 1) CHECK(*m.exact_mean == ExactRational(10, 9));
  for (const auto& c : r.covariances)
    if (c.n == 3 && c.d_i == 1 && c.d_j == 1) CHECK(*c.exact_covariance == ExactRational(8, 81));
  // C_2 from the power identity: F(g^2) = F(g) + 2 C_2(g).
  const auto f2 = exact_expectation(4, g2, parse_spec(R"(x="a1^2" exps=[1])", g2));
  const auto f1 = exact_expectation(4, g2, parse_spec(R"(x="a1" exps=[1])", g2));
  for (const auto& m : r.means)
    if (m.n == 4 && m.d == 2 && m.word == 0) CHECK(*m.exact_mean == (f2 - f1) / 2);

  CHECK_THROWS_AS(run_cycle_convergence(words, 4, plan("", {3, 4})), std::invalid_argument);
  CHECK_THROWS_AS(run_cycle_convergence({}, 1, plan("", {3})), std::invalid_argument);

  const auto sampled = run_cycle_convergence(words, 2, plan("", {8}, {Method::sample}));
  for (const auto& c : sampled.covariances) CHECK(c.stderr_of_cov > 0);
}

TEST_CASE("inverse-n fit") {
  const auto exact = fit_inverse_n({{2, 0.5}, {4, 0.25}, {10, 0.1}});
  CHECK(exact.constant == doctest::Approx(1));
  for (double res : exact.residuals) CHECK(std::abs(res) < 1e-12);
  CHECK(exact.max_n_error == doctest::Approx(1));
  CHECK(fit_inverse_n({{2, 0}, {3, 0}, {4, 0}}).constant == 0);
  CHECK_THROWS_AS(fit_inverse_n({{2, 0.1}, {3, 0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_inverse_n({{2, 0.1}, {3, -0.1}, {4, 0}}), std::invalid_argument);
  // Enumerated errors of E_n[F(a1)] give a finite constant.
  const auto r = run_convergence(plan(R"(x="a1" exps=[1])", {2, 3, 4, 5}));
  std::vector<std::pair<std::uint32_t, double>> errors;
  for (const auto& row : r.rows) errors.push_back({row.n, row.error});
  const auto fit = fit_inverse_n(errors);
  CHECK(std::isfinite(fit.constant));
  CHECK(fit.max_n_error < 1);
}
