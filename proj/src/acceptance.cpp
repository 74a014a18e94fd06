#include "scl/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "scl/characters.hpp"
#include "scl/hom_space.hpp"
#include "scl/limits.hpp"
#include "scl/verify.hpp"

namespace scl {
namespace {

const Genus g2(2);

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

std::vector<Permutation> all_permutations(std::uint32_t n) {
  std::vector<point_t> p(n);
  std::iota(p.begin(), p.end(), point_t{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// 1. Hom counts against the quadruple loop.
CriterionResult hom_counts() {
  CriterionResult r{1, "hom counts", true, "", 0};
  for (std::uint32_t n : {2u, 3u, 4u}) {
    const auto perms = all_permutations(n);
    const std::size_t k = perms.size();
    std::vector<Permutation> comm(k * k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) comm[a * k + b] = commutator(perms[a], perms[b]);
    std::uint64_t count = 0;
    Permutation prod;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t c = 0; c < k; ++c)
          for (std::size_t d = 0; d < k; ++d) {
            compose_into(comm[a * k + b], comm[c * k + d], prod);
            count += prod.is_identity();
          }
    const ExactInt formula = hom_count(n, 2);
    r.passed = r.passed && formula == ExactInt(static_cast<unsigned long>(count));
    r.detail += "n=" + std::to_string(n) + ": formula " + formula.get_str() + ", loop " + std::to_string(count) + "; ";
  }
  return r;
}

// 2. Character table.
CriterionResult characters() {
  CriterionResult r{2, "character table", true, "", 0};
  // Columns: 1^5, 21^3, 2^2 1, 31^2, 32, 41, 5.
  const std::vector<Partition> cols{{1, 1, 1, 1, 1}, {2, 1, 1, 1}, {2, 2, 1}, {3, 1, 1}, {3, 2}, {4, 1}, {5}};
  const std::vector<std::pair<Partition, std::vector<long>>> reference{
      {{5}, {1, 1, 1, 1, 1, 1, 1}},          {{4, 1}, {4, 2, 0, 1, -1, 0, -1}},
      {{3, 2}, {5, 1, 1, -1, 1, -1, 0}},     {{3, 1, 1}, {6, 0, -2, 0, 0, 0, 1}},
      {{2, 2, 1}, {5, -1, 1, -1, -1, 1, 0}}, {{2, 1, 1, 1}, {4, -2, 0, 1, 1, 0, -1}},
      {{1, 1, 1, 1, 1}, {1, -1, 1, 1, -1, -1, 1}},
  };
  const auto s5 = character_table(5);
  int mismatches = 0;
  for (const auto& [lambda, values] : reference)
    for (std::size_t c = 0; c < cols.size(); ++c) mismatches += s5->value(lambda, cols[c]) != values[c];
  if (s5->class_count() != reference.size()) ++mismatches;
  r.detail += "S5 mismatches " + std::to_string(mismatches) + "; ";
  r.passed = mismatches == 0;

  int bad_rows = 0;
  for (std::uint32_t n = 1; n <= 8; ++n) {
    const auto t = character_table(n);
    const std::size_t k = t->class_count();
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b) {
        ExactInt s = 0;
        for (std::size_t m = 0; m < k; ++m) s += t->class_size(m) * t->value(a, m) * t->value(b, m);
        bad_rows += s != (a == b ? t->group_order() : ExactInt(0));
      }
  }
  r.detail += "orthogonality failures n<=8: " + std::to_string(bad_rows) + "; ";
  int bad_dims = 0;
  for (std::uint32_t n = 1; n <= 12; ++n) {
    const auto t = character_table(n);
    ExactInt s = 0;
    for (std::size_t l = 0; l < t->class_count(); ++l) s += t->dim(l) * t->dim(l);
    bad_dims += s != factorial(n);
  }
  r.detail += "sum dim^2 != n! for n<=12: " + std::to_string(bad_dims);
  r.passed = r.passed && bad_rows == 0 && bad_dims == 0;
  return r;
}

// 3. Frobenius commutator counts.
CriterionResult frobenius() {
  CriterionResult r{3, "commutator counts", true, "", 0};
  for (std::uint32_t n = 1; n <= 8; ++n) {
    const auto t = character_table(n);
    ExactInt total = 0;
    for (std::size_t m = 0; m < t->class_count(); ++m) {
      const ExactInt c = commutator_count(n, t->partitions()[m]);
      if (c < 0) r.passed = false;
      total += t->class_size(m) * c;
    }
    if (total != t->group_order() * t->group_order()) {
      r.passed = false;
      r.detail += "class sum wrong at n=" + std::to_string(n) + "; ";
    }
  }
  r.detail += "class-weighted sums equal (n!)^2 for n<=8: " + std::string(r.passed ? "yes" : "no") + "; S3 brute force";
  const auto perms = all_permutations(3);
  for (const Partition& mu : {Partition{1, 1, 1}, Partition{2, 1}, Partition{3}}) {
    std::vector<std::vector<point_t>> cycles;
    std::uint32_t pos = 0;
    for (auto len : mu.parts()) {
      std::vector<point_t> c;
      for (std::uint32_t k = 0; k < len; ++k) c.push_back(pos++);
      cycles.push_back(std::move(c));
    }
    const Permutation target = Permutation::from_cycles(3, cycles);
    long count = 0;
    for (const auto& a : perms)
      for (const auto& b : perms) count += commutator(a, b) == target;
    const ExactInt formula = commutator_count(3, mu);
    r.passed = r.passed && formula == count;
    r.detail += " " + mu.to_string() + "=" + formula.get_str() + "/" + std::to_string(count);
  }
  return r;
}

// 4. Sampler against the enumerated uniform law at n=3.
CriterionResult sampler_exactness(const AcceptanceOptions& opt) {
  CriterionResult r{4, "sampler exactness", true, "", 0};
  std::map<std::vector<Permutation>, std::size_t> cell;
  EnumerationLimits lim;
  lim.threads = 1;
  enumerate_homs(
      3, g2,
      [&](const HomPoint& h) {
        cell.emplace(std::vector<Permutation>(h.images().begin(), h.images().end()), cell.size());
      },
      lim);
  const auto plan = build_sampler(3, g2);
  HomSampler sampler(plan, opt.seed);
  std::vector<std::uint64_t> counts(cell.size(), 0);
  HomPoint h = HomPoint::scratch(g2, 3);
  std::uint64_t relator_failures = 0, unknown = 0;
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    sampler.next(h);
    relator_failures += !h.satisfies_relator();
    auto it = cell.find(std::vector<Permutation>(h.images().begin(), h.images().end()));
    if (it == cell.end()) {
      ++unknown;
      continue;
    }
    ++counts[it->second];
  }
  const double N = static_cast<double>(opt.samples), K = static_cast<double>(cell.size());
  const double expected = N / K;
  double chi2 = 0, tv = 0;
  for (auto c : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
    tv += std::abs(c / N - 1.0 / K);
  }
  tv /= 2;
  const double quantile = boost::math::quantile(boost::math::chi_squared(K - 1), 0.999);
  // Expected plug-in distance of an exact sampler, from the normal
  // approximation to each cell count.
  const double floor = std::sqrt(2 * K / (std::numbers::pi * N)) / 2;
  r.passed = cell.size() == 486 && relator_failures == 0 && unknown == 0 && chi2 < quantile && tv < 0.02;
  r.detail = "points " + std::to_string(cell.size()) + ", samples " + std::to_string(opt.samples) + ", TV " +
             fmt(tv) + " (need < 0.02; exact-sampler noise floor " + fmt(floor) + "), chi2 " + fmt(chi2, 5) +
             " vs q0.999 " + fmt(quantile, 5) + ", relator failures " + std::to_string(relator_failures);
  return r;
}

long bell_by_set_partitions(int m) {
  if (m == 0) return 1;
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
  rec(rec, 0, -1);
  return count;
}

// 5. Limit oracle.
CriterionResult limit_oracle() {
  CriterionResult r{5, "limit oracle", true, "", 0};
  const auto spec = parse_spec(R"(gamma="a1" exps=[2,3]; delta="a2" exps=[4])", g2);
  const ExactRational v = limit_product_moment(spec).value;
  int bad_d = 0, bad_bell = 0;
  for (int a = 1; a <= 48; ++a) {
    const ObservableSpec single({{"g", parse_word("a1", g2), {a}, 1}});
    bad_d += limit_product_moment(single).value != d_count(a);
  }
  for (int m = 0; m <= 10; ++m) bad_bell += poisson_moment(1, static_cast<unsigned>(m)) != bell_by_set_partitions(m);
  r.passed = v == 15 && bad_d == 0 && bad_bell == 0;
  r.detail = "worked example " + to_string(v) + ", d(a) mismatches for a<=48: " + std::to_string(bad_d) +
             ", Bell mismatches for m<=10: " + std::to_string(bad_bell);
  return r;
}

ExperimentPlan make_plan(const AcceptanceOptions& opt, ObservableSpec spec, std::vector<std::uint32_t> ns,
                         std::vector<Method> methods) {
  ExperimentPlan p;
  p.genus = g2;
  p.spec = std::move(spec);
  p.n_values = std::move(ns);
  p.methods = std::move(methods);
  p.samples = opt.samples;
  p.seed = opt.seed;
  p.limits.threads = opt.threads;
  return p;
}

// 6. E_n[F(a1)] -> 1.
CriterionResult convergence(const AcceptanceOptions& opt) {
  CriterionResult r{6, "convergence to d(a)", true, "", 0};
  const auto E = Method::enumerate, S = Method::sample;
  const auto report = run_convergence(make_plan(opt, parse_spec(R"(x="a1" exps=[1])", g2), {2, 3, 4, 8, 12, 16},
                                                {E, E, E, S, S, S}));
  std::vector<std::pair<std::uint32_t, double>> errors;
  bool bands = true;
  for (const auto& row : report.rows) {
    errors.push_back({row.n, row.error});
    if (row.method == Method::enumerate) {
      r.detail += "n=" + std::to_string(row.n) + " exact " + to_string(*row.exact_joint) + "; ";
    } else {
      const bool ok = row.error <= 3 * row.joint_stderr;
      bands = bands && ok;
      r.detail += "n=" + std::to_string(row.n) + " " + fmt(row.joint, 6) + "+-" + fmt(row.joint_stderr, 2) +
                  (ok ? "" : " OUTSIDE 3se") + "; ";
    }
  }
  const InverseFit fit = fit_inverse_n(errors);
  const auto& last = report.rows.back();
  const double bound = 5 * fit.constant / last.n;
  const bool tail = last.error < bound;
  r.passed = bands && std::isfinite(fit.max_n_error) && tail;
  r.detail += "C_fit " + fmt(fit.constant) + ", max n*e " + fmt(fit.max_n_error) + " at n=" +
              std::to_string(fit.argmax_n) + ", e_16 " + fmt(last.error) + " vs 5C/16 " + fmt(bound);
  return r;
}

// 7. Asymptotic independence and the same-base negative control.
CriterionResult independence(const AcceptanceOptions& opt) {
  CriterionResult r{7, "asymptotic independence", true, "", 0};
  const auto S = Method::sample;
  const auto real = run_independence(make_plan(
      opt, parse_spec(R"(gamma="a1" exps=[2,3]; delta="a2" exps=[4])", g2), {8, 12, 16}, {S, S, S}));
  const auto& r8 = real.rows.front();
  const auto& r16 = real.rows.back();
  const bool joint_ok = std::abs(r16.joint - 15) <= 3 * r16.joint_stderr;
  const bool gap_ok = std::abs(r16.gap) < std::abs(r8.gap) || std::abs(r16.gap) <= 2 * r16.gap_stderr;
  std::vector<std::pair<std::uint32_t, double>> gaps;
  for (const auto& row : real.rows) gaps.push_back({row.n, std::abs(row.gap)});
  const InverseFit fit = fit_inverse_n(gaps);

  // Powers of a1 split into two fake groups; the joint limit treats them as
  // one group.
  const auto fake_spec = parse_spec(R"(p="a1" exps=[2]; q="a1" exps=[3])", g2);
  const auto fake = run_independence(make_plan(opt, fake_spec, {16}, {S}));
  const ObservableSpec merged({{"a1", parse_word("a1", g2), {2, 3}, 1}});
  const ExactRational true_limit = limit_product_moment(merged).value;
  const ExactRational fake_limit = limit_product_moment(fake_spec).value;
  const double fake_gap = std::abs(fake.rows.back().gap);
  const double bound = 5 * fit.constant / 16;
  const bool control_ok = fake_gap > bound;

  r.passed = joint_ok && gap_ok && control_ok;
  r.detail = "joint_16 " + fmt(r16.joint, 6) + "+-" + fmt(r16.joint_stderr, 2) + (joint_ok ? "" : " OUTSIDE 3se") +
             "; gap_8 " + fmt(r8.gap) + "+-" + fmt(r8.gap_stderr, 2) + ", gap_16 " + fmt(r16.gap) + "+-" +
             fmt(r16.gap_stderr, 2) + (gap_ok ? "" : " NOT SHRINKING") + "; C_fit " + fmt(fit.constant) +
             "; control gap_16 " + fmt(fake_gap) + " vs 5C/16 " + fmt(bound) + " (limits " + to_string(true_limit) +
             " joint vs " + to_string(fake_limit) + " split)";
  return r;
}

// 8. Cycle statistics at n=16.
CriterionResult cycles(const AcceptanceOptions& opt) {
  CriterionResult r{8, "cycle statistics", true, "", 0};
  const std::vector<Word> words{parse_word("a1", g2), parse_word("a2", g2)};
  const auto report = run_cycle_convergence(words, 3, make_plan(opt, {}, {16}, {Method::sample}));
  int bad = 0;
  for (const auto& m : report.means) {
    if (m.word != 0) continue;
    const double target = m.prediction.get_d();
    const bool ok = std::abs(m.mean - target) <= 3 * m.stderr_of_mean;
    bad += !ok;
    r.detail += "C_" + std::to_string(m.d) + " " + fmt(m.mean) + "+-" + fmt(m.stderr_of_mean, 2) + " vs " +
                to_string(m.prediction) + (ok ? "" : " OUTSIDE") + "; ";
  }
  double worst = 0;
  for (const auto& c : report.covariances) {
    const bool ok = std::abs(c.covariance) <= 3 * c.stderr_of_cov;
    bad += !ok;
    worst = std::max(worst, std::abs(c.covariance) / c.stderr_of_cov);
  }
  r.detail += std::to_string(report.covariances.size()) + " covariances, worst |cov|/se " + fmt(worst, 3);
  r.passed = bad == 0;
  return r;
}

// 9. Structural identities on every enumerated hom with n <= 4.
CriterionResult structural(const AcceptanceOptions& opt) {
  CriterionResult r{9, "structural identities", true, "", 0};
  const std::vector<Word> words{parse_word("a1", g2), parse_word("a1 b1", g2), parse_word("b1 a2'", g2),
                                parse_word("a1^2 b2 a2'", g2), parse_word("a1 b1 a1' b1'", g2)};
  const std::vector<Word> conjugators{parse_word("b1", g2), parse_word("a2 b1'", g2)};
  // Words with relator insertions, for the Dehn check.
  std::vector<Word> dehn_words;
  std::mt19937_64 rng(opt.seed.value);
  const Word rel = relator(g2);
  for (int t = 0; t < 20; ++t) {
    std::vector<Letter> raw;
    const std::size_t len = 2 + rng() % 8;
    for (std::size_t i = 0; i < len; ++i)
      raw.push_back({static_cast<std::uint32_t>(rng() % 4), static_cast<std::int8_t>(rng() % 2 ? 1 : -1)});
    const Word base = Word::free_reduce(raw, g2);
    const std::size_t cut = base.size() / 2;
    std::vector<Letter> with(base.letters().begin(), base.letters().begin() + static_cast<std::ptrdiff_t>(cut));
    const Word r1 = t % 2 ? rel : rel.inverse();
    with.insert(with.end(), r1.letters().begin(), r1.letters().end());
    with.insert(with.end(), base.letters().begin() + static_cast<std::ptrdiff_t>(cut), base.letters().end());
    dehn_words.push_back(Word::free_reduce(with, g2));
  }

  std::atomic<std::uint64_t> checks{0}, failures{0}, homs{0};
  EnumerationLimits lim;
  lim.threads = opt.threads;
  for (std::uint32_t n = 1; n <= 4; ++n) {
    enumerate_homs(
        n, g2,
        [&](const HomPoint& h) {
          std::uint64_t c = 0, f = 0;
          for (const auto& w : words) {
            const Permutation img = evaluate_word(h, w);
            std::map<std::int64_t, std::int64_t> fixed;
            for (int a = 1; a <= 6; ++a) {
              ++c;
              f += !power_identity_check(h, w, a);
              fixed[a] = static_cast<std::int64_t>(fix_count(power(img, static_cast<std::uint64_t>(a))));
            }
            const auto counts = cycle_counts(img);
            for (std::int64_t q = 1; q <= 6; ++q) {
              ++c;
              const std::int64_t direct = static_cast<std::size_t>(q) < counts.size() ? counts[static_cast<std::size_t>(q)] : 0;
              f += cycles_from_fixed_points(fixed, q) != direct;
            }
            ++c;
            f += F(h, w.inverse()) != F(h, w);
            for (const auto& cj : conjugators) {
              ++c;
              f += F(h, cj * w * cj.inverse()) != F(h, w);
            }
          }
          for (const auto& w : dehn_words) {
            ++c;
            f += evaluate_word(h, dehn_reduce(w)) != evaluate_word(h, w);
          }
          checks += c;
          failures += f;
          ++homs;
        },
        lim);
  }
  r.passed = failures == 0;
  r.detail = std::to_string(homs.load()) + " homs (n=1..4), " + std::to_string(checks.load()) + " checks, " +
             std::to_string(failures.load()) + " failures";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, const CriterionCallback& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      switch (id) {
        case 1: r = hom_counts(); break;
        case 2: r = characters(); break;
        case 3: r = frobenius(); break;
        case 4: r = sampler_exactness(options); break;
        case 5: r = limit_oracle(); break;
        case 6: r = convergence(options); break;
        case 7: r = independence(options); break;
        case 8: r = cycles(options); break;
        default: r = structural(options); break;
      }
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail +
         " (" + fmt(r.seconds, 3) + " s)";
}

}  // namespace scl
