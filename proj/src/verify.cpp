#include "scl/verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "scl/limits.hpp"

namespace scl {

std::string to_string(Method m) { return m == Method::enumerate ? "enumerate" : "sample"; }

Method choose_method(std::uint32_t n, Genus genus, const EnumerationLimits& limits) {
  if (n > 9) return Method::sample;
  return hom_count(n, genus.value()) <= ExactInt(static_cast<unsigned long>(limits.max_visits)) ? Method::enumerate
                                                                                                 : Method::sample;
}

Method ExperimentPlan::method_for(std::size_t i) const {
  return methods.empty() ? choose_method(n_values.at(i), genus, limits) : methods.at(i);
}

void ExperimentPlan::validate() const {
  if (n_values.empty()) throw std::invalid_argument("plan has no n values");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw std::invalid_argument("plan n values must be >= 1");
    if (i && n_values[i] <= n_values[i - 1]) throw std::invalid_argument("plan n values must be strictly increasing");
  }
  if (!methods.empty() && methods.size() != n_values.size())
    throw std::invalid_argument("plan needs one method per n value");
  if (auto g = spec.genus(); g && !(*g == genus)) throw std::invalid_argument("spec genus differs from plan genus");
  for (std::size_t i = 0; i < n_values.size(); ++i)
    if (method_for(i) == Method::sample && samples < 2) throw std::invalid_argument("sampling needs >= 2 samples");
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ms(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

// Seed for the sampled run at one n: same seed value, stream tagged by n.
Seed seed_for(const Seed& base, std::uint32_t n) { return Seed{base.value, base.stream * 1000 + n}; }

// Column means of an integer sample matrix and the product of the group
// means with a delta-method standard error for joint - product.
void fill_sampled(const SampleMatrix& m, std::size_t groups, ConvergenceRow& row) {
  const std::size_t N = m.rows();
  row.joint = m.mean(0);
  row.joint_stderr = m.stderr_of_mean(0);
  row.group_means.resize(groups);
  row.product = 1;
  for (std::size_t i = 0; i < groups; ++i) {
    row.group_means[i] = m.mean(i + 1);
    row.product *= row.group_means[i];
  }
  row.gap = row.joint - row.product;
  // Influence of each sample on joint - prod_i mean_i.
  std::vector<double> partial(groups, 1);
  for (std::size_t i = 0; i < groups; ++i)
    for (std::size_t j = 0; j < groups; ++j)
      if (i != j) partial[i] *= row.group_means[j];
  long double sum = 0, sq = 0;
  for (std::size_t r = 0; r < N; ++r) {
    long double phi = static_cast<long double>(m.at(r, 0));
    for (std::size_t i = 0; i < groups; ++i) phi -= partial[i] * static_cast<long double>(m.at(r, i + 1));
    sum += phi;
    sq += phi * phi;
  }
  const long double n = static_cast<long double>(N);
  long double var = (sq - sum * sum / n) / (n - 1);
  if (var < 0) var = 0;
  row.gap_stderr = static_cast<double>(std::sqrt(var / n));
}

ConvergenceReport run_rows(const ExperimentPlan& plan, std::string kind) {
  plan.validate();
  ConvergenceReport report;
  report.kind = std::move(kind);
  report.genus = plan.genus;
  report.spec = plan.spec.to_string();
  report.seed = plan.seed;
  if (plan.spec.empty()) {
    report.prediction = 1;
  } else {
    auto limit = limit_product_moment(plan.spec);
    report.prediction = limit.value;
    report.warnings = std::move(limit.warnings);
  }
  const double prediction = report.prediction.get_d();
  const std::size_t groups = plan.spec.size();

  for (std::size_t i = 0; i < plan.n_values.size(); ++i) {
    const auto start = Clock::now();
    ConvergenceRow row;
    row.n = plan.n_values[i];
    row.method = plan.method_for(i);
    if (row.method == Method::enumerate) {
      const ExactTotals t = exact_totals(row.n, plan.genus, plan.spec, plan.limits);
      row.exact_joint = t.joint_mean();
      row.exact_product = t.product_of_group_means();
      row.joint = row.exact_joint->get_d();
      row.product = row.exact_product->get_d();
      for (std::size_t k = 0; k < groups; ++k) row.group_means.push_back(t.group_mean(k).get_d());
      ExactRational gap = *row.exact_joint - *row.exact_product;
      row.gap = gap.get_d();
      ExactRational err = abs(*row.exact_joint - report.prediction);
      row.error = err.get_d();
    } else {
      const SamplerPlan sp = build_sampler(row.n, plan.genus);
      auto factory = [&plan, groups]() -> RowFiller {
        auto eval = std::make_shared<SpecEvaluator>(plan.spec);
        return [eval, groups](const HomPoint& h, std::span<std::int64_t> out) {
          out[0] = eval->evaluate(h, out.subspan(1, groups));
        };
      };
      const SampleMatrix m =
          sample_rows(sp, groups + 1, factory, plan.samples, seed_for(plan.seed, row.n), plan.limits.threads);
      fill_sampled(m, groups, row);
      row.samples = plan.samples;
      row.error = std::abs(row.joint - prediction);
    }
    row.n_error = row.n * row.error;
    row.runtime_ms = elapsed_ms(start);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

ConvergenceReport run_convergence(const ExperimentPlan& plan) { return run_rows(plan, "convergence"); }

ConvergenceReport run_independence(const ExperimentPlan& plan) {
  if (plan.spec.empty()) throw std::invalid_argument("independence needs at least one group");
  return run_rows(plan, "independence");
}

namespace {

// Column layout of the cycle statistics: value column (word, d) and the
// cross products between distinct words.
struct CycleLayout {
  std::size_t words;
  std::uint32_t max_d;
  std::vector<std::array<std::size_t, 2>> products;  // value column pairs

  std::size_t column(std::size_t w, std::uint32_t d) const { return w * max_d + (d - 1); }
  std::size_t values() const { return words * max_d; }
  std::size_t width() const { return values() + products.size(); }

  CycleLayout(std::size_t w, std::uint32_t d) : words(w), max_d(d) {
    for (std::size_t i = 0; i < words; ++i)
      for (std::size_t j = i + 1; j < words; ++j)
        for (std::uint32_t a = 1; a <= max_d; ++a)
          for (std::uint32_t b = 1; b <= max_d; ++b) products.push_back({column(i, a), column(j, b)});
  }

  void fill(const std::vector<Word>& ws, WordEvaluator& eval, Permutation& img, const HomPoint& h,
            std::span<std::int64_t> out) const {
    for (std::size_t w = 0; w < words; ++w) {
      eval.evaluate(h, ws[w], img);
      const auto counts = cycle_counts(img);
      for (std::uint32_t d = 1; d <= max_d; ++d)
        out[column(w, d)] = d < counts.size() ? static_cast<std::int64_t>(counts[d]) : 0;
    }
    if (out.size() < width()) return;
    for (std::size_t p = 0; p < products.size(); ++p)
      out[values() + p] = out[products[p][0]] * out[products[p][1]];
  }
};

}  // namespace

CycleReport run_cycle_convergence(const std::vector<Word>& words, std::uint32_t max_d, const ExperimentPlan& plan) {
  if (words.empty()) throw std::invalid_argument("cycle convergence needs at least one word");
  if (max_d < 1) throw std::invalid_argument("max_d must be >= 1");
  ExperimentPlan p = plan;
  p.spec = ObservableSpec();
  p.validate();
  if (max_d > p.n_values.front()) throw std::invalid_argument("max_d exceeds the smallest n");
  for (const auto& w : words) {
    if (!(w.genus() == p.genus)) throw std::invalid_argument("word genus differs from plan genus");
    if (is_identity(w)) throw std::invalid_argument("cycle statistics of the identity word");
  }

  CycleReport report;
  report.genus = p.genus;
  for (const auto& w : words) report.words.push_back(w.to_string());
  report.max_d = max_d;
  report.seed = p.seed;
  report.samples = p.samples;
  const CycleLayout layout(words.size(), max_d);

  for (std::size_t i = 0; i < p.n_values.size(); ++i) {
    const std::uint32_t n = p.n_values[i];
    const Method method = p.method_for(i);
    const std::size_t W = layout.width();
    if (method == Method::enumerate) {
      std::uint32_t keys = 1;
      for (std::uint32_t k = 2; k <= n; ++k) keys *= k;
      std::vector<std::int64_t> partial(static_cast<std::size_t>(keys) * W, 0);
      struct Scratch {
        WordEvaluator eval;
        Permutation img;
        std::vector<std::int64_t> row;
      };
      // Keys are owned by one worker each, so per-key rows need no locking;
      // the scratch state is per thread.
      const std::uint64_t visits = enumerate_homs(
          n, p.genus,
          KeyedHomVisitor([&](std::uint32_t key, const HomPoint& h) {
            thread_local Scratch s;
            s.row.resize(W);
            layout.fill(words, s.eval, s.img, h, s.row);
            std::int64_t* acc = partial.data() + static_cast<std::size_t>(key) * W;
            for (std::size_t c = 0; c < W; ++c) acc[c] += s.row[c];
          }),
          p.limits);
      std::vector<ExactInt> sums(W, 0);
      for (std::uint32_t k = 0; k < keys; ++k)
        for (std::size_t c = 0; c < W; ++c) sums[c] += ExactInt(static_cast<long>(partial[static_cast<std::size_t>(k) * W + c]));
      const ExactInt total(static_cast<unsigned long>(visits));
      auto mean_of = [&](std::size_t c) {
        ExactRational q(sums[c], total);
        q.canonicalize();
        return q;
      };
      for (std::size_t w = 0; w < words.size(); ++w)
        for (std::uint32_t d = 1; d <= max_d; ++d) {
          const ExactRational m = mean_of(layout.column(w, d));
          report.means.push_back({n, method, w, d, m.get_d(), 0, ExactRational(1, d), m});
        }
      std::size_t p_idx = 0;
      for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b)
          for (std::uint32_t da = 1; da <= max_d; ++da)
            for (std::uint32_t db = 1; db <= max_d; ++db, ++p_idx) {
              const auto& pr = layout.products[p_idx];
              ExactRational cov = mean_of(layout.values() + p_idx) - mean_of(pr[0]) * mean_of(pr[1]);
              cov.canonicalize();
              report.covariances.push_back({n, method, a, b, da, db, cov.get_d(), 0, cov});
            }
    } else {
      const SamplerPlan sp = build_sampler(n, p.genus);
      auto factory = [&]() -> RowFiller {
        auto eval = std::make_shared<WordEvaluator>();
        auto img = std::make_shared<Permutation>();
        return [&layout, &words, eval, img](const HomPoint& h, std::span<std::int64_t> out) {
          layout.fill(words, *eval, *img, h, out);
        };
      };
      const SampleMatrix m = sample_rows(sp, layout.values(), factory, p.samples, seed_for(p.seed, n), p.limits.threads);
      for (std::size_t w = 0; w < words.size(); ++w)
        for (std::uint32_t d = 1; d <= max_d; ++d) {
          const std::size_t c = layout.column(w, d);
          report.means.push_back({n, method, w, d, m.mean(c), m.stderr_of_mean(c), ExactRational(1, d), std::nullopt});
        }
      std::size_t p_idx = 0;
      const auto N = static_cast<long double>(m.rows());
      for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = a + 1; b < words.size(); ++b)
          for (std::uint32_t da = 1; da <= max_d; ++da)
            for (std::uint32_t db = 1; db <= max_d; ++db, ++p_idx) {
              const auto& pr = layout.products[p_idx];
              const long double mx = m.mean(pr[0]), my = m.mean(pr[1]);
              // Sample covariance and the standard error of the mean of the
              // centred products.
              long double s = 0, sq = 0;
              for (std::size_t r = 0; r < m.rows(); ++r) {
                const long double v = (m.at(r, pr[0]) - mx) * (m.at(r, pr[1]) - my);
                s += v;
                sq += v * v;
              }
              const long double cov = s / (N - 1);
              long double var = (sq - s * s / N) / (N - 1);
              if (var < 0) var = 0;
              report.covariances.push_back({n, method, a, b, da, db, static_cast<double>(cov),
                                            static_cast<double>(std::sqrt(var / N)), std::nullopt});
            }
    }
  }
  return report;
}

InverseFit fit_inverse_n(const std::vector<std::pair<std::uint32_t, double>>& errors) {
  if (errors.size() < 3) throw std::invalid_argument("fit_inverse_n needs at least three points");
  double num = 0, den = 0;
  for (auto [n, e] : errors) {
    if (n < 1) throw std::invalid_argument("fit_inverse_n: n must be >= 1");
    if (!(e >= 0)) throw std::invalid_argument("fit_inverse_n: errors must be non-negative");
    num += e / n;
    den += 1.0 / (static_cast<double>(n) * n);
  }
  InverseFit fit;
  fit.constant = num / den;
  for (auto [n, e] : errors) {
    fit.residuals.push_back(e - fit.constant / n);
    if (n * e >= fit.max_n_error) {
      fit.max_n_error = n * e;
      fit.argmax_n = n;
    }
  }
  return fit;
}

}  // namespace scl
