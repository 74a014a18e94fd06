#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "scl/hom_space.hpp"

namespace scl {

ExactInt SamplerPlan::tau_weight(std::size_t cls) const {
  return cls == 0 ? tau_cumulative_[0] : ExactInt(tau_cumulative_[cls] - tau_cumulative_[cls - 1]);
}

namespace {

std::vector<ExactInt> cumulative(const std::vector<ExactInt>& weights) {
  std::vector<ExactInt> out(weights.size());
  ExactInt running = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0) throw std::logic_error("negative sampler weight");
    running += weights[i];
    out[i] = running;
  }
  return out;
}

}  // namespace

SamplerPlan build_sampler(std::uint32_t n, Genus genus) {
  if (n < 1) throw std::invalid_argument("build_sampler: n must be >= 1");
  SamplerPlan plan(n, genus);
  plan.table_ = character_table(n);
  const auto& table = *plan.table_;
  const auto& classes = table.partitions();
  const int g = genus.value();

  for (const auto& cls : classes) plan.fiber_size_.push_back(commutator_count(n, cls));
  plan.fiber_max_ = plan.fiber_size_[table.index_of(Partition(std::vector<std::uint32_t>(n, 1)))];
  for (const auto& f : plan.fiber_size_)
    if (f > plan.fiber_max_) throw std::logic_error("commutator fiber larger than the identity fiber");

  std::vector<ExactInt> tau(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    tau[c] = table.class_size(c) * g_commutator_product_count(n, g - 1, classes[c]) * plan.fiber_size_[c];
  plan.tau_cumulative_ = cumulative(tau);
  if (plan.total_weight() != hom_count(n, g))
    throw std::logic_error("sampler weights sum to " + plan.total_weight().get_str() + ", expected hom_count " +
                           hom_count(n, g).get_str());

  for (int k = 1; k <= g - 2; ++k) {
    std::vector<ExactInt> w(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c)
      w[c] = table.class_size(c) * g_commutator_product_count(n, k, classes[c]);
    plan.proposal_cumulative_.push_back(cumulative(w));
    ExactInt all;
    mpz_pow_ui(all.get_mpz_t(), table.group_order().get_mpz_t(), static_cast<unsigned long>(2 * k));
    if (plan.proposal_cumulative_.back().back() != all)
      throw std::logic_error("chain proposal weights do not sum to (n!)^2k");
  }

  plan.small_fibers_ = plan.fiber_max_.fits_ulong_p();
  if (plan.small_fibers_) {
    plan.fiber_max_u64_ = plan.fiber_max_.get_ui();
    for (const auto& f : plan.fiber_size_) plan.fiber_size_u64_.push_back(f.get_ui());
  }
  return plan;
}

HomSampler::HomSampler(const SamplerPlan& plan, Seed seed)
    : plan_(&plan), rng_(seed), shuffle_(plan.degree()), counts_(plan.degree() + 1) {}

std::size_t HomSampler::draw_class(const std::vector<ExactInt>& cum) {
  const ExactInt u = rng_.below(cum.back());
  return static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
}

void HomSampler::random_in_class(std::size_t cls, Permutation& out) {
  const std::uint32_t n = plan_->degree();
  std::iota(shuffle_.begin(), shuffle_.end(), point_t{0});
  for (std::uint32_t i = n; i > 1; --i) std::swap(shuffle_[i - 1], shuffle_[rng_.below(i)]);
  auto& dst = PermutationBuilder::storage(out);
  dst.resize(n);
  std::size_t pos = 0;
  for (auto len : plan_->table().partitions()[cls].parts()) {
    for (std::uint32_t k = 0; k < len; ++k) dst[shuffle_[pos + k]] = shuffle_[pos + (k + 1) % len];
    pos += len;
  }
}

std::size_t HomSampler::class_of(const Permutation& p) { return plan_->table().index_of(cycle_type(p)); }

bool HomSampler::accept_fiber(const Permutation& sigma) {
  const std::size_t cls = class_of(sigma);
  if (plan_->small_fibers_) return rng_.below(plan_->fiber_max_u64_) < plan_->fiber_size_u64_[cls];
  return rng_.below(plan_->fiber_max_) < plan_->fiber_size_[cls];
}

namespace {

void cycles_by_length(std::span<const point_t> p, std::vector<std::vector<std::vector<point_t>>>& out) {
  for (auto& bucket : out) bucket.clear();
  std::vector<bool> seen(p.size(), false);
  for (point_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<point_t> c;
    for (point_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      c.push_back(j);
    }
    out[c.size()].push_back(std::move(c));
  }
}

}  // namespace

void HomSampler::sample_fiber(const Permutation& sigma, Permutation& a, Permutation& b) {
  const std::uint32_t n = plan_->degree();
  const auto classes = static_cast<std::uint64_t>(plan_->table().class_count());
  Permutation y;
  for (;;) {
    random_in_class(static_cast<std::size_t>(rng_.below(classes)), a);
    compose_into(a, sigma, y);
    if (cycle_counts(a) == cycle_counts(y)) break;
  }
  // Uniform b with b^-1 a b = y: match equal-length cycles in random order
  // and rotate each match uniformly.
  std::vector<std::vector<std::vector<point_t>>> ca(n + 1), cy(n + 1);
  cycles_by_length(a.images(), ca);
  cycles_by_length(y.images(), cy);
  auto& dst = PermutationBuilder::storage(b);
  dst.resize(n);
  for (std::uint32_t len = 1; len <= n; ++len) {
    auto& targets = cy[len];
    for (std::size_t i = targets.size(); i > 1; --i) std::swap(targets[i - 1], targets[rng_.below(i)]);
    for (std::size_t k = 0; k < ca[len].size(); ++k) {
      const std::uint64_t r = rng_.below(len);
      for (std::uint32_t s = 0; s < len; ++s) dst[ca[len][k][s]] = targets[k][(s + r) % len];
    }
  }
}

void HomSampler::sample_chain(std::size_t pairs, const Permutation& target, HomPoint& out) {
  Permutation a, b;
  if (pairs == 1) {
    sample_fiber(target, a, b);
    out.set(0, a);
    out.set(1, b);
    return;
  }
  const auto& proposal = plan_->proposal_cumulative_[pairs - 2];
  Permutation prefix, rest;
  for (;;) {
    random_in_class(draw_class(proposal), prefix);
    compose_into(inverse(prefix), target, rest);
    if (accept_fiber(rest)) break;
  }
  sample_chain(pairs - 1, prefix, out);
  sample_fiber(rest, a, b);
  out.set(2 * (pairs - 1), a);
  out.set(2 * (pairs - 1) + 1, b);
}

void HomSampler::next(HomPoint& out) {
  const auto g = static_cast<std::size_t>(plan_->genus().value());
  Permutation tau, a, b;
  random_in_class(draw_class(plan_->tau_cumulative_), tau);
  sample_fiber(inverse(tau), a, b);
  out.set(2 * (g - 1), a);
  out.set(2 * (g - 1) + 1, b);
  sample_chain(g - 1, tau, out);
}

HomPoint HomSampler::next() {
  HomPoint h = HomPoint::scratch(plan_->genus(), plan_->degree());
  next(h);
  return h;
}

HomPoint sample_hom(const SamplerPlan& plan, Seed seed) {
  HomSampler sampler(plan, seed);
  return sampler.next();
}

double SampleMatrix::mean(std::size_t col) const {
  __int128 sum = 0;
  for (std::size_t r = 0; r < rows(); ++r) sum += at(r, col);
  return static_cast<double>(static_cast<long double>(sum) / static_cast<long double>(rows()));
}

double SampleMatrix::stderr_of_mean(std::size_t col) const {
  const std::size_t n = rows();
  if (n < 2) return 0;
  __int128 sum = 0, sq = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const __int128 v = at(r, col);
    sum += v;
    sq += v * v;
  }
  const auto N = static_cast<long double>(n);
  const long double s = static_cast<long double>(sum);
  long double var = (static_cast<long double>(sq) - s * s / N) / (N - 1);
  if (var < 0) var = 0;
  return static_cast<double>(std::sqrt(var / N));
}

SampleMatrix sample_rows(const SamplerPlan& plan, std::size_t width, const RowFillerFactory& make_filler,
                         std::uint64_t samples, Seed seed, unsigned threads) {
  SampleMatrix m;
  m.width = width;
  m.values.assign(samples * width, 0);
  const std::uint64_t shards = (samples + kSamplesPerShard - 1) / kSamplesPerShard;
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    RowFiller fill = make_filler();
    HomPoint h = HomPoint::scratch(plan.genus(), plan.degree());
    for (std::uint64_t s = next++; s < shards; s = next++) {
      HomSampler sampler(plan, Seed{seed.value, (seed.stream << 32) | s});
      const std::uint64_t end = std::min(samples, (s + 1) * kSamplesPerShard);
      for (std::uint64_t r = s * kSamplesPerShard; r < end; ++r) {
        sampler.next(h);
        fill(h, std::span<std::int64_t>(m.values.data() + r * width, width));
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(threads), std::max<std::uint64_t>(shards, 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return m;
}

McEstimate monte_carlo_expectation(const SamplerPlan& plan, const ObservableSpec& spec, std::uint64_t samples,
                                   Seed seed, unsigned threads) {
  if (samples < 2) throw std::invalid_argument("monte_carlo_expectation needs at least 2 samples");
  auto factory = [&spec]() -> RowFiller {
    auto eval = std::make_shared<SpecEvaluator>(spec);
    return [eval](const HomPoint& h, std::span<std::int64_t> row) { row[0] = eval->evaluate(h); };
  };
  const SampleMatrix m = sample_rows(plan, 1, factory, samples, seed, threads);
  return {m.mean(0), m.stderr_of_mean(0), samples, seed};
}

}  // namespace scl
