#include "scl/hom_space.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace scl {

unsigned worker_count(unsigned requested) {
  unsigned workers = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("SCL_THREADS")) {
    const long limit = std::strtol(cap, nullptr, 10);
    if (limit >= 1) workers = std::min(workers, static_cast<unsigned>(limit));
  }
  return std::max(1u, workers);
}

PermutationIndex::PermutationIndex(std::uint32_t n) : n_(n), count_(1) {
  if (n > 9) throw BudgetExceeded("permutation index limited to n <= 9");
  for (std::uint32_t k = 2; k <= n; ++k) count_ *= k;
  table_.reserve(static_cast<std::size_t>(count_) * n);
  std::vector<point_t> p(n);
  std::iota(p.begin(), p.end(), point_t{0});
  do {
    table_.insert(table_.end(), p.begin(), p.end());
  } while (std::next_permutation(p.begin(), p.end()));
  inverse_.resize(count_);
  std::vector<point_t> inv(n);
  for (std::uint32_t r = 0; r < count_; ++r) {
    const auto img = images(r);
    for (std::uint32_t i = 0; i < n; ++i) inv[img[i]] = i;
    inverse_[r] = rank(inv);
  }
}

Permutation PermutationIndex::permutation(std::uint32_t rank) const {
  const auto img = images(rank);
  return PermutationBuilder::adopt({img.begin(), img.end()});
}

std::uint32_t PermutationIndex::rank(std::span<const point_t> images) const {
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    std::uint32_t smaller = 0;
    for (std::uint32_t j = i + 1; j < n_; ++j) smaller += images[j] < images[i];
    r = r * (n_ - i) + smaller;
  }
  return r;
}

std::span<const BucketPair> CommutatorBuckets::bucket(std::uint32_t sigma) const {
  if (!materialized()) throw std::logic_error("commutator pairs are not stored for this degree");
  return {pairs_.data() + offsets_[sigma], pairs_.data() + offsets_[sigma + 1]};
}

std::uint64_t CommutatorBuckets::total() const {
  return std::accumulate(sizes_.begin(), sizes_.end(), std::uint64_t{0});
}

namespace {

std::vector<std::vector<point_t>> cycles_of(std::span<const point_t> p) {
  std::vector<std::vector<point_t>> cycles;
  std::vector<bool> seen(p.size(), false);
  for (point_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    auto& c = cycles.emplace_back();
    for (point_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      c.push_back(j);
    }
  }
  return cycles;
}

// Every b with y(b(j)) = b(x(j)), i.e. b^-1 x b = y under left-to-right products.
void for_each_conjugator(std::span<const point_t> x, std::span<const point_t> y,
                         const std::function<void(std::span<const point_t>)>& emit) {
  const std::size_t n = x.size();
  auto cx = cycles_of(x), cy = cycles_of(y);
  auto by_len = [](auto& cs) {
    std::stable_sort(cs.begin(), cs.end(), [](auto& l, auto& r) { return l.size() < r.size(); });
  };
  by_len(cx);
  by_len(cy);
  if (cx.size() != cy.size()) return;
  for (std::size_t k = 0; k < cx.size(); ++k)
    if (cx[k].size() != cy[k].size()) return;
  std::vector<point_t> b(n);
  std::vector<bool> used(cy.size(), false);
  // Assign x-cycle k to an unused y-cycle of equal length with some rotation.
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == cx.size()) {
      emit(b);
      return;
    }
    const std::size_t len = cx[k].size();
    for (std::size_t t = 0; t < cy.size(); ++t) {
      if (used[t] || cy[t].size() != len) continue;
      used[t] = true;
      for (std::size_t r = 0; r < len; ++r) {
        for (std::size_t s = 0; s < len; ++s) b[cx[k][s]] = cy[t][(s + r) % len];
        rec(k + 1);
      }
      used[t] = false;
    }
  };
  rec(0);
}

}  // namespace

std::vector<BucketPair> CommutatorBuckets::regenerate(std::uint32_t sigma) const {
  const auto& idx = *index_;
  const auto s = idx.images(sigma);
  const std::uint32_t n = idx.degree();
  std::vector<BucketPair> out;
  std::vector<point_t> y(n);
  for (std::uint32_t a = 0; a < idx.size(); ++a) {
    const auto x = idx.images(a);
    for (std::uint32_t i = 0; i < n; ++i) y[i] = s[x[i]];
    const std::size_t first = out.size();
    for_each_conjugator(x, y, [&](std::span<const point_t> b) { out.push_back({a, idx.rank(b)}); });
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
              [](BucketPair l, BucketPair r) { return l.b < r.b; });
  }
  return out;
}

std::vector<BucketPair> CommutatorBuckets::pairs(std::uint32_t sigma) const {
  if (materialized()) {
    auto b = bucket(sigma);
    return {b.begin(), b.end()};
  }
  return regenerate(sigma);
}

CommutatorBuckets build_buckets(std::uint32_t n, const EnumerationLimits& limits) {
  if (n < 1 || n > 9) throw BudgetExceeded("commutator buckets are available for 1 <= n <= 9 only");
  CommutatorBuckets out;
  out.index_ = std::make_shared<const PermutationIndex>(n);
  const auto& idx = *out.index_;
  const std::uint64_t count = idx.size();
  out.sizes_.assign(count, 0);

  if (n <= limits.materialize_threshold) {
    const std::uint64_t bytes = count * count * (sizeof(BucketPair) + sizeof(std::uint32_t));
    if (bytes > limits.max_memory_bytes)
      throw BudgetExceeded("commutator pair table needs " + std::to_string(bytes) + " bytes");
    std::vector<std::uint32_t> keys(count * count);
    std::vector<point_t> sigma(n);
    for (std::uint32_t a = 0; a < count; ++a) {
      const auto pa = idx.images(a), ia = idx.images(idx.inverse_rank(a));
      for (std::uint32_t b = 0; b < count; ++b) {
        const auto pb = idx.images(b), ib = idx.images(idx.inverse_rank(b));
        // a^-1, then b^-1, then a, then b.
        for (std::uint32_t i = 0; i < n; ++i) sigma[i] = pb[pa[ib[ia[i]]]];
        const auto key = idx.rank(sigma);
        keys[static_cast<std::size_t>(a) * count + b] = key;
        ++out.sizes_[key];
      }
    }
    out.offsets_.assign(count + 1, 0);
    for (std::uint64_t s = 0; s < count; ++s) out.offsets_[s + 1] = out.offsets_[s] + out.sizes_[s];
    out.pairs_.resize(count * count);
    std::vector<std::uint64_t> cursor(out.offsets_.begin(), out.offsets_.end() - 1);
    for (std::uint32_t a = 0; a < count; ++a)
      for (std::uint32_t b = 0; b < count; ++b)
        out.pairs_[cursor[keys[static_cast<std::size_t>(a) * count + b]]++] = {a, b};
  } else {
    const auto table = character_table(n);
    std::vector<std::uint64_t> per_class(table->class_count());
    for (std::size_t c = 0; c < per_class.size(); ++c)
      per_class[c] = commutator_count(n, table->partitions()[c]).get_ui();
    for (std::uint32_t s = 0; s < count; ++s)
      out.sizes_[s] = per_class[table->index_of(cycle_type(idx.permutation(s)))];
  }
  return out;
}

namespace {

using VisitorFactory = std::function<KeyedHomVisitor()>;

class Enumerator {
 public:
  Enumerator(const CommutatorBuckets& buckets, Genus genus, KeyedHomVisitor visit)
      : buckets_(buckets), idx_(buckets.index()), genus_(genus), visit_(std::move(visit)),
        hom_(HomPoint::scratch(genus, buckets.degree())) {}

  std::uint64_t run_key(std::uint32_t key) {
    visits_ = 0;
    key_ = key;
    const auto last = buckets_.pairs(idx_.inverse_rank(key));
    if (last.empty()) return 0;
    const auto g = static_cast<std::size_t>(genus_.value());
    chain(g - 1, 0, key, [&] {
      for (const auto& p : last) {
        set_pair(g - 1, p);
        visit_(key_, hom_);
        ++visits_;
      }
    });
    return visits_;
  }

 private:
  void set_pair(std::size_t slot, BucketPair p) {
    hom_.set(2 * slot, idx_.images(p.a), idx_.images(idx_.inverse_rank(p.a)));
    hom_.set(2 * slot + 1, idx_.images(p.b), idx_.images(idx_.inverse_rank(p.b)));
  }

  // All chains of `count` commutator pairs starting at `slot` with product `target`.
  template <class Tail>
  void chain(std::size_t count, std::size_t slot, std::uint32_t target, const Tail& tail) {
    if (count == 1) {
      for (const auto& p : buckets_.pairs(target)) {
        set_pair(slot, p);
        tail();
      }
      return;
    }
    const std::uint32_t n = idx_.degree();
    const auto t = idx_.images(target);
    std::vector<point_t> rest(n);
    for (std::uint32_t tau = 0; tau < idx_.size(); ++tau) {
      if (buckets_.bucket_size(tau) == 0) continue;
      // rest = tau^-1 * target.
      const auto inv = idx_.images(idx_.inverse_rank(tau));
      for (std::uint32_t i = 0; i < n; ++i) rest[i] = t[inv[i]];
      const auto rest_rank = idx_.rank(rest);
      for (const auto& p : buckets_.pairs(tau)) {
        set_pair(slot, p);
        chain(count - 1, slot + 1, rest_rank, tail);
      }
    }
  }

  const CommutatorBuckets& buckets_;
  const PermutationIndex& idx_;
  Genus genus_;
  KeyedHomVisitor visit_;
  HomPoint hom_;
  std::uint32_t key_ = 0;
  std::uint64_t visits_ = 0;
};

std::uint64_t enumerate_impl(std::uint32_t n, Genus genus, const VisitorFactory& make_visitor,
                             const EnumerationLimits& limits) {
  const ExactInt expected = hom_count(n, genus.value());
  if (expected > ExactInt(static_cast<unsigned long>(limits.max_visits)))
    throw BudgetExceeded("enumeration of Hom(genus " + std::to_string(genus.value()) + ", S_" + std::to_string(n) +
                         ") needs " + expected.get_str() + " visits, budget is " + std::to_string(limits.max_visits));
  const CommutatorBuckets buckets = build_buckets(n, limits);
  const std::uint32_t keys = buckets.index().size();
  std::atomic<std::uint32_t> next{0};
  std::atomic<std::uint64_t> visits{0};
  auto work = [&] {
    Enumerator e(buckets, genus, make_visitor());
    std::uint64_t local = 0;
    for (std::uint32_t k = next++; k < keys; k = next++) local += e.run_key(k);
    visits += local;
  };
  const unsigned workers = std::min<unsigned>(worker_count(limits.threads), keys);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return visits;
}

ExactInt to_exact(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  ExactInt hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  ExactInt out = (hi << 64) + lo;
  return neg ? ExactInt(-out) : out;
}

}  // namespace

std::uint64_t enumerate_homs(std::uint32_t n, Genus genus, const KeyedHomVisitor& visit,
                             const EnumerationLimits& limits) {
  return enumerate_impl(n, genus, [&] { return visit; }, limits);
}

std::uint64_t enumerate_homs(std::uint32_t n, Genus genus, const HomVisitor& visit, const EnumerationLimits& limits) {
  return enumerate_impl(n, genus, [&] { return KeyedHomVisitor([&](std::uint32_t, const HomPoint& h) { visit(h); }); },
                        limits);
}

ExactRational ExactTotals::joint_mean() const {
  ExactRational q(joint_sum, hom_count);
  q.canonicalize();
  return q;
}

ExactRational ExactTotals::group_mean(std::size_t i) const {
  ExactRational q(group_sums.at(i), hom_count);
  q.canonicalize();
  return q;
}

ExactRational ExactTotals::product_of_group_means() const {
  ExactRational prod = 1;
  for (std::size_t i = 0; i < group_sums.size(); ++i) prod *= group_mean(i);
  return prod;
}

ExactTotals exact_totals(std::uint32_t n, Genus genus, const ObservableSpec& spec, const EnumerationLimits& limits) {
  if (auto g = spec.genus(); g && !(*g == genus)) throw std::invalid_argument("spec genus differs from requested genus");
  const std::size_t width = spec.size() + 1;
  std::uint32_t keys = 1;
  for (std::uint32_t k = 2; k <= n; ++k) keys *= k;
  // Per-key partial sums; each key is owned by a single worker.
  std::vector<__int128> partial(static_cast<std::size_t>(keys) * width, 0);
  const std::uint64_t visits = enumerate_impl(
      n, genus,
      [&] {
        auto eval = std::make_shared<SpecEvaluator>(spec);
        auto groups = std::make_shared<std::vector<std::int64_t>>(spec.size());
        return KeyedHomVisitor([&partial, width, eval, groups](std::uint32_t key, const HomPoint& h) {
          const std::int64_t joint = eval->evaluate(h, *groups);
          __int128* row = partial.data() + static_cast<std::size_t>(key) * width;
          row[0] += joint;
          for (std::size_t i = 0; i < groups->size(); ++i) row[i + 1] += (*groups)[i];
        });
      },
      limits);
  ExactTotals totals{ExactInt(static_cast<unsigned long>(visits)), 0, std::vector<ExactInt>(spec.size(), 0)};
  std::vector<__int128> sums(width, 0);
  for (std::uint32_t k = 0; k < keys; ++k)
    for (std::size_t c = 0; c < width; ++c) sums[c] += partial[static_cast<std::size_t>(k) * width + c];
  totals.joint_sum = to_exact(sums[0]);
  for (std::size_t i = 0; i < spec.size(); ++i) totals.group_sums[i] = to_exact(sums[i + 1]);
  if (totals.hom_count != hom_count(n, genus.value()))
    throw std::logic_error("enumeration visited " + totals.hom_count.get_str() + " points, expected " +
                           hom_count(n, genus.value()).get_str());
  return totals;
}

ExactRational exact_expectation(std::uint32_t n, Genus genus, const ObservableSpec& spec,
                                const EnumerationLimits& limits) {
  return exact_totals(n, genus, spec, limits).joint_mean();
}

}  // namespace scl
