#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "scl/characters.hpp"
#include "scl/exact.hpp"
#include "scl/observables.hpp"
#include "scl/permutation.hpp"
#include "scl/rng.hpp"

namespace scl {

/// A configured visit or memory budget would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationLimits {
  std::uint64_t max_visits = 1'000'000'000;
  std::uint64_t max_memory_bytes = 2ull << 30;
  /// Largest n whose commutator pairs are stored; n up to 9 keeps counts
  /// only and regenerates pairs on demand.
  std::uint32_t materialize_threshold = 7;
  /// 0 means hardware concurrency, capped by SCL_THREADS.
  unsigned threads = 0;
};

/// Worker count: `requested` (or hardware concurrency when 0), capped by the
/// SCL_THREADS environment variable, at least 1.
unsigned worker_count(unsigned requested);

/// All of S_n (n <= 9) in lexicographic order with Lehmer-code ranking.
class PermutationIndex {
 public:
  explicit PermutationIndex(std::uint32_t n);

  std::uint32_t degree() const noexcept { return n_; }
  std::uint32_t size() const noexcept { return count_; }
  std::span<const point_t> images(std::uint32_t rank) const {
    return {table_.data() + static_cast<std::size_t>(rank) * n_, n_};
  }
  Permutation permutation(std::uint32_t rank) const;
  std::uint32_t rank(std::span<const point_t> images) const;
  std::uint32_t rank(const Permutation& p) const { return rank(p.images()); }
  std::uint32_t inverse_rank(std::uint32_t rank) const { return inverse_[rank]; }

 private:
  std::uint32_t n_;
  std::uint32_t count_;
  std::vector<point_t> table_;
  std::vector<std::uint32_t> inverse_;
};

struct BucketPair {
  std::uint32_t a;
  std::uint32_t b;
  friend bool operator==(BucketPair, BucketPair) = default;
};

/// The fibers {(a, b) : [a, b] = sigma} of the commutator map on S_n^2,
/// keyed by the rank of sigma. Immutable after construction.
class CommutatorBuckets {
 public:
  std::uint32_t degree() const noexcept { return index_->degree(); }
  const PermutationIndex& index() const noexcept { return *index_; }
  bool materialized() const noexcept { return !offsets_.empty(); }

  std::uint64_t bucket_size(std::uint32_t sigma) const { return sizes_[sigma]; }
  /// Stored pairs (a-major order); requires materialized().
  std::span<const BucketPair> bucket(std::uint32_t sigma) const;
  /// Pairs recomputed by conjugator enumeration, in the same order as bucket().
  std::vector<BucketPair> regenerate(std::uint32_t sigma) const;
  /// bucket() when stored, regenerate() otherwise.
  std::vector<BucketPair> pairs(std::uint32_t sigma) const;
  std::uint64_t total() const;

 private:
  friend CommutatorBuckets build_buckets(std::uint32_t n, const EnumerationLimits& limits);
  std::shared_ptr<const PermutationIndex> index_;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint64_t> offsets_;
  std::vector<BucketPair> pairs_;
};

/// Throws BudgetExceeded above n = 9 or when the pair table would exceed the
/// memory budget.
CommutatorBuckets build_buckets(std::uint32_t n, const EnumerationLimits& limits = {});

/// Visitor receiving the product key (rank of the product of the first g-1
/// commutators) and the hom point. Called concurrently from worker threads,
/// but never concurrently for the same key; it must be internally
/// synchronized for any state shared across keys.
using KeyedHomVisitor = std::function<void(std::uint32_t key, const HomPoint&)>;
using HomVisitor = std::function<void(const HomPoint&)>;

/// Visits every point of Hom(surface group, S_n) exactly once by joining
/// chains of g-1 commutator pairs with product sigma to bucket(sigma^-1).
/// Returns the number of visits, which equals hom_count(n, g). Throws
/// BudgetExceeded if hom_count exceeds limits.max_visits.
std::uint64_t enumerate_homs(std::uint32_t n, Genus genus, const KeyedHomVisitor& visit,
                             const EnumerationLimits& limits = {});
std::uint64_t enumerate_homs(std::uint32_t n, Genus genus, const HomVisitor& visit,
                             const EnumerationLimits& limits = {});

/// Exact totals over Hom for the joint observable and each group of a spec.
struct ExactTotals {
  ExactInt hom_count;
  ExactInt joint_sum;
  std::vector<ExactInt> group_sums;

  ExactRational joint_mean() const;
  ExactRational group_mean(std::size_t i) const;
  /// Product over groups of their means.
  ExactRational product_of_group_means() const;
};

ExactTotals exact_totals(std::uint32_t n, Genus genus, const ObservableSpec& spec, const EnumerationLimits& limits = {});

/// Exact mean of the joint observable over all of Hom. The empty spec has
/// mean 1.
ExactRational exact_expectation(std::uint32_t n, Genus genus, const ObservableSpec& spec,
                                const EnumerationLimits& limits = {});

/// Class-weight tables for exactly uniform sampling from Hom(surface group, S_n).
///
/// With c_i = [a_i, b_i], a hom point is a chain c_1 ... c_g = 1. The product
/// tau = c_1 ... c_{g-1} is drawn by class with weight
/// |class| * #chains(g-1, class) * #fiber(class), tau uniformly inside the
/// class, c_g from the fiber over tau^-1, and the chain recursively: the
/// prefix product of a k-chain is proposed with weight #chains(k-1, .) and
/// accepted with probability #fiber(remaining) / #fiber(identity). A fiber
/// pair (x, b) with [x, b] = sigma is drawn by taking a uniformly random
/// class, a uniform x in it, rejecting unless x sigma lies in the same class,
/// and then a uniform conjugator b with b^-1 x b = x sigma.
class SamplerPlan {
 public:
  std::uint32_t degree() const noexcept { return n_; }
  Genus genus() const noexcept { return genus_; }
  const CharacterTable& table() const noexcept { return *table_; }
  const ExactInt& total_weight() const noexcept { return tau_cumulative_.back(); }
  /// Unnormalized class weight of the product of the first g-1 commutators.
  ExactInt tau_weight(std::size_t cls) const;
  /// Size of the commutator fiber over one element of class cls.
  const ExactInt& fiber_size(std::size_t cls) const { return fiber_size_[cls]; }

 private:
  friend SamplerPlan build_sampler(std::uint32_t n, Genus genus);
  friend class HomSampler;
  SamplerPlan(std::uint32_t n, Genus genus) : n_(n), genus_(genus) {}

  std::uint32_t n_;
  Genus genus_;
  std::shared_ptr<const CharacterTable> table_;
  std::vector<ExactInt> tau_cumulative_;
  // proposal_cumulative_[k-1]: cumulative |class| * #chains(k, class).
  std::vector<std::vector<ExactInt>> proposal_cumulative_;
  std::vector<ExactInt> fiber_size_;
  ExactInt fiber_max_;
  // 64-bit copies of the fiber sizes when fiber_max_ fits.
  bool small_fibers_ = false;
  std::vector<std::uint64_t> fiber_size_u64_;
  std::uint64_t fiber_max_u64_ = 0;
};

/// Throws std::logic_error if the weights are not consistent with hom_count.
SamplerPlan build_sampler(std::uint32_t n, Genus genus);

/// Stream of uniform samples; (plan, seed) determines the sequence.
class HomSampler {
 public:
  HomSampler(const SamplerPlan& plan, Seed seed);

  void next(HomPoint& out);
  HomPoint next();

  CounterRng& rng() noexcept { return rng_; }

 private:
  std::size_t draw_class(const std::vector<ExactInt>& cumulative);
  void random_in_class(std::size_t cls, Permutation& out);
  bool accept_fiber(const Permutation& sigma);
  void sample_fiber(const Permutation& sigma, Permutation& a, Permutation& b);
  void sample_chain(std::size_t pairs, const Permutation& target, HomPoint& out);
  std::size_t class_of(const Permutation& p);

  const SamplerPlan* plan_;
  CounterRng rng_;
  std::vector<point_t> shuffle_;
  std::vector<std::uint32_t> counts_;
};

/// First sample of the stream named by seed.
HomPoint sample_hom(const SamplerPlan& plan, Seed seed);

/// Per-sample observable rows from a sharded, reproducible sampling run.
/// Shard k uses stream (seed.stream << 32 | k); the rows are identical for
/// any worker count.
struct SampleMatrix {
  std::size_t width = 0;
  std::vector<std::int64_t> values;  // row-major

  std::size_t rows() const noexcept { return width ? values.size() / width : 0; }
  std::int64_t at(std::size_t row, std::size_t col) const { return values[row * width + col]; }
  double mean(std::size_t col) const;
  /// Standard error of the column mean (sample sd / sqrt(rows)).
  double stderr_of_mean(std::size_t col) const;
};

/// Factory producing one row-filler per worker; the filler writes `width`
/// values for a hom point.
using RowFiller = std::function<void(const HomPoint&, std::span<std::int64_t>)>;
using RowFillerFactory = std::function<RowFiller()>;

inline constexpr std::uint64_t kSamplesPerShard = 1024;

SampleMatrix sample_rows(const SamplerPlan& plan, std::size_t width, const RowFillerFactory& make_filler,
                         std::uint64_t samples, Seed seed, unsigned threads = 0);

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  Seed seed;
};

/// Sample mean and standard error of the joint observable. Throws
/// std::invalid_argument for fewer than 2 samples.
McEstimate monte_carlo_expectation(const SamplerPlan& plan, const ObservableSpec& spec, std::uint64_t samples,
                                   Seed seed, unsigned threads = 0);

}  // namespace scl
