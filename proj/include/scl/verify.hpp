#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scl/exact.hpp"
#include "scl/hom_space.hpp"
#include "scl/observables.hpp"

namespace scl {

enum class Method { enumerate, sample };

std::string to_string(Method m);

/// Enumerate when the predicted visit count fits the budget and n is small
/// enough for the permutation index, otherwise sample.
Method choose_method(std::uint32_t n, Genus genus, const EnumerationLimits& limits);

struct ExperimentPlan {
  Genus genus{2};
  ObservableSpec spec;
  std::vector<std::uint32_t> n_values;
  /// Per-n override; empty means choose_method for every n.
  std::vector<Method> methods;
  std::uint64_t samples = 100'000;
  Seed seed{};
  EnumerationLimits limits{};

  Method method_for(std::size_t i) const;
  /// Throws std::invalid_argument unless n_values is non-empty and strictly
  /// increasing and methods (if given) has one entry per n.
  void validate() const;
};

struct ConvergenceRow {
  std::uint32_t n = 0;
  Method method = Method::enumerate;
  double joint = 0;
  double product = 0;
  /// joint - product.
  double gap = 0;
  double error = 0;    // |joint - prediction|
  double n_error = 0;  // n * error
  double joint_stderr = 0;
  double gap_stderr = 0;
  std::vector<double> group_means;
  /// Exact values on enumerated rows.
  std::optional<ExactRational> exact_joint;
  std::optional<ExactRational> exact_product;
  std::uint64_t samples = 0;
  std::uint64_t runtime_ms = 0;
};

struct ConvergenceReport {
  std::string kind;
  Genus genus{2};
  std::string spec;
  ExactRational prediction;
  std::vector<std::string> warnings;
  Seed seed{};
  std::vector<ConvergenceRow> rows;
};

/// Joint moment, group moments and their product per n, against the limit.
/// Sampled rows for one n share a single set of samples across all columns.
ConvergenceReport run_convergence(const ExperimentPlan& plan);

/// Same measurements, read as the independence gap joint - product.
ConvergenceReport run_independence(const ExperimentPlan& plan);

struct CycleMeanRow {
  std::uint32_t n;
  Method method;
  std::size_t word;
  std::uint32_t d;
  double mean;
  double stderr_of_mean;
  ExactRational prediction;
  std::optional<ExactRational> exact_mean;
};

struct CycleCovarianceRow {
  std::uint32_t n;
  Method method;
  std::size_t word_i, word_j;
  std::uint32_t d_i, d_j;
  double covariance;
  double stderr_of_cov;
  std::optional<ExactRational> exact_covariance;
};

struct CycleReport {
  Genus genus{2};
  std::vector<std::string> words;
  std::uint32_t max_d = 0;
  Seed seed{};
  std::uint64_t samples = 0;
  std::vector<CycleMeanRow> means;
  std::vector<CycleCovarianceRow> covariances;
};

/// Means of C_{n,d}(w) for d <= max_d against 1/d and covariances across
/// distinct words. The plan's spec is ignored. Throws std::invalid_argument
/// when max_d exceeds the smallest n.
CycleReport run_cycle_convergence(const std::vector<Word>& words, std::uint32_t max_d, const ExperimentPlan& plan);

struct InverseFit {
  double constant = 0;
  std::vector<double> residuals;  // e_n - C/n
  double max_n_error = 0;
  std::uint32_t argmax_n = 0;
};

/// Least squares e_n ~ C/n. Throws std::invalid_argument with fewer than three
/// points or a negative error.
InverseFit fit_inverse_n(const std::vector<std::pair<std::uint32_t, double>>& errors);

}  // namespace scl
