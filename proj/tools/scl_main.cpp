// scl: exact and Monte Carlo statistics of random surface-group covers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scl/acceptance.hpp"
#include "scl/characters.hpp"
#include "scl/hom_space.hpp"
#include "scl/limits.hpp"
#include "scl/report.hpp"
#include "scl/verify.hpp"

namespace {

using namespace scl;

// Failed statistical band; distinct from usage and runtime errors.
constexpr int kBandFailure = 2;

struct Config {
  std::vector<std::uint32_t> n;
  int genus = 2;
  unsigned s = 2;
  std::string spec;
  std::string words = "a1;a2";
  std::uint32_t max_d = 3;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  std::uint64_t budget_visits = 1'000'000'000;
  std::string format = "text";
  std::string out;
  unsigned threads = 0;
  bool timing = false;
  std::vector<int> only;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  void write(const std::string& text) {
    std::ostream& os = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
    os << text;
    os.flush();
    if (!os) throw std::runtime_error("write failed");
  }

 private:
  std::ofstream file_;
};

std::uint32_t single_n(const Config& c) {
  if (c.n.size() != 1) throw CLI::ValidationError("-n", "this subcommand takes exactly one n");
  return c.n.front();
}

Format structured(const Config& c) { return parse_format(c.format == "text" ? "json" : c.format); }

EnumerationLimits limits_of(const Config& c) {
  EnumerationLimits l;
  l.max_visits = c.budget_visits;
  l.threads = c.threads;
  return l;
}

std::string rational_text(const ExactRational& q) {
  return is_integer(q) ? to_string(q) : to_string(q) + " (" + to_decimal(q) + ")";
}

// Scalar result: plain value in text mode, otherwise a record.
void emit_value(Output& out, const Config& c, Record record, const ExactRational& value) {
  if (c.format == "text") {
    out.write(rational_text(value) + "\n");
    return;
  }
  out.write(emit_record(record, structured(c)));
}

ObservableSpec spec_of(const Config& c) { return parse_spec(c.spec, Genus(c.genus)); }

int cmd_characters(const Config& c, Output& out) {
  const auto t = character_table(single_n(c));
  Table table;
  table.columns = {"lambda", "dim"};
  for (const auto& mu : t->partitions()) table.columns.push_back(mu.to_string());
  for (std::size_t l = 0; l < t->class_count(); ++l) {
    std::vector<Cell> row{t->partitions()[l].to_string(), ExactRational(t->dim(l))};
    for (std::size_t m = 0; m < t->class_count(); ++m) row.push_back(t->value(l, m));
    table.add_row(std::move(row));
  }
  out.write(emit_report(table, c.format == "json" ? Format::json : Format::csv));
  return 0;
}

int cmd_zeta(const Config& c, Output& out) {
  const std::uint32_t n = single_n(c);
  const ExactRational z = witten_zeta(n, c.s);
  emit_value(out, c, {{"n", std::uint64_t{n}}, {"s", std::uint64_t{c.s}}, {"value", z}, {"value_decimal", to_decimal(z)}},
             z);
  return 0;
}

int cmd_hom_count(const Config& c, Output& out) {
  const std::uint32_t n = single_n(c);
  const ExactInt h = hom_count(n, c.genus);
  emit_value(out, c, {{"n", std::uint64_t{n}}, {"g", std::int64_t{c.genus}}, {"value", ExactRational(h)}},
             ExactRational(h));
  return 0;
}

int cmd_enumerate(const Config& c, Output& out) {
  const std::uint32_t n = single_n(c);
  const ObservableSpec spec = spec_of(c);
  const auto start = std::chrono::steady_clock::now();
  const ExactTotals t = exact_totals(n, Genus(c.genus), spec, limits_of(c));
  const ExactRational mean = t.joint_mean();
  Record rec{{"n", std::uint64_t{n}},
             {"g", std::int64_t{c.genus}},
             {"spec", spec.to_string()},
             {"method", std::string("enumerate")},
             {"hom_count", ExactRational(t.hom_count)},
             {"value", mean},
             {"value_decimal", to_decimal(mean)},
             {"product_of_groups", t.product_of_group_means()}};
  for (std::size_t i = 0; i < spec.size(); ++i) rec.push_back({"group_" + spec.groups()[i].name, t.group_mean(i)});
  if (c.timing)
    rec.push_back({"runtime_ms", static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                               std::chrono::steady_clock::now() - start)
                                                               .count())});
  emit_value(out, c, rec, mean);
  return 0;
}

int cmd_sample(const Config& c, Output& out) {
  const std::uint32_t n = single_n(c);
  const Genus genus(c.genus);
  const SamplerPlan plan = build_sampler(n, genus);
  HomSampler sampler(plan, Seed{c.seed, 0});
  Table table;
  table.columns = {"index"};
  for (std::uint32_t k = 0; k < genus.generator_count(); ++k)
    table.columns.push_back((k % 2 ? "b" : "a") + std::to_string(k / 2 + 1));
  HomPoint h = HomPoint::scratch(genus, n);
  for (std::uint64_t i = 0; i < c.samples; ++i) {
    sampler.next(h);
    std::vector<Cell> row{i};
    for (const auto& p : h.images()) row.push_back(to_cycle_string(p));
    table.add_row(std::move(row));
  }
  out.write(emit_report(table, c.format == "csv" ? Format::csv : Format::json));
  return 0;
}

int cmd_estimate(const Config& c, Output& out) {
  const std::uint32_t n = single_n(c);
  const ObservableSpec spec = spec_of(c);
  const auto start = std::chrono::steady_clock::now();
  const SamplerPlan plan = build_sampler(n, Genus(c.genus));
  const McEstimate e = monte_carlo_expectation(plan, spec, c.samples, Seed{c.seed, 0}, c.threads);
  if (c.format == "text") {
    out.write(format_double(e.mean) + " +- " + format_double(e.std_error) + "\n");
    return 0;
  }
  Record rec{{"n", std::uint64_t{n}},         {"g", std::int64_t{c.genus}}, {"spec", spec.to_string()},
             {"method", std::string("sample")}, {"mean", e.mean},           {"stderr", e.std_error},
             {"samples", e.samples},           {"seed", c.seed}};
  if (c.timing)
    rec.push_back({"runtime_ms", static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                               std::chrono::steady_clock::now() - start)
                                                               .count())});
  out.write(emit_record(rec, structured(c)));
  return 0;
}

int cmd_predict(const Config& c, Output& out) {
  const ObservableSpec spec = spec_of(c);
  const LimitValue v = limit_product_moment(spec);
  for (const auto& w : v.warnings) std::cerr << "warning: " << w << "\n";
  if (c.format == "text") {
    out.write(rational_text(v.value) + "\n");
    return 0;
  }
  nlohmann::ordered_json warnings = nlohmann::ordered_json::array();
  for (const auto& w : v.warnings) warnings.push_back(w);
  Record rec{{"g", std::int64_t{c.genus}}, {"spec", v.spec}, {"value", v.value}, {"value_decimal", to_decimal(v.value)}};
  if (structured(c) == Format::json) {
    auto j = to_json(rec);
    j["warnings"] = warnings;
    out.write(j.dump(2) + "\n");
  } else {
    out.write(emit_record(rec, Format::csv));
  }
  return 0;
}

ExperimentPlan plan_of(const Config& c, ObservableSpec spec) {
  ExperimentPlan p;
  p.genus = Genus(c.genus);
  p.spec = std::move(spec);
  p.n_values = c.n;
  p.samples = c.samples;
  p.seed = Seed{c.seed, 0};
  p.limits = limits_of(c);
  return p;
}

int cmd_verify_rows(const Config& c, Output& out, bool independence) {
  const ExperimentPlan plan = plan_of(c, spec_of(c));
  const ConvergenceReport report = independence ? run_independence(plan) : run_convergence(plan);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  out.write(emit_report(to_table(report, c.timing), structured(c)));
  bool ok = true;
  if (independence) {
    // The gap must shrink from the first to the last n or vanish within 2 stderr.
    const auto& first = report.rows.front();
    const auto& last = report.rows.back();
    const bool zero = last.method == Method::enumerate ? last.gap == 0 : std::abs(last.gap) <= 2 * last.gap_stderr;
    ok = report.rows.size() == 1 ? zero : (std::abs(last.gap) < std::abs(first.gap) || zero);
    if (!ok) std::cerr << "band failed: independence gap does not shrink\n";
  } else {
    for (const auto& row : report.rows)
      if (row.method == Method::sample && row.error > 3 * row.joint_stderr) {
        std::cerr << "band failed: n=" << row.n << " is " << row.error / row.joint_stderr
                  << " stderr from the prediction\n";
        ok = false;
      }
  }
  return ok ? 0 : kBandFailure;
}

int cmd_verify_cycles(const Config& c, Output& out) {
  std::vector<Word> words;
  std::stringstream ss(c.words);
  for (std::string item; std::getline(ss, item, ';');)
    if (item.find_first_not_of(' ') != std::string::npos) words.push_back(parse_word(item, Genus(c.genus)));
  const CycleReport report = run_cycle_convergence(words, c.max_d, plan_of(c, {}));
  out.write(emit_report(to_table(report), structured(c)));
  bool ok = true;
  for (const auto& m : report.means)
    if (m.method == Method::sample && std::abs(m.mean - m.prediction.get_d()) > 3 * m.stderr_of_mean) ok = false;
  for (const auto& v : report.covariances)
    if (v.method == Method::sample && std::abs(v.covariance) > 3 * v.stderr_of_cov) ok = false;
  if (!ok) std::cerr << "band failed: a cycle statistic is outside 3 stderr\n";
  return ok ? 0 : kBandFailure;
}

int cmd_selftest(const Config& c, Output& out) {
  AcceptanceOptions opt;
  opt.samples = c.samples;
  opt.seed = Seed{c.seed, 0};
  opt.threads = c.threads;
  opt.only = c.only;
  bool all = true;
  Table table;
  table.columns = {"criterion", "name", "passed", "detail"};
  const bool text = c.format == "text";
  const auto results = run_acceptance(opt, [&](const CriterionResult& r) {
    all = all && r.passed;
    if (text) out.write(format_result(r) + "\n");
  });
  if (!text) {
    for (const auto& r : results)
      table.add_row({static_cast<std::int64_t>(r.id), r.name, r.passed, r.detail});
    out.write(emit_report(table, structured(c)));
  }
  return all ? 0 : kBandFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random surface-group covers: characters, hom counts, sampling and Poisson limits"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file; command-line flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Config c;
  app.add_option("-n", c.n, "Degree n (comma-separated list for verify commands)")->delimiter(',');
  app.add_option("-g,--genus", c.genus, "Surface genus (>= 2)")->capture_default_str();
  app.add_option("-s", c.s, "Zeta exponent")->capture_default_str();
  app.add_option("--spec", c.spec, R"(Observable spec, e.g. 'gamma="a1" exps=[2,3] pow=1; delta="a2" exps=[4]')");
  app.add_option("--words", c.words, "Words for verify-cycles, separated by ';'")->capture_default_str();
  app.add_option("--max-d", c.max_d, "Largest cycle length for verify-cycles")->capture_default_str();
  app.add_option("--samples", c.samples, "Monte Carlo samples per n")->capture_default_str();
  app.add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app.add_option("--budget-visits", c.budget_visits, "Enumeration budget in visited homomorphisms")
      ->capture_default_str();
  app.add_option("--format", c.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", c.out, "Write output to this file instead of stdout");
  app.add_option("--threads", c.threads, "Worker threads (0 = all; SCL_THREADS caps it)");
  app.add_flag("--timing", c.timing, "Add wall-clock columns (output is then not reproducible)");
  app.add_option("--only", c.only, "selftest: criteria to run")->delimiter(',');

  auto* characters = app.add_subcommand("characters", "Character table of S_n (CSV by default)");
  auto* zeta = app.add_subcommand("zeta", "Witten zeta of S_n at s");
  auto* homs = app.add_subcommand("hom-count", "Number of homomorphisms from the genus-g surface group to S_n");
  auto* enumerate = app.add_subcommand("enumerate", "Exact expectation of a spec by enumeration");
  auto* sample = app.add_subcommand("sample", "Uniform random homomorphisms in cycle notation");
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo expectation of a spec");
  auto* predict = app.add_subcommand("predict", "Exact n -> infinity limit of a spec");
  auto* vconv = app.add_subcommand("verify-convergence", "Joint moment against its limit over several n");
  auto* vind = app.add_subcommand("verify-independence", "Joint moment against the product of group moments");
  auto* vcyc = app.add_subcommand("verify-cycles", "Cycle-count means and cross-covariances");
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (c.genus < 2) throw CLI::ValidationError("--genus", "genus must be >= 2");
    Output out(c.out);
    if (characters->parsed()) {
      if (c.format == "text") c.format = "csv";
      return cmd_characters(c, out);
    }
    if (zeta->parsed()) return cmd_zeta(c, out);
    if (homs->parsed()) return cmd_hom_count(c, out);
    if (enumerate->parsed()) return cmd_enumerate(c, out);
    if (sample->parsed()) {
      if (app.count("--samples") == 0 && c.samples == Config{}.samples) c.samples = 10;
      return cmd_sample(c, out);
    }
    if (estimate->parsed()) return cmd_estimate(c, out);
    if (predict->parsed()) return cmd_predict(c, out);
    if (vconv->parsed()) return cmd_verify_rows(c, out, false);
    if (vind->parsed()) return cmd_verify_rows(c, out, true);
    if (vcyc->parsed()) return cmd_verify_cycles(c, out);
    if (selftest->parsed()) return cmd_selftest(c, out);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
