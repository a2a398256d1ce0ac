#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icc/dominance.hpp"
#include "icc/model.hpp"
#include "icc/rational.hpp"

namespace icc {

enum class ExistenceMode { winning, dominating, strong_winner };
enum class ConstructionMethod { bruteforce, best_per_group, cyclic };

const char* mode_name(ExistenceMode mode);
const char* method_name(ConstructionMethod method);
ExistenceMode parse_mode(const std::string& text);
ConstructionMethod parse_method(const std::string& text);

struct ExperimentConfig {
  int n = 0;
  int m = 0;
  int k = 1;
  Alpha alpha;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  ExistenceMode mode = ExistenceMode::winning;
  ConstructionMethod method = ConstructionMethod::bruteforce;
  std::optional<double> r;  // cyclic construction parameter; defaults to ln m
  int strong_win_threshold = 2;
  std::int64_t budget = kDefaultEnumerationBudget;
  int threads = 0;  // 0 or less: use available parallelism
};

// Binomial confidence interval that stays honest near 0 and 1.
struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double p) const { return lo <= p && p <= hi; }
};

inline constexpr double kWilson95Z = 1.959963984540054;
inline constexpr double kWilson99Z = 2.5758293035489004;

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z);

struct EstimateResult {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double phat = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
  double seconds = 0.0;
};

// One trial of the configured experiment: sample IC (score-matrix view, so
// every method sees the same sample for a given stream), apply the method,
// return the critical count c such that the trial succeeds at alpha iff
// alpha.meets(c, n); -1 when the method constructs no committee at all.
// Exposed so sweeps and tests can couple trials across alphas.
std::int64_t trial_critical_count(const ExperimentConfig& cfg, Rng& rng);

// Monte Carlo estimate of the existence probability. Trial t draws from the
// stream (seed, t), so results do not depend on the worker count.
EstimateResult estimate_existence(const ExperimentConfig& cfg);

// Exact value of the existence probability by enumerating all (m!)^n
// profiles. Refuses when (m!)^n exceeds the enumeration budget (1e6).
Rational exact_existence_small(int n, int m, int k, const Alpha& alpha, ExistenceMode mode);

// Phase-transition thresholds.
enum class ThresholdKind { win_large_m, dom_large_m, win_large_n, dom_large_n };
Rational threshold(ThresholdKind kind, int k);

// One row per requested value along the axis. Rows along the alpha axis
// share per-trial samples (one sample, every alpha), which both reduces
// variance and makes per-trial success monotone in alpha.
enum class SweepAxis { alpha, m, n, k };
const char* axis_name(SweepAxis axis);
SweepAxis parse_axis(const std::string& text);

struct SweepRow {
  ExperimentConfig config;
  std::optional<EstimateResult> result;
  std::string error;  // empty on success
};

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            std::span<const std::string> values);

// Randomized search for a profile with no alpha-dominating k-committee.
// Only meaningful above the k-committee threshold, so requires
// alpha > (k-1)/(2k) exactly.
std::optional<Profile> search_counterexample(int n, int m, int k, const Alpha& alpha,
                                             std::int64_t trials, std::uint64_t seed,
                                             std::int64_t budget = kDefaultEnumerationBudget);

// CSV / JSON-lines emission, schema version "v1". One row per estimate; the
// seconds column is wall time and is the only field that varies between
// reruns of the same seed.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRow& row);
void write_jsonl_row(std::ostream& out, const SweepRow& row);

}  // namespace icc
