#include "icc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "icc/constructions.hpp"
#include "icc/io.hpp"

namespace icc {

const char* mode_name(ExistenceMode mode) {
  switch (mode) {
    case ExistenceMode::winning: return "winning";
    case ExistenceMode::dominating: return "dominating";
    case ExistenceMode::strong_winner: return "strong-winner";
  }
  return "?";
}

const char* method_name(ConstructionMethod method) {
  switch (method) {
    case ConstructionMethod::bruteforce: return "bruteforce";
    case ConstructionMethod::best_per_group: return "best-per-group";
    case ConstructionMethod::cyclic: return "cyclic";
  }
  return "?";
}

ExistenceMode parse_mode(const std::string& text) {
  if (text == "winning") return ExistenceMode::winning;
  if (text == "dominating") return ExistenceMode::dominating;
  if (text == "strong-winner") return ExistenceMode::strong_winner;
  throw Error::parse("unknown mode '" + text + "' (winning|dominating|strong-winner)");
}

ConstructionMethod parse_method(const std::string& text) {
  if (text == "bruteforce") return ConstructionMethod::bruteforce;
  if (text == "best-per-group") return ConstructionMethod::best_per_group;
  if (text == "cyclic") return ConstructionMethod::cyclic;
  throw Error::parse("unknown method '" + text + "' (bruteforce|best-per-group|cyclic)");
}

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::alpha: return "alpha";
    case SweepAxis::m: return "m";
    case SweepAxis::n: return "n";
    case SweepAxis::k: return "k";
  }
  return "?";
}

SweepAxis parse_axis(const std::string& text) {
  if (text == "alpha") return SweepAxis::alpha;
  if (text == "m") return SweepAxis::m;
  if (text == "n") return SweepAxis::n;
  if (text == "k") return SweepAxis::k;
  throw Error::parse("unknown axis '" + text + "' (alpha|m|n|k)");
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials < 1) throw Error::invalid_argument("Wilson interval needs trials >= 1");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double radius = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // At p = 0 or 1 the closed form touches the boundary exactly; keep it there
  // rather than a rounding hair away.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - radius);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + radius);
  return {lo, hi};
}

namespace {

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.n < 1 || cfg.m < 1) throw Error::invalid_dimension("need n >= 1 and m >= 1");
  if (cfg.trials < 1) throw Error::invalid_argument("need trials >= 1");
  if (cfg.mode != ExistenceMode::strong_winner && (cfg.k < 1 || cfg.k > cfg.m))
    throw Error::invalid_argument("need 1 <= k <= m");
}

std::int64_t strong_winner_count(const Profile& profile, int t) {
  // Strong-winner existence has no alpha; reuse the critical-count plumbing
  // by mapping success to n (meets every alpha) and failure to -1.
  return find_strong_pairwise_winner(profile, t) ? profile.voters() : -1;
}

int worst_outsider_count(const Profile& profile, const Committee& committee, ExistenceMode mode) {
  const int n = profile.voters();
  const int m = profile.candidates();
  if (committee.k() == m) return n;
  int worst = n;
  if (mode == ExistenceMode::winning) {
    std::vector<int> best(n, m);
    for (int v = 0; v < n; ++v)
      for (const int c : committee.members()) best[v] = std::min(best[v], profile.rank_of(v, c));
    for (int a = 0; a < m; ++a) {
      if (committee.contains(a)) continue;
      int wins = 0;
      for (int v = 0; v < n; ++v)
        if (best[v] < profile.rank_of(v, a)) ++wins;
      worst = std::min(worst, wins);
    }
  } else {
    for (int a = 0; a < m; ++a) {
      if (committee.contains(a)) continue;
      int best_member = 0;
      for (const int c : committee.members()) {
        int wins = 0;
        for (int v = 0; v < n; ++v)
          if (profile.rank_of(v, c) < profile.rank_of(v, a)) ++wins;
        best_member = std::max(best_member, wins);
      }
      worst = std::min(worst, best_member);
    }
  }
  return worst;
}

}  // namespace

std::int64_t trial_critical_count(const ExperimentConfig& cfg, Rng& rng) {
  const ScoreMatrix scores = sample_score_matrix(cfg.n, cfg.m, rng);
  if (cfg.mode == ExistenceMode::strong_winner)
    return strong_winner_count(scores_to_profile(scores), cfg.strong_win_threshold);

  switch (cfg.method) {
    case ConstructionMethod::bruteforce: {
      const Profile profile = scores_to_profile(scores);
      const DominanceMode mode = cfg.mode == ExistenceMode::winning ? DominanceMode::winning
                                                                    : DominanceMode::dominating;
      return max_qualifying_count(profile, cfg.k, mode, cfg.budget);
    }
    case ConstructionMethod::best_per_group: {
      const CyclicCommittee committee = best_per_group_committee(scores, cfg.k);
      return worst_outsider_count(scores_to_profile(scores), committee.dedup, cfg.mode);
    }
    case ConstructionMethod::cyclic: {
      const double r = cfg.r.value_or(std::log(static_cast<double>(cfg.m)));
      const auto committee = find_cyclic_threshold_committee(scores, cfg.k, r);
      if (!committee) return -1;
      return worst_outsider_count(scores_to_profile(scores), committee->dedup, cfg.mode);
    }
  }
  return -1;
}

namespace {

// Runs trials over per-trial streams, optionally in parallel; out[t] receives
// trial t's critical count regardless of the worker schedule.
void run_trials(const ExperimentConfig& cfg, std::vector<std::int64_t>& out) {
  out.assign(static_cast<std::size_t>(cfg.trials), -1);
  int workers = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = static_cast<int>(std::min<std::int64_t>(workers, cfg.trials));

  auto worker = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t t = begin; t < end; ++t) {
      Rng rng(cfg.seed, static_cast<std::uint64_t>(t));
      out[static_cast<std::size_t>(t)] = trial_critical_count(cfg, rng);
    }
  };
  if (workers == 1) {
    worker(0, cfg.trials);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (cfg.trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min<std::int64_t>(begin + chunk, cfg.trials);
    if (begin >= end) break;
    pool.emplace_back(worker, begin, end);
  }
  for (auto& thread : pool) thread.join();
}

EstimateResult summarize(const ExperimentConfig& cfg, std::span<const std::int64_t> counts,
                         double seconds) {
  EstimateResult result;
  result.trials = cfg.trials;
  for (const auto c : counts)
    if (c >= 0 && cfg.alpha.meets(c, cfg.n)) ++result.successes;
  result.phat = static_cast<double>(result.successes) / static_cast<double>(result.trials);
  const WilsonInterval ci = wilson_interval(result.successes, result.trials, kWilson95Z);
  result.wilson_lo = ci.lo;
  result.wilson_hi = ci.hi;
  result.seconds = seconds;
  return result;
}

}  // namespace

EstimateResult estimate_existence(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::int64_t> counts;
  run_trials(cfg, counts);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summarize(cfg, counts, seconds);
}

Rational exact_existence_small(int n, int m, int k, const Alpha& alpha, ExistenceMode mode) {
  if (n < 1 || m < 1) throw Error::invalid_dimension("need n >= 1 and m >= 1");
  if (mode != ExistenceMode::strong_winner && (k < 1 || k > m))
    throw Error::invalid_argument("need 1 <= k <= m");

  std::int64_t factorial = 1;
  for (int i = 2; i <= m; ++i) factorial *= i;
  double total_bound = 1.0;
  for (int v = 0; v < n; ++v) total_bound *= static_cast<double>(factorial);
  if (total_bound > 1e6)
    throw Error::budget_exceeded("(m!)^n exceeds the exact enumeration budget of 1e6");

  // All m! rankings, in lexicographic order.
  std::vector<std::vector<std::int32_t>> perms;
  perms.reserve(static_cast<std::size_t>(factorial));
  std::vector<std::int32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  const DominanceMode dmode =
      mode == ExistenceMode::dominating ? DominanceMode::dominating : DominanceMode::winning;
  std::int64_t successes = 0;
  std::int64_t total = 1;
  for (int v = 0; v < n; ++v) total *= factorial;

  std::vector<std::int64_t> digits(n, 0);
  std::vector<std::int32_t> order(static_cast<std::size_t>(n) * m);
  for (std::int64_t profile_id = 0; profile_id < total; ++profile_id) {
    for (int v = 0; v < n; ++v)
      std::copy(perms[digits[v]].begin(), perms[digits[v]].end(),
                order.begin() + static_cast<std::size_t>(v) * m);
    const Profile profile(n, m, order);
    bool success;
    if (mode == ExistenceMode::strong_winner) {
      success = find_strong_pairwise_winner(profile, 2).has_value();
    } else {
      success = alpha.meets(max_qualifying_count(profile, k, dmode), n);
    }
    if (success) ++successes;
    for (int v = n - 1; v >= 0; --v) {
      if (++digits[v] < factorial) break;
      digits[v] = 0;
    }
  }
  return Rational(successes, total);
}

Rational threshold(ThresholdKind kind, int k) {
  if (k < 1) throw Error::invalid_argument("need k >= 1");
  switch (kind) {
    case ThresholdKind::win_large_m: return Rational(k - 1, k);
    case ThresholdKind::dom_large_m: return Rational(k - 1, 2LL * k);
    case ThresholdKind::win_large_n: return Rational(k, k + 1);
    case ThresholdKind::dom_large_n: return Rational(1, 2);
  }
  throw Error::invalid_argument("bad threshold kind");
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            std::span<const std::string> values) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());

  if (axis == SweepAxis::alpha) {
    // One batch of samples shared by every alpha: per trial the critical
    // count decides all rows at once.
    for (const auto& value : values) {
      SweepRow row;
      row.config = base;
      try {
        row.config.alpha = Alpha::parse(value);
      } catch (const Error& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
    std::vector<std::int64_t> counts;
    bool ran = false;
    std::string batch_error;
    double seconds = 0.0;
    try {
      validate_config(base);
      const auto start = std::chrono::steady_clock::now();
      run_trials(base, counts);
      seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      ran = true;
    } catch (const Error& e) {
      batch_error = e.what();
    }
    for (auto& row : rows) {
      if (!row.error.empty()) continue;
      if (!ran) {
        row.error = batch_error;
        continue;
      }
      row.result = summarize(row.config, counts, seconds);
    }
    return rows;
  }

  for (const auto& value : values) {
    SweepRow row;
    row.config = base;
    try {
      const long long parsed = std::stoll(value);
      switch (axis) {
        case SweepAxis::m: row.config.m = static_cast<int>(parsed); break;
        case SweepAxis::n: row.config.n = static_cast<int>(parsed); break;
        case SweepAxis::k: row.config.k = static_cast<int>(parsed); break;
        case SweepAxis::alpha: break;
      }
      row.result = estimate_existence(row.config);
    } catch (const Error& e) {
      row.error = e.what();
    } catch (const std::exception& e) {
      row.error = std::string("parse-error: bad value '") + value + "'";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<Profile> search_counterexample(int n, int m, int k, const Alpha& alpha,
                                             std::int64_t trials, std::uint64_t seed,
                                             std::int64_t budget) {
  if (n < 1 || m < 1) throw Error::invalid_dimension("need n >= 1 and m >= 1");
  if (k < 1 || k > m) throw Error::invalid_argument("need 1 <= k <= m");
  if (trials < 1) throw Error::invalid_argument("need trials >= 1");
  if (!(alpha.value() > Rational(k - 1, 2LL * k)))
    throw Error::invalid_argument(
        "counterexample search needs alpha > (k-1)/(2k); below that threshold dominating "
        "committees exist with high probability");
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    Profile profile = sample_profile(n, m, rng);
    if (!find_committee_bruteforce(profile, k, alpha, DominanceMode::dominating, budget))
      return profile;
  }
  return std::nullopt;
}

namespace {

std::string row_r_value(const SweepRow& row) {
  if (row.config.method != ConstructionMethod::cyclic) return "";
  const double r =
      row.config.r.value_or(std::log(static_cast<double>(std::max(row.config.m, 2))));
  return format_double(r);
}

}  // namespace

void write_csv_header(std::ostream& out) {
  out << "v,n,m,k,alpha,mode,method,r,trials,seed,successes,phat,wilson_lo,wilson_hi,seconds,error\n";
}

void write_csv_row(std::ostream& out, const SweepRow& row) {
  const auto& cfg = row.config;
  out << "v1," << cfg.n << ',' << cfg.m << ',' << cfg.k << ',' << cfg.alpha.str() << ','
      << mode_name(cfg.mode) << ',' << method_name(cfg.method) << ',' << row_r_value(row) << ','
      << cfg.trials << ',' << cfg.seed << ',';
  if (row.result) {
    const auto& res = *row.result;
    out << res.successes << ',' << format_double(res.phat) << ',' << format_double(res.wilson_lo)
        << ',' << format_double(res.wilson_hi) << ',' << format_double(res.seconds) << ',';
  } else {
    out << ",,,,,";
  }
  // A comma inside an error message would split the row.
  std::string err = row.error;
  std::replace(err.begin(), err.end(), ',', ';');
  out << err << '\n';
}

void write_jsonl_row(std::ostream& out, const SweepRow& row) {
  const auto& cfg = row.config;
  nlohmann::json j;
  j["v"] = "v1";
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["k"] = cfg.k;
  j["alpha"] = cfg.alpha.str();
  j["mode"] = mode_name(cfg.mode);
  j["method"] = method_name(cfg.method);
  const std::string r = row_r_value(row);
  if (r.empty())
    j["r"] = nullptr;
  else
    j["r"] = std::stod(r);
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  if (row.result) {
    j["successes"] = row.result->successes;
    j["phat"] = row.result->phat;
    j["wilson_lo"] = row.result->wilson_lo;
    j["wilson_hi"] = row.result->wilson_hi;
    j["seconds"] = row.result->seconds;
  }
  if (!row.error.empty()) j["error"] = row.error;
  out << j.dump() << '\n';
}

}  // namespace icc
