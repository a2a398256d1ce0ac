#include "icc/blocking.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "icc/dominance.hpp"

namespace icc {

DiscreteGrid::DiscreteGrid(int n, int m) : n_(n), m_(m) {
  if (n < 1) throw Error::invalid_dimension("grid needs n >= 1");
  if (m < 2) throw Error::invalid_dimension("grid needs m >= 2");
  log_base_ = std::log(2.0 * std::log(static_cast<double>(m)) / m);
  const double levels_sq = static_cast<double>(n_) * n_;
  unit_ = (levels_sq + 1.0) / levels_sq * log_base_ / levels_sq;
}

double DiscreteGrid::tail(int p) const { return std::exp(unit_ * p); }

double DiscreteGrid::level(int p) const { return -std::expm1(unit_ * p); }

double DiscreteGrid::log_summary_floor() const {
  const double n4 = std::pow(static_cast<double>(n_), 4);
  return log_base_ * (n4 - 1.0) / n4;
}

double score_summary(std::span<const double> values) {
  if (values.empty()) throw Error::invalid_dimension("empty score vector");
  double log_product = 0.0;
  for (const double v : values) {
    if (v >= 1.0) throw Error::degenerate_input("score summary undefined at value 1");
    log_product += std::log1p(-v);
  }
  const double n = static_cast<double>(values.size());
  return std::exp((n - 1.0) / n * log_product);
}

std::optional<DiscreteScoreVector> discretize_candidate(const ScoreMatrix& scores, int a,
                                                        const DiscreteGrid& grid) {
  if (scores.voters() != grid.n() || scores.candidates() != grid.m())
    throw Error::invalid_argument("grid built for different dimensions");
  if (a < 0 || a >= scores.candidates()) throw Error::invalid_argument("candidate out of range");

  const int levels = grid.levels();
  DiscreteScoreVector beta;
  beta.n = grid.n();
  beta.m = grid.m();
  beta.index.resize(grid.n());
  for (int v = 0; v < grid.n(); ++v) {
    const double remainder = 1.0 - scores.score(v, a);
    if (!(remainder > grid.tail(levels))) return std::nullopt;  // below the lattice
    // Unique p with tail(p) < remainder <= tail(p-1); derived from logs, then
    // nudged to make the bracketing exact under floating error.
    int p = static_cast<int>(std::floor(std::log(remainder) / grid.log_tail(1))) + 1;
    p = std::clamp(p, 1, levels);
    while (p <= levels && !(grid.tail(p) < remainder)) ++p;
    while (p > 1 && grid.tail(p - 1) < remainder) --p;
    if (p > levels) return std::nullopt;
    beta.index[v] = p;
  }
  if (!(grid.log_summary(beta.index_sum()) > grid.log_summary_floor())) return std::nullopt;
  return beta;
}

DominanceCountMatrix dominance_count_matrix(std::span<const DiscreteScoreVector> betas) {
  if (betas.empty()) throw Error::invalid_argument("no score vectors");
  const int k = static_cast<int>(betas.size());
  const int n = betas[0].n;
  for (const auto& b : betas)
    if (b.n != n || b.m != betas[0].m || static_cast<int>(b.index.size()) != n)
      throw Error::invalid_argument("score vectors come from different grids");

  DominanceCountMatrix d;
  d.k = k;
  d.n = n;
  d.entries.assign(static_cast<std::size_t>(k) * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int count = 0;
      for (int v = 0; v < n; ++v)
        if (betas[i].index[v] <= betas[j].index[v]) ++count;
      d.entries[static_cast<std::size_t>(i) * k + j] = count;
    }
  return d;
}

namespace {

void validate_count_matrix(const DominanceCountMatrix& d) {
  if (d.k < 1 || d.n < 1) throw Error::invalid_argument("bad count matrix dimensions");
  if (d.entries.size() != static_cast<std::size_t>(d.k) * d.k)
    throw Error::invalid_argument("count matrix has wrong size");
  for (int i = 0; i < d.k; ++i) {
    if (d.at(i, i) != d.n) throw Error::invalid_argument("count matrix diagonal must equal n");
    for (int j = 0; j < d.k; ++j) {
      if (d.at(i, j) < 0 || d.at(i, j) > d.n)
        throw Error::invalid_argument("count matrix entry outside [0, n]");
      if (i != j && d.at(i, j) + d.at(j, i) < d.n)
        throw Error::invalid_argument("count matrix violates D[i][j] + D[j][i] >= n");
    }
  }
}

// Exact solve of a (k+1) x (k+1) rational system by Gauss-Jordan; returns
// false when singular.
bool solve_system(std::vector<std::vector<mpq_class>>& a, std::vector<mpq_class>& out) {
  const int dim = static_cast<int>(a.size());
  for (int col = 0; col < dim; ++col) {
    int pivot = -1;
    for (int row = col; row < dim; ++row)
      if (a[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return false;
    std::swap(a[col], a[pivot]);
    const mpq_class inv = a[col][col];
    for (int j = col; j <= dim; ++j) a[col][j] /= inv;
    for (int row = 0; row < dim; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const mpq_class factor = a[row][col];
      for (int j = col; j <= dim; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  out.resize(dim);
  for (int i = 0; i < dim; ++i) out[i] = a[i][dim];
  return true;
}

}  // namespace

MixedWeights solve_minimax(const DominanceCountMatrix& d) {
  validate_count_matrix(d);
  const int k = d.k;
  if (k > 10)
    throw Error::unsupported_parameters("exact minimax solver supports k <= 10, got k=" +
                                        std::to_string(k));
  if (k == 1) return {{mpq_class(1)}, mpq_class(d.n)};

  // LP: maximize v subject to sum_j x_j = 1, x_j >= 0, and for every row i
  //     sum_j D[i][j] x_j >= v. A vertex of the feasible set makes k of the
  //     2k inequality constraints tight; enumerate all C(2k, k) choices and
  //     keep the best feasible one. Constraint id < k: row i tight; id >= k:
  //     x_{id-k} = 0.
  MixedWeights best;
  bool have = false;

  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::vector<mpq_class>> a(k + 1, std::vector<mpq_class>(k + 2, mpq_class(0)));
    for (int j = 0; j < k; ++j) a[0][j] = 1;
    a[0][k + 1] = 1;  // sum x = 1
    for (int t = 0; t < k; ++t) {
      auto& row = a[t + 1];
      const int id = pick[t];
      if (id < k) {
        for (int j = 0; j < k; ++j) row[j] = d.at(id, j);
        row[k] = -1;
      } else {
        row[id - k] = 1;
      }
    }
    std::vector<mpq_class> solution;
    if (solve_system(a, solution)) {
      const mpq_class v = solution[k];
      bool feasible = true;
      for (int j = 0; j < k && feasible; ++j)
        if (solution[j] < 0) feasible = false;
      for (int i = 0; i < k && feasible; ++i) {
        mpq_class lhs(0);
        for (int j = 0; j < k; ++j) lhs += mpq_class(d.at(i, j)) * solution[j];
        if (lhs < v) feasible = false;
      }
      if (feasible && (!have || v > best.value)) {
        best.x.assign(solution.begin(), solution.begin() + k);
        best.value = v;
        have = true;
      }
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == k + i) --i;  // choosing k of the 2k constraints
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (!have) throw Error::invalid_argument("minimax enumeration found no feasible vertex");
  return best;
}

std::int64_t default_round_attempts(int n) {
  const double raw = std::ceil(10.0 * std::pow(static_cast<double>(n), 4));
  return static_cast<std::int64_t>(raw);
}

namespace {

int rounding_win_requirement(int n, int k) {
  const double tau = (k + 1.0) / (2.0 * k) - std::pow(static_cast<double>(n), -1.0 / 3.0);
  const auto need = static_cast<std::int64_t>(std::ceil(tau * n));
  return static_cast<int>(std::max<std::int64_t>(need, 0));
}

bool rounding_accepts(const DiscreteScoreVector& candidate,
                      std::span<const DiscreteScoreVector> betas, const DiscreteGrid& grid,
                      int need) {
  const int n = grid.n();
  for (const auto& beta : betas) {
    int covered = 0;
    for (int v = 0; v < n; ++v)
      if (candidate.index[v] >= beta.index[v]) ++covered;
    if (covered < need) return false;
  }
  return grid.log_summary(candidate.index_sum()) > grid.log_base();
}

}  // namespace

std::optional<DiscreteScoreVector> round_mixed(std::span<const DiscreteScoreVector> betas,
                                               const MixedWeights& weights,
                                               const DiscreteGrid& grid, Rng& rng,
                                               std::int64_t max_attempts) {
  if (betas.empty()) throw Error::invalid_argument("no score vectors to round");
  const int k = static_cast<int>(betas.size());
  if (static_cast<int>(weights.x.size()) != k)
    throw Error::invalid_argument("weight count does not match vector count");
  mpq_class total(0);
  for (const auto& w : weights.x) {
    if (w < 0) throw Error::invalid_argument("negative mixing weight");
    total += w;
  }
  if (total != 1) throw Error::invalid_argument("mixing weights must sum to 1");
  for (const auto& b : betas)
    if (b.n != grid.n() || b.m != grid.m())
      throw Error::invalid_argument("score vector from a different grid");

  const int n = grid.n();
  const int need = rounding_win_requirement(n, k);

  std::vector<double> cumulative(k);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    acc += weights.x[i].get_d();
    cumulative[i] = acc;
  }
  cumulative[k - 1] = 1.0;

  DiscreteScoreVector candidate;
  candidate.n = n;
  candidate.m = grid.m();
  candidate.index.resize(n);
  for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (int v = 0; v < n; ++v) {
      const double u = rng.next_unit();
      int i = 0;
      while (u >= cumulative[i]) ++i;
      candidate.index[v] = betas[i].index[v];
    }
    if (rounding_accepts(candidate, betas, grid, need)) return candidate;
  }

  // Rejection sampling exhausted. The accepting realization is guaranteed to
  // exist only probabilistically, so for small search spaces fall through to
  // a full deterministic enumeration before giving up.
  double space = 1.0;
  for (int v = 0; v < n; ++v) space *= k;
  if (n <= 8 && space <= 2e6) {
    std::vector<int> digits(n, 0);
    for (;;) {
      for (int v = 0; v < n; ++v) candidate.index[v] = betas[digits[v]].index[v];
      if (rounding_accepts(candidate, betas, grid, need)) return candidate;
      int v = n - 1;
      while (v >= 0 && digits[v] == k - 1) digits[v--] = 0;
      if (v < 0) break;
      ++digits[v];
    }
  }
  return std::nullopt;
}

std::optional<int> find_blocking_candidate(const ScoreMatrix& scores,
                                           const DiscreteScoreVector& beta0,
                                           const DiscreteGrid& grid) {
  if (beta0.n != grid.n() || beta0.m != grid.m())
    throw Error::invalid_argument("score vector from a different grid");
  if (scores.voters() != grid.n() || scores.candidates() != grid.m())
    throw Error::invalid_argument("grid built for different dimensions");
  const int n = grid.n();
  std::vector<double> threshold(n);
  for (int v = 0; v < n; ++v) threshold[v] = grid.level(beta0.index[v]);
  for (int a = 0; a < scores.candidates(); ++a) {
    int misses = 0;
    for (int v = 0; v < n; ++v) {
      if (!(scores.score(v, a) > threshold[v]) && ++misses >= 2) break;
    }
    if (misses < 2) return a;
  }
  return std::nullopt;
}

const char* block_stage_name(BlockStage stage) {
  switch (stage) {
    case BlockStage::discretize: return "discretize";
    case BlockStage::rounding: return "rounding";
    case BlockStage::blocking: return "blocking";
    case BlockStage::certificate: return "certificate";
  }
  return "?";
}

BlockResult block_committee(const ScoreMatrix& scores, const Committee& committee, Rng& rng,
                            std::int64_t max_attempts) {
  const int n = scores.voters();
  const int m = scores.candidates();
  const int k = committee.k();
  if (committee.members().back() >= m) throw Error::invalid_argument("committee member out of range");

  // The chain concludes that the committee is not alpha-dominating for
  // alpha > (k-1)/(2k) + n^(-1/3) + 1/n; rounded up to the next multiple of
  // 1/n that must still be at most 1 for the certificate to say anything.
  const double slack = std::pow(static_cast<double>(n), -1.0 / 3.0) + 1.0 / n;
  const double alpha_raw = (k - 1.0) / (2.0 * k) + slack;
  const auto alpha_count = static_cast<std::int64_t>(std::ceil(alpha_raw * n));
  if (alpha_count > n)
    throw Error::unsupported_parameters(
        "certificate vacuous: (k-1)/(2k) + n^(-1/3) + 1/n exceeds 1 at n=" + std::to_string(n) +
        ", k=" + std::to_string(k));
  const int required = static_cast<int>(n - alpha_count + 1);

  const DiscreteGrid grid(n, m);
  std::vector<DiscreteScoreVector> betas;
  betas.reserve(k);
  for (const int member : committee.members()) {
    auto beta = discretize_candidate(scores, member, grid);
    if (!beta) return {std::nullopt, BlockStage::discretize};
    betas.push_back(std::move(*beta));
  }

  const DominanceCountMatrix counts = dominance_count_matrix(betas);
  const MixedWeights weights = solve_minimax(counts);

  if (max_attempts < 0) max_attempts = default_round_attempts(n);
  auto beta0 = round_mixed(betas, weights, grid, rng, max_attempts);
  if (!beta0) return {std::nullopt, BlockStage::rounding};

  auto blocker = find_blocking_candidate(scores, *beta0, grid);
  if (!blocker) return {std::nullopt, BlockStage::blocking};

  BlockCertificate cert;
  cert.n = n;
  cert.m = m;
  cert.committee = committee.members();
  cert.blocker = *blocker;
  cert.beta0 = beta0->index;
  cert.alpha = Rational(alpha_count, n);
  cert.required_wins = required;
  cert.asymptotic_regime =
      std::exp(2.0 * std::cbrt(static_cast<double>(n))) / std::pow(static_cast<double>(n), 4) >
      static_cast<double>(k);
  if (committee.contains(*blocker)) return {std::nullopt, BlockStage::certificate};
  cert.win_counts.reserve(k);
  for (const int member : committee.members()) {
    int wins = 0;
    for (int v = 0; v < n; ++v)
      if (scores.score(v, cert.blocker) > scores.score(v, member)) ++wins;
    if (wins < required) return {std::nullopt, BlockStage::certificate};
    cert.win_counts.push_back(wins);
  }
  return {std::move(cert), std::nullopt};
}

bool verify_certificate(const BlockCertificate& cert, const Profile& profile) {
  if (profile.voters() != cert.n || profile.candidates() != cert.m) return false;
  if (cert.blocker < 0 || cert.blocker >= cert.m) return false;
  if (cert.committee.empty() || cert.win_counts.size() != cert.committee.size()) return false;
  const Committee committee(cert.committee);
  if (committee.contains(cert.blocker)) return false;

  // alpha must be a multiple of 1/n and consistent with the win requirement:
  // required_wins > n - alpha*n, so beating every member required_wins times
  // contradicts alpha-domination by the blocker alone.
  if (cert.n % cert.alpha.den() != 0) return false;
  const std::int64_t alpha_count = cert.alpha.num() * (cert.n / cert.alpha.den());
  if (cert.required_wins != cert.n - alpha_count + 1) return false;
  if (alpha_count > cert.n) return false;

  for (std::size_t i = 0; i < cert.committee.size(); ++i) {
    const int wins = pairwise_wins(profile, cert.blocker, cert.committee[i]);
    if (wins != cert.win_counts[i]) return false;
    if (wins < cert.required_wins) return false;
  }
  const auto verdict = is_alpha_dominating(profile, committee, Alpha(cert.alpha));
  return !verdict.holds;
}

std::string certificate_to_json(const BlockCertificate& cert) {
  nlohmann::json j;
  j["n"] = cert.n;
  j["m"] = cert.m;
  j["committee"] = cert.committee;
  j["blocker"] = cert.blocker;
  j["win_counts"] = cert.win_counts;
  j["beta0"] = cert.beta0;
  j["alpha"] = cert.alpha.str();
  j["required_wins"] = cert.required_wins;
  j["asymptotic_regime"] = cert.asymptotic_regime;
  return j.dump();
}

BlockCertificate certificate_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error::parse(std::string("bad certificate: ") + e.what());
  }
  try {
    BlockCertificate cert;
    cert.n = j.at("n").get<int>();
    cert.m = j.at("m").get<int>();
    cert.committee = j.at("committee").get<std::vector<int>>();
    cert.blocker = j.at("blocker").get<int>();
    cert.win_counts = j.at("win_counts").get<std::vector<int>>();
    cert.beta0 = j.at("beta0").get<std::vector<std::int32_t>>();
    cert.alpha = Rational::parse(j.at("alpha").get<std::string>());
    cert.required_wins = j.at("required_wins").get<int>();
    cert.asymptotic_regime = j.at("asymptotic_regime").get<bool>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error::parse(std::string("bad certificate: ") + e.what());
  }
}

}  // namespace icc
