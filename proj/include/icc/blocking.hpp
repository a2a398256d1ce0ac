#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "icc/model.hpp"
#include "icc/rational.hpp"
#include "icc/rng.hpp"

namespace icc {

// Discretization lattice for score vectors: per voter, n^2 levels
//   g_p = 1 - (2 ln m / m)^{((n^2+1)/n^2) * (p/n^2)},  p in 1..n^2,
// strictly increasing in p. Levels are computed from the closed form on
// demand; comparisons between lattice vectors always go through the integer
// indices, which is tie-exact.
class DiscreteGrid {
 public:
  DiscreteGrid(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int levels() const { return n_ * n_; }

  double level(int p) const;       // g_p, the score value at index p
  double tail(int p) const;        // 1 - g_p, decreasing in p
  double log_tail(int p) const { return unit_ * p; }

  // ln(2 ln m / m), the log of the base that every bound is measured against.
  double log_base() const { return log_base_; }
  // ln B(beta) for a lattice vector with index sum `sum`: the summary has the
  // closed form exp(((n-1)/n) * unit * sum).
  double log_summary(std::int64_t index_sum) const {
    return (static_cast<double>(n_ - 1) / n_) * unit_ * static_cast<double>(index_sum);
  }
  // ln of the discretize stage's summary requirement, (2lnm/m)^((n^4-1)/n^4).
  double log_summary_floor() const;

  friend bool operator==(const DiscreteGrid& a, const DiscreteGrid& b) {
    return a.n_ == b.n_ && a.m_ == b.m_;
  }

 private:
  int n_ = 0;
  int m_ = 0;
  double log_base_ = 0.0;  // L < 0
  double unit_ = 0.0;      // ((n^2+1)/n^2) * L / n^2 = ln T_1
};

// A point of the lattice: one index per voter.
struct DiscreteScoreVector {
  int n = 0;
  int m = 0;
  std::vector<std::int32_t> index;  // 1-based lattice indices, one per voter

  std::int64_t index_sum() const {
    std::int64_t s = 0;
    for (const auto p : index) s += p;
    return s;
  }
};

// B(values) = (prod (1 - value_v))^((n-1)/n). Every value must be < 1.
double score_summary(std::span<const double> values);

// Round candidate a's scores up to the lattice: the unique bracketing index
// per voter when it exists. Returns nullopt when some score falls outside the
// lattice or the resulting summary does not clear the stage floor.
std::optional<DiscreteScoreVector> discretize_candidate(const ScoreMatrix& scores, int a,
                                                        const DiscreteGrid& grid);

// D[i][j] = |{v : beta_i,v <= beta_j,v}|, compared via lattice indices.
struct DominanceCountMatrix {
  int k = 0;
  int n = 0;
  std::vector<int> entries;  // row-major k*k
  int at(int i, int j) const { return entries[static_cast<std::size_t>(i) * k + j]; }
};

DominanceCountMatrix dominance_count_matrix(std::span<const DiscreteScoreVector> betas);

// Optimal mixed weights for the zero-sum game max_x min_i sum_j x_j D[i][j],
// solved exactly over rationals by enumerating basic solutions. For any D
// satisfying the invariants (D[i][i] = n, D[i][j] + D[j][i] >= n) the value
// is at least ((k+1)/(2k)) * n, exactly.
struct MixedWeights {
  std::vector<mpq_class> x;  // non-negative, sums to 1 exactly
  mpq_class value;           // min_i sum_j x_j D[i][j]
};

MixedWeights solve_minimax(const DominanceCountMatrix& d);

// Coordinatewise mixture of the input vectors: beta*_v = beta_i,v with
// probability x_i. Accepts the first realization with
//   (a) |{v : beta*_v >= beta_i,v}| >= ceil(((k+1)/(2k) - n^(-1/3)) n)  for all i,
//   (b) B(beta*) > 2 ln m / m,
// and falls back to exhaustively enumerating realizations (smallest first)
// when rejection sampling runs out of attempts and k^n is small enough.
std::optional<DiscreteScoreVector> round_mixed(std::span<const DiscreteScoreVector> betas,
                                               const MixedWeights& weights,
                                               const DiscreteGrid& grid, Rng& rng,
                                               std::int64_t max_attempts);

std::int64_t default_round_attempts(int n);  // ceil(10 n^4)

// Smallest candidate whose score strictly exceeds beta0 for at least n-1
// voters, or nullopt.
std::optional<int> find_blocking_candidate(const ScoreMatrix& scores,
                                           const DiscreteScoreVector& beta0,
                                           const DiscreteGrid& grid);

// Self-contained evidence that `committee` is not alpha-dominating for any
// alpha >= the recorded one: the blocker beats every member in at least
// required_wins voters, and required_wins > n - alpha*n.
struct BlockCertificate {
  int n = 0;
  int m = 0;
  std::vector<int> committee;           // sorted member ids
  int blocker = -1;                     // a0
  std::vector<int> win_counts;          // |a0 beats c_i|, aligned with committee
  std::vector<std::int32_t> beta0;      // lattice indices of the rounded vector
  Rational alpha;                       // smallest multiple of 1/n at or above
                                        // (k-1)/(2k) + n^(-1/3) + 1/n
  int required_wins = 0;                // n - alpha*n + 1
  bool asymptotic_regime = false;       // exp(2 n^(1/3)) / n^4 > k
};

std::string certificate_to_json(const BlockCertificate& cert);
BlockCertificate certificate_from_json(const std::string& text);

enum class BlockStage { discretize, rounding, blocking, certificate };
const char* block_stage_name(BlockStage stage);

struct BlockResult {
  std::optional<BlockCertificate> certificate;
  std::optional<BlockStage> failed_stage;
};

// Full pipeline: discretize each member, build the count matrix, solve the
// game, round the mixture, find a blocking candidate, and recount the final
// wins from the raw scores. Any stage failure reports its tag instead.
BlockResult block_committee(const ScoreMatrix& scores, const Committee& committee, Rng& rng,
                            std::int64_t max_attempts = -1);  // -1: default_round_attempts(n)

// Re-derives every claim of the certificate from a profile: win counts, the
// implied alpha bound, and the contradiction with alpha-dominating.
bool verify_certificate(const BlockCertificate& cert, const Profile& profile);

}  // namespace icc
