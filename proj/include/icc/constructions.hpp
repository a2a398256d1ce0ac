#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "icc/model.hpp"
#include "icc/rational.hpp"

namespace icc {

// k contiguous voter groups covering [0, n); group i (0-based) is
// [ceil(i*n/k), ceil((i+1)*n/k)), so sizes differ by at most one.
class VoterPartition {
 public:
  VoterPartition(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int group_begin(int group) const { return bounds_[group]; }
  int group_end(int group) const { return bounds_[group + 1]; }
  int group_size(int group) const { return bounds_[group + 1] - bounds_[group]; }
  int group_of(int voter) const;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<int> bounds_;  // k+1 entries
};

// Cyclic threshold pattern: theta[j] (0-based) is the requirement a committee
// member must clear for voters whose group sits j steps "after" the member's
// own position, decreasing from theta[0] down to theta[k-1] = 0.
struct ThresholdVector {
  int n = 0;
  int m = 0;
  int k = 0;
  double r = 0.0;
  std::vector<double> theta;
};

// Committee as the k-tuple the cyclic construction produces (repeats
// allowed), plus the deduplicated set view dominance checks consume.
struct CyclicCommittee {
  std::vector<int> tuple;
  Committee dedup;
};

// Voter fractions per threshold bucket, stored as integer counts over n.
// counts[0] is the number of voters with score >= theta[0]; counts[i] counts
// theta[i-1] > score >= theta[i]. Since theta[k-1] = 0, the counts always sum
// to n.
struct BucketProfile {
  int n = 0;
  std::vector<std::int64_t> counts;
};

VoterPartition partition_voters(int n, int k);

// Per group, the candidate with the largest score sum over that group
// (smallest id on ties). Needs k <= n and k <= m.
CyclicCommittee best_per_group_committee(const ScoreMatrix& scores, int k);

// Threshold vector for the r-cyclic construction. Needs k >= 2 (the formula
// divides by k-1) and 0 < r < m.
ThresholdVector cyclic_thresholds(int n, int m, int k, double r);

// For each position independently, the smallest candidate whose scores clear
// the cyclically shifted threshold pattern; nullopt if any position has no
// qualifying candidate.
std::optional<CyclicCommittee> find_cyclic_threshold_committee(const ScoreMatrix& scores, int k,
                                                               double r);

// Bucket candidate a's per-voter scores by the threshold vector.
BucketProfile bucket_profile(const ScoreMatrix& scores, int a, const ThresholdVector& thresholds);

// True iff sum_{i>=2} (i-1)*pi_i < ((k-1)/(2k) - eps) * k, evaluated in exact
// rational arithmetic. eps must lie in (0, (k-1)/(2k)).
bool is_feasible_sequence(const BucketProfile& pi, int k, const Rational& eps);

}  // namespace icc
