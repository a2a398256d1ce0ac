#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "icc/errors.hpp"
#include "icc/rng.hpp"

namespace icc {

// Candidates and voters are 0-based everywhere, including all file formats.

class Committee {
 public:
  Committee() = default;
  // Members may arrive in any order; duplicates are rejected.
  explicit Committee(std::vector<int> members);

  int k() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& members() const { return members_; }
  bool contains(int candidate) const;

  friend bool operator==(const Committee& a, const Committee& b) { return a.members_ == b.members_; }

 private:
  std::vector<int> members_;  // sorted, distinct
};

// n strict rankings over m candidates. Immutable after construction; the
// inverse (rank-of-candidate) table is built eagerly so pairwise counts are
// O(1) lookups.
class Profile {
 public:
  // order is row-major n*m, each row a permutation of [0, m) listing the
  // voter's candidates most-preferred first. Validated on construction.
  Profile(int n, int m, std::vector<std::int32_t> order);

  int voters() const { return n_; }
  int candidates() const { return m_; }

  std::span<const std::int32_t> ranking(int voter) const {
    return {order_.data() + static_cast<std::size_t>(voter) * m_, static_cast<std::size_t>(m_)};
  }
  // 0 = most preferred.
  int rank_of(int voter, int candidate) const {
    return rank_[static_cast<std::size_t>(voter) * m_ + candidate];
  }

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::int32_t> order_;
  std::vector<std::int32_t> rank_;
};

// n x m grid of scores in [0, 1], pairwise distinct within each row.
class ScoreMatrix {
 public:
  ScoreMatrix(int n, int m, std::vector<double> scores);

  int voters() const { return n_; }
  int candidates() const { return m_; }
  double score(int voter, int candidate) const {
    return scores_[static_cast<std::size_t>(voter) * m_ + candidate];
  }
  std::span<const double> row(int voter) const {
    return {scores_.data() + static_cast<std::size_t>(voter) * m_, static_cast<std::size_t>(m_)};
  }

 private:
  struct AlreadyChecked {};
  ScoreMatrix(int n, int m, std::vector<double> scores, AlreadyChecked)
      : n_(n), m_(m), scores_(std::move(scores)) {}
  friend ScoreMatrix sample_score_matrix(int n, int m, Rng& rng);

  int n_ = 0;
  int m_ = 0;
  std::vector<double> scores_;
};

// n*m independent Uniform[0,1] draws; the within-row tie that floating point
// makes possible (probability ~2^-53 per pair) is resolved by redrawing the
// tied entry, so row-distinctness always holds.
ScoreMatrix sample_score_matrix(int n, int m, Rng& rng);

// Rank candidates per voter in decreasing score order.
Profile scores_to_profile(const ScoreMatrix& scores);

// Each ranking drawn by an unbiased shuffle, independently per voter.
Profile sample_profile(int n, int m, Rng& rng);

// |{v : a preferred to b by voter v}|. a != b required.
int pairwise_wins(const Profile& profile, int a, int b);

// wins = voters preferring at least one member of S to a; losses = the rest.
// a must be outside S.
struct CommitteeSplit {
  int wins = 0;
  int losses = 0;
};
CommitteeSplit committee_split(const Profile& profile, const Committee& committee, int a);

// Sum of pairwise wins of the tuple's entries against a, counting
// multiplicity. a must not appear in the tuple.
std::int64_t times_of_win(const Profile& profile, std::span<const int> tuple, int a);
std::int64_t times_of_win(const ScoreMatrix& scores, std::span<const int> tuple, int a);

}  // namespace icc
