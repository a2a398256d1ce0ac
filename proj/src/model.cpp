#include "icc/model.hpp"

#include <algorithm>
#include <unordered_map>
#include <numeric>
#include <string>

namespace icc {

namespace {

void check_dims(int n, int m) {
  if (n < 1 || m < 1)
    throw Error::invalid_dimension("need n >= 1 and m >= 1, got n=" + std::to_string(n) +
                                   " m=" + std::to_string(m));
}

}  // namespace

Committee::Committee(std::vector<int> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error::invalid_argument("empty committee");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw Error::invalid_argument("duplicate committee member");
  if (members_.front() < 0) throw Error::invalid_argument("negative candidate id in committee");
}

bool Committee::contains(int candidate) const {
  return std::binary_search(members_.begin(), members_.end(), candidate);
}

Profile::Profile(int n, int m, std::vector<std::int32_t> order)
    : n_(n), m_(m), order_(std::move(order)) {
  check_dims(n, m);
  if (order_.size() != static_cast<std::size_t>(n) * m)
    throw Error::invalid_dimension("ranking grid has wrong size");
  rank_.assign(order_.size(), -1);
  for (int v = 0; v < n_; ++v) {
    const std::size_t base = static_cast<std::size_t>(v) * m_;
    for (int pos = 0; pos < m_; ++pos) {
      const std::int32_t c = order_[base + pos];
      if (c < 0 || c >= m_ || rank_[base + c] != -1)
        throw Error::invalid_argument("ranking of voter " + std::to_string(v) +
                                      " is not a permutation of 0.." + std::to_string(m_ - 1));
      rank_[base + c] = pos;
    }
  }
}

ScoreMatrix::ScoreMatrix(int n, int m, std::vector<double> scores)
    : n_(n), m_(m), scores_(std::move(scores)) {
  check_dims(n, m);
  if (scores_.size() != static_cast<std::size_t>(n) * m)
    throw Error::invalid_dimension("score grid has wrong size");
  std::vector<double> sorted(m_);
  for (int v = 0; v < n_; ++v) {
    const auto row = std::span<const double>(scores_.data() + static_cast<std::size_t>(v) * m_,
                                             static_cast<std::size_t>(m_));
    for (const double s : row)
      if (!(s >= 0.0 && s <= 1.0))
        throw Error::invalid_argument("score outside [0,1] in row " + std::to_string(v));
    sorted.assign(row.begin(), row.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error::invalid_argument("tied scores in row " + std::to_string(v));
  }
}

ScoreMatrix sample_score_matrix(int n, int m, Rng& rng) {
  check_dims(n, m);
  std::vector<double> scores(static_cast<std::size_t>(n) * m);
  std::vector<double> sorted(m);
  for (int v = 0; v < n; ++v) {
    double* row = scores.data() + static_cast<std::size_t>(v) * m;
    for (int a = 0; a < m; ++a) row[a] = rng.next_unit();
    // Redraw ties until the row is distinct. A tie needs two equal 53-bit
    // draws, so the redraw path effectively never runs.
    for (;;) {
      std::copy(row, row + m, sorted.begin());
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
      std::unordered_map<double, int> first_seen;
      for (int a = 0; a < m; ++a) {
        if (!first_seen.emplace(row[a], a).second) row[a] = rng.next_unit();
      }
    }
  }
  // Row distinctness was just enforced; skip the constructor's re-check.
  return ScoreMatrix(n, m, std::move(scores), ScoreMatrix::AlreadyChecked{});
}

Profile scores_to_profile(const ScoreMatrix& scores) {
  const int n = scores.voters();
  const int m = scores.candidates();
  std::vector<std::int32_t> order(static_cast<std::size_t>(n) * m);
  for (int v = 0; v < n; ++v) {
    const auto row = scores.row(v);
    std::int32_t* out = order.data() + static_cast<std::size_t>(v) * m;
    std::iota(out, out + m, 0);
    std::sort(out, out + m, [&](std::int32_t a, std::int32_t b) { return row[a] > row[b]; });
  }
  return Profile(n, m, std::move(order));
}

Profile sample_profile(int n, int m, Rng& rng) {
  check_dims(n, m);
  std::vector<std::int32_t> order(static_cast<std::size_t>(n) * m);
  for (int v = 0; v < n; ++v) {
    std::int32_t* row = order.data() + static_cast<std::size_t>(v) * m;
    std::iota(row, row + m, 0);
    for (int i = m - 1; i > 0; --i) {
      const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(row[i], row[j]);
    }
  }
  return Profile(n, m, std::move(order));
}

namespace {

void check_candidate(const Profile& p, int c, const char* what) {
  if (c < 0 || c >= p.candidates())
    throw Error::invalid_argument(std::string(what) + " out of range: " + std::to_string(c));
}

}  // namespace

int pairwise_wins(const Profile& profile, int a, int b) {
  check_candidate(profile, a, "candidate");
  check_candidate(profile, b, "candidate");
  if (a == b) throw Error::invalid_argument("pairwise_wins needs two distinct candidates");
  int wins = 0;
  for (int v = 0; v < profile.voters(); ++v)
    if (profile.rank_of(v, a) < profile.rank_of(v, b)) ++wins;
  return wins;
}

CommitteeSplit committee_split(const Profile& profile, const Committee& committee, int a) {
  check_candidate(profile, a, "outsider");
  if (committee.contains(a))
    throw Error::invalid_argument("candidate " + std::to_string(a) + " is a committee member");
  for (const int c : committee.members()) check_candidate(profile, c, "committee member");
  CommitteeSplit split;
  for (int v = 0; v < profile.voters(); ++v) {
    int best = profile.candidates();
    for (const int c : committee.members()) best = std::min(best, profile.rank_of(v, c));
    if (best < profile.rank_of(v, a))
      ++split.wins;
    else
      ++split.losses;
  }
  return split;
}

std::int64_t times_of_win(const Profile& profile, std::span<const int> tuple, int a) {
  check_candidate(profile, a, "outsider");
  std::int64_t total = 0;
  for (const int c : tuple) {
    if (c == a) throw Error::invalid_argument("outsider appears in the committee tuple");
    total += pairwise_wins(profile, c, a);
  }
  return total;
}

std::int64_t times_of_win(const ScoreMatrix& scores, std::span<const int> tuple, int a) {
  if (a < 0 || a >= scores.candidates())
    throw Error::invalid_argument("outsider out of range: " + std::to_string(a));
  std::int64_t total = 0;
  for (const int c : tuple) {
    if (c == a) throw Error::invalid_argument("outsider appears in the committee tuple");
    if (c < 0 || c >= scores.candidates())
      throw Error::invalid_argument("tuple member out of range: " + std::to_string(c));
    for (int v = 0; v < scores.voters(); ++v)
      if (scores.score(v, c) > scores.score(v, a)) ++total;
  }
  return total;
}

}  // namespace icc
