#include "icc/dominance.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace icc {

namespace {

void check_committee(const Profile& profile, const Committee& committee) {
  if (committee.k() < 1) throw Error::invalid_argument("empty committee");
  if (committee.members().back() >= profile.candidates())
    throw Error::invalid_argument("committee member out of range");
}

}  // namespace

DominanceVerdict is_alpha_winning(const Profile& profile, const Committee& committee,
                                  const Alpha& alpha) {
  check_committee(profile, committee);
  const int n = profile.voters();
  const int m = profile.candidates();
  // Per-voter best rank over the committee, then one pass over outsiders.
  std::vector<int> best(n, m);
  for (int v = 0; v < n; ++v)
    for (const int c : committee.members()) best[v] = std::min(best[v], profile.rank_of(v, c));
  for (int a = 0; a < m; ++a) {
    if (committee.contains(a)) continue;
    int wins = 0;
    for (int v = 0; v < n; ++v)
      if (best[v] < profile.rank_of(v, a)) ++wins;
    if (!alpha.meets(wins, n)) return {false, a};
  }
  return {true, std::nullopt};
}

DominanceVerdict is_alpha_dominating(const Profile& profile, const Committee& committee,
                                     const Alpha& alpha) {
  check_committee(profile, committee);
  const int n = profile.voters();
  const int m = profile.candidates();
  for (int a = 0; a < m; ++a) {
    if (committee.contains(a)) continue;
    bool dominated = false;
    for (const int c : committee.members()) {
      int wins = 0;
      for (int v = 0; v < n; ++v)
        if (profile.rank_of(v, c) < profile.rank_of(v, a)) ++wins;
      if (alpha.meets(wins, n)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) return {false, a};
  }
  return {true, std::nullopt};
}

DominanceVerdict check_dominance(const Profile& profile, const Committee& committee,
                                 const Alpha& alpha, DominanceMode mode) {
  return mode == DominanceMode::winning ? is_alpha_winning(profile, committee, alpha)
                                        : is_alpha_dominating(profile, committee, alpha);
}

std::int64_t committee_count(int m, int k, std::int64_t limit) {
  if (k < 0 || k > m) return 0;
  std::int64_t count = 1;
  for (int i = 1; i <= k; ++i) {
    count = count * (m - k + i) / i;  // exact: product of i consecutive ints is divisible by i!
    if (count > limit) return limit + 1;
  }
  return count;
}

std::optional<Committee> find_committee_bruteforce(const Profile& profile, int k,
                                                   const Alpha& alpha, DominanceMode mode,
                                                   std::int64_t budget) {
  const int m = profile.candidates();
  if (k < 1 || k > m) throw Error::invalid_argument("need 1 <= k <= m");
  if (committee_count(m, k, budget) > budget)
    throw Error::budget_exceeded("C(" + std::to_string(m) + "," + std::to_string(k) +
                                 ") committees exceed budget " + std::to_string(budget));

  // Lexicographic combination enumeration; the first qualifying committee is
  // the lexicographically smallest.
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    Committee committee(pick);
    if (check_dominance(profile, committee, alpha, mode).holds) return committee;
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) return std::nullopt;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

int max_qualifying_count(const Profile& profile, int k, DominanceMode mode, std::int64_t budget) {
  const int n = profile.voters();
  const int m = profile.candidates();
  if (k < 1 || k > m) throw Error::invalid_argument("need 1 <= k <= m");
  if (committee_count(m, k, budget) > budget)
    throw Error::budget_exceeded("C(" + std::to_string(m) + "," + std::to_string(k) +
                                 ") committees exceed budget " + std::to_string(budget));
  if (k == m) return n;

  int best_over_committees = -1;
  std::vector<int> pick(k);
  std::vector<int> best_rank(n);
  for (int i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    int worst_outsider = n;  // min over outsiders of the per-outsider count
    if (mode == DominanceMode::winning) {
      for (int v = 0; v < n; ++v) {
        int best = m;
        for (const int c : pick) best = std::min(best, profile.rank_of(v, c));
        best_rank[v] = best;
      }
      for (int a = 0; a < m && worst_outsider > best_over_committees; ++a) {
        if (std::find(pick.begin(), pick.end(), a) != pick.end()) continue;
        int wins = 0;
        for (int v = 0; v < n; ++v)
          if (best_rank[v] < profile.rank_of(v, a)) ++wins;
        worst_outsider = std::min(worst_outsider, wins);
      }
    } else {
      for (int a = 0; a < m && worst_outsider > best_over_committees; ++a) {
        if (std::find(pick.begin(), pick.end(), a) != pick.end()) continue;
        int best_member = 0;
        for (const int c : pick) {
          int wins = 0;
          for (int v = 0; v < n; ++v)
            if (profile.rank_of(v, c) < profile.rank_of(v, a)) ++wins;
          best_member = std::max(best_member, wins);
        }
        worst_outsider = std::min(worst_outsider, best_member);
      }
    }
    best_over_committees = std::max(best_over_committees, worst_outsider);
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best_over_committees;
}

namespace {

// a fails iff some b is ranked above a by at least (n - t + 1) voters, i.e.
// b lies in the intersection of the "ranked above a" prefixes of some
// (n - t + 1)-subset of voters. When there are few such subsets it is much
// faster to scan the shortest prefix of each subset than to tally every
// candidate, because a witness b usually appears within a few probes.
bool strong_winner_via_subsets(const Profile& profile, int a,
                               const std::vector<std::vector<int>>& subsets) {
  for (const auto& subset : subsets) {
    // Scan the subset's smallest prefix; membership in the rest is a rank
    // lookup.
    int scan = subset[0];
    for (const int v : subset)
      if (profile.rank_of(v, a) < profile.rank_of(scan, a)) scan = v;
    const auto ranking = profile.ranking(scan);
    const int len = profile.rank_of(scan, a);
    for (int pos = 0; pos < len; ++pos) {
      const int b = ranking[pos];
      bool in_all = true;
      for (const int v : subset) {
        if (v == scan) continue;
        if (profile.rank_of(v, b) >= profile.rank_of(v, a)) {
          in_all = false;
          break;
        }
      }
      if (in_all) return false;  // witness: b beats a in >= n-t+1 voters
    }
  }
  return true;
}

bool strong_winner_via_counts(const Profile& profile, int a, int limit) {
  // c[b] = number of voters ranking b above a; a qualifies iff all c[b] <= limit.
  const int n = profile.voters();
  std::vector<int> counts(profile.candidates(), 0);
  for (int v = 0; v < n; ++v) {
    const auto ranking = profile.ranking(v);
    const int len = profile.rank_of(v, a);
    for (int pos = 0; pos < len; ++pos)
      if (++counts[ranking[pos]] > limit) return false;
  }
  return true;
}

void enumerate_subsets(int n, int size, std::vector<std::vector<int>>& out) {
  std::vector<int> pick(size);
  for (int i = 0; i < size; ++i) pick[i] = i;
  for (;;) {
    out.push_back(pick);
    int i = size - 1;
    while (i >= 0 && pick[i] == n - size + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

namespace {

struct StrongWinnerScan {
  std::vector<std::vector<int>> subsets;
  int limit = 0;

  StrongWinnerScan(int n, std::int64_t t) : limit(n - static_cast<int>(t)) {
    const int subset_size = n - static_cast<int>(t) + 1;
    if (committee_count(n, subset_size, 64) <= 64) enumerate_subsets(n, subset_size, subsets);
  }

  bool qualifies(const Profile& profile, int a) const {
    return subsets.empty() ? strong_winner_via_counts(profile, a, limit)
                           : strong_winner_via_subsets(profile, a, subsets);
  }
};

}  // namespace

std::optional<int> find_strong_pairwise_winner(const Profile& profile, std::int64_t t) {
  if (t < 0) throw Error::invalid_argument("threshold t must be >= 0");
  const int n = profile.voters();
  const int m = profile.candidates();
  if (t == 0) return 0;
  if (m < 2) return 0;  // no opponents; candidate 0 qualifies vacuously
  if (t > n) return std::nullopt;

  const StrongWinnerScan scan(n, t);
  for (int a = 0; a < m; ++a)
    if (scan.qualifies(profile, a)) return a;
  return std::nullopt;
}

int count_strong_pairwise_winners(const Profile& profile, std::int64_t t) {
  if (t < 0) throw Error::invalid_argument("threshold t must be >= 0");
  const int n = profile.voters();
  const int m = profile.candidates();
  if (t == 0) return m;
  if (m < 2) return m;
  if (t > n) return 0;

  const StrongWinnerScan scan(n, t);
  int count = 0;
  for (int a = 0; a < m; ++a)
    if (scan.qualifies(profile, a)) ++count;
  return count;
}

}  // namespace icc
