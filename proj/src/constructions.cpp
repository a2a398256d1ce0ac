#include "icc/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace icc {

VoterPartition::VoterPartition(int n, int k) : n_(n), k_(k) {
  if (n < 1) throw Error::invalid_argument("need n >= 1");
  if (k < 1 || k > n) throw Error::invalid_argument("need 1 <= k <= n for a voter partition");
  bounds_.resize(k + 1);
  for (int i = 0; i <= k; ++i)
    bounds_[i] = static_cast<int>((static_cast<std::int64_t>(i) * n + k - 1) / k);
}

int VoterPartition::group_of(int voter) const {
  const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), voter);
  return static_cast<int>(it - bounds_.begin()) - 1;
}

VoterPartition partition_voters(int n, int k) { return VoterPartition(n, k); }

CyclicCommittee best_per_group_committee(const ScoreMatrix& scores, int k) {
  const int n = scores.voters();
  const int m = scores.candidates();
  if (k < 1 || k > n || k > m)
    throw Error::invalid_argument("need 1 <= k <= min(n, m) for best-per-group");
  const VoterPartition partition(n, k);
  std::vector<int> tuple(k);
  std::vector<double> sums(m);
  for (int g = 0; g < k; ++g) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (int v = partition.group_begin(g); v < partition.group_end(g); ++v) {
      const auto row = scores.row(v);
      for (int a = 0; a < m; ++a) sums[a] += row[a];
    }
    int best = 0;
    for (int a = 1; a < m; ++a)
      if (sums[a] > sums[best]) best = a;
    tuple[g] = best;
  }
  std::vector<int> dedup = tuple;
  std::sort(dedup.begin(), dedup.end());
  dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
  return {std::move(tuple), Committee(std::move(dedup))};
}

ThresholdVector cyclic_thresholds(int n, int m, int k, double r) {
  if (k < 2)
    throw Error::unsupported_parameters(
        "cyclic thresholds need k >= 2 (the exponent divides by k-1); single-candidate "
        "committees have no threshold pattern");
  if (n < k) throw Error::invalid_argument("need n >= k");
  if (!(r > 0.0) || r >= static_cast<double>(m))
    throw Error::invalid_argument("need 0 < r < m, got r=" + std::to_string(r));
  ThresholdVector out;
  out.n = n;
  out.m = m;
  out.k = k;
  out.r = r;
  out.theta.resize(k);
  const int group_cap = (n + k - 1) / k;
  const double scale =
      (2.0 * (std::log(r) - std::log(static_cast<double>(m))) / n) *
      (static_cast<double>(n) / k / group_cap);
  for (int j = 0; j < k; ++j) {
    const double exponent = scale * (static_cast<double>(k - 1 - j) / (k - 1));
    out.theta[j] = -std::expm1(exponent);  // 1 - exp(exponent), accurate near 0
  }
  return out;
}

std::optional<CyclicCommittee> find_cyclic_threshold_committee(const ScoreMatrix& scores, int k,
                                                               double r) {
  const int n = scores.voters();
  const int m = scores.candidates();
  const ThresholdVector thresholds = cyclic_thresholds(n, m, k, r);
  const VoterPartition partition(n, k);

  // Positions are independent: position j needs a candidate whose score for
  // every voter in group g clears theta[(g - j) mod k].
  std::vector<double> per_voter(n);
  std::vector<int> tuple(k);
  for (int j = 0; j < k; ++j) {
    for (int g = 0; g < k; ++g) {
      const double need = thresholds.theta[((g - j) % k + k) % k];
      for (int v = partition.group_begin(g); v < partition.group_end(g); ++v) per_voter[v] = need;
    }
    int found = -1;
    for (int a = 0; a < m && found < 0; ++a) {
      bool ok = true;
      for (int v = 0; v < n; ++v) {
        if (scores.score(v, a) < per_voter[v]) {
          ok = false;
          break;
        }
      }
      if (ok) found = a;
    }
    if (found < 0) return std::nullopt;
    tuple[j] = found;
  }
  std::vector<int> dedup = tuple;
  std::sort(dedup.begin(), dedup.end());
  dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
  return CyclicCommittee{std::move(tuple), Committee(std::move(dedup))};
}

BucketProfile bucket_profile(const ScoreMatrix& scores, int a, const ThresholdVector& thresholds) {
  if (thresholds.n != scores.voters())
    throw Error::invalid_argument("threshold vector built for a different voter count");
  if (a < 0 || a >= scores.candidates()) throw Error::invalid_argument("candidate out of range");
  BucketProfile out;
  out.n = scores.voters();
  out.counts.assign(thresholds.k, 0);
  for (int v = 0; v < scores.voters(); ++v) {
    const double s = scores.score(v, a);
    // theta is non-increasing and ends at 0, so the scan always lands.
    for (int i = 0; i < thresholds.k; ++i) {
      if (s >= thresholds.theta[i]) {
        ++out.counts[i];
        break;
      }
    }
  }
  return out;
}

bool is_feasible_sequence(const BucketProfile& pi, int k, const Rational& eps) {
  if (static_cast<int>(pi.counts.size()) != k)
    throw Error::invalid_argument("bucket profile has wrong length");
  std::int64_t total = 0;
  for (const auto c : pi.counts) {
    if (c < 0) throw Error::invalid_argument("negative bucket count");
    total += c;
  }
  if (total != pi.n) throw Error::invalid_argument("bucket counts must sum to n");
  if (!(eps > Rational(0, 1)) || !(eps < Rational(k - 1, 2LL * k)))
    throw Error::invalid_argument("eps must lie in (0, (k-1)/(2k))");

  // sum (i-1) pi_i < ((k-1)/(2k) - eps) * k
  // <=> 2 q W < n (q (k-1) - 2 p k)   with W = sum of weighted counts.
  __int128 weighted = 0;
  for (int i = 1; i < k; ++i) weighted += static_cast<__int128>(i) * pi.counts[i];
  const __int128 lhs = 2 * static_cast<__int128>(eps.den()) * weighted;
  const __int128 rhs = static_cast<__int128>(pi.n) *
                       (static_cast<__int128>(eps.den()) * (k - 1) -
                        2 * static_cast<__int128>(eps.num()) * k);
  return lhs < rhs;
}

}  // namespace icc
