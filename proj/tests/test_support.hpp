#pragma once

#include <vector>

#include "icc/model.hpp"
#include "icc/rng.hpp"

namespace icc::test {

// The three-voter cycle: 0>1>2, 1>2>0, 2>0>1. Head-to-head, 0 beats 1,
// 1 beats 2, and 2 beats 0, each two votes to one.
inline Profile condorcet_cycle() {
  return Profile(3, 3, {0, 1, 2, 1, 2, 0, 2, 0, 1});
}

inline Profile random_profile(int n, int m, Rng& rng) { return sample_profile(n, m, rng); }

// Random committee of size k over [0, m).
inline Committee random_committee(int m, int k, Rng& rng) {
  std::vector<int> ids(m);
  for (int i = 0; i < m; ++i) ids[i] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m - i)));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(k);
  return Committee(ids);
}

}  // namespace icc::test
