#pragma once

#include <cstdint>
#include <optional>

#include "icc/model.hpp"
#include "icc/rational.hpp"

namespace icc {

enum class DominanceMode { winning, dominating };

struct DominanceVerdict {
  bool holds = false;
  // On failure, the smallest outsider that violates the requirement.
  std::optional<int> witness;
};

inline constexpr std::int64_t kDefaultEnumerationBudget = 10'000'000;

// S is alpha-winning if every outsider a is beaten by *some* member of S in
// the eyes of at least alpha*n voters (per-voter disjunction).
DominanceVerdict is_alpha_winning(const Profile& profile, const Committee& committee,
                                  const Alpha& alpha);

// S is alpha-dominating if for every outsider a a *single* member b beats a
// for at least alpha*n voters.
DominanceVerdict is_alpha_dominating(const Profile& profile, const Committee& committee,
                                     const Alpha& alpha);

DominanceVerdict check_dominance(const Profile& profile, const Committee& committee,
                                 const Alpha& alpha, DominanceMode mode);

// Lexicographically smallest qualifying k-committee, or nullopt. Refuses to
// enumerate more than `budget` committees.
std::optional<Committee> find_committee_bruteforce(const Profile& profile, int k,
                                                   const Alpha& alpha, DominanceMode mode,
                                                   std::int64_t budget = kDefaultEnumerationBudget);

// Smallest candidate winning at least t voters head-to-head against every
// other candidate, or nullopt.
std::optional<int> find_strong_pairwise_winner(const Profile& profile, std::int64_t t);

// How many candidates qualify. The count carries far more signal than the
// existence bit when the event is nearly certain.
int count_strong_pairwise_winners(const Profile& profile, std::int64_t t);

// Largest count c for which some k-committee meets the mode's requirement
// with threshold c, i.e. max over committees of (min over outsiders of the
// mode's per-outsider count). A committee qualifying at alpha exists iff
// alpha.meets(c, n), so one enumeration answers every alpha at once.
// Returns n when k = m (no outsiders).
int max_qualifying_count(const Profile& profile, int k, DominanceMode mode,
                         std::int64_t budget = kDefaultEnumerationBudget);

// C(m, k), saturating at limit+1 so budget checks never overflow.
std::int64_t committee_count(int m, int k, std::int64_t limit);

}  // namespace icc
