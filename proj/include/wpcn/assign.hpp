#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wpcn/types.hpp"

namespace wpcn {

/// Binary group assignment: a(k,l) == 1 means user k harvests in phase l and
/// transmits UL in the other phase. Exactly one phase per user by
/// construction, so a(k,0) + a(k,1) == 1 always holds.
struct Assignment {
  std::vector<std::uint8_t> harvest_phase;  // 0 or 1 per user

  Assignment() = default;
  explicit Assignment(int k_users, int phase = 0)
      : harvest_phase(static_cast<std::size_t>(k_users), static_cast<std::uint8_t>(phase)) {}

  int users() const { return static_cast<int>(harvest_phase.size()); }
  int a(int k, int phase) const { return harvest_phase[k] == phase ? 1 : 0; }
  int ul_phase(int k) const { return other_phase(harvest_phase[k]); }

  /// Users harvesting in `phase` (the group S_{phase+1}), ascending order.
  std::vector<int> group(int phase) const;

  /// Parity initialization: even-indexed users harvest in phase 0.
  static Assignment alternating(int k_users);

  bool operator==(const Assignment&) const = default;
};

/// Objective evaluated for a candidate assignment with all continuous solver
/// variables held fixed (group-dependent SNR terms are the caller's job).
using AssignObjective = std::function<double(const Assignment&)>;

/// One deterministic sweep in user order: each user keeps the better of its
/// two phase choices, ties keeping the incumbent. The objective never
/// decreases across the sweep.
Assignment coordinate_assign(Assignment current, const AssignObjective& objective);

/// Exhaustive 2^K search, lexicographically smallest maximizer on ties.
/// Refuses K > 16.
Assignment enumerate_assign(int k_users, const AssignObjective& objective);

}  // namespace wpcn
