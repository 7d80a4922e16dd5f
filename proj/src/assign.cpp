#include "wpcn/assign.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace wpcn {

std::vector<int> Assignment::group(int phase) const {
  std::vector<int> members;
  for (int k = 0; k < users(); ++k) {
    if (harvest_phase[k] == phase) members.push_back(k);
  }
  return members;
}

Assignment Assignment::alternating(int k_users) {
  Assignment a(k_users);
  for (int k = 0; k < k_users; ++k) a.harvest_phase[k] = static_cast<std::uint8_t>(k % 2);
  return a;
}

Assignment coordinate_assign(Assignment current, const AssignObjective& objective) {
  double incumbent = objective(current);
  for (int k = 0; k < current.users(); ++k) {
    Assignment flipped = current;
    flipped.harvest_phase[k] ^= 1;
    const double candidate = objective(flipped);
    if (candidate > incumbent) {
      current = std::move(flipped);
      incumbent = candidate;
    }
  }
  return current;
}

Assignment enumerate_assign(int k_users, const AssignObjective& objective) {
  if (k_users > 16) {
    throw std::invalid_argument("enumerate_assign: refusing K > 16 (2^K evaluations)");
  }
  Assignment best;
  double best_value = -std::numeric_limits<double>::infinity();
  // Counter bit (K-1-k) carries a(k,0) so ascending counters walk the
  // a-matrix in lexicographic order; strict improvement keeps the smallest.
  for (std::uint32_t code = 0; code < (1u << k_users); ++code) {
    Assignment cand(k_users);
    for (int k = 0; k < k_users; ++k) {
      const int a_k1 = (code >> (k_users - 1 - k)) & 1u;
      cand.harvest_phase[k] = static_cast<std::uint8_t>(a_k1 ? 0 : 1);
    }
    const double value = objective(cand);
    if (value > best_value) {
      best_value = value;
      best = std::move(cand);
    }
  }
  return best;
}

}  // namespace wpcn
