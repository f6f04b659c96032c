#include "cellsw/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cellsw {

std::vector<std::uint8_t> all_on_policy(const SlotDemand& demand) {
  return std::vector<std::uint8_t>(demand.native.size(), 1);
}

std::vector<std::uint8_t> all_off_policy(const SlotDemand& demand) {
  std::vector<std::uint8_t> policy(demand.native.size(), 0);
  policy[0] = 1;
  return policy;
}

std::vector<std::uint8_t> sorting_policy(const SlotDemand& demand,
                                         std::span<const double> phis) {
  const int s = demand.sc_count();
  if (phis.size() != demand.native.size())
    throw std::invalid_argument("sorting: size mismatch");
  if (demand.native[0] > 1.0 + kFeasibilityTol)
    throw std::invalid_argument("sorting: macro demand already exceeds capacity");

  std::vector<int> order(s);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return demand.native[a] < demand.native[b];
  });

  std::vector<std::uint8_t> policy(demand.native.size(), 1);
  double macro = demand.native[0];
  for (int j : order) {
    const double offloaded = phis[j] * demand.native[j];
    if (macro + offloaded <= 1.0 + kFeasibilityTol) {
      policy[j] = 0;
      macro += offloaded;
    }
    // does not fit: keep it on and try the next-larger cell
  }
  return policy;
}

std::vector<std::uint8_t> exhaustive_policy(const SlotDemand& demand,
                                            std::span<const BaseStation> stations,
                                            std::span<const double> phis,
                                            int sc_cap) {
  const int s = demand.sc_count();
  if (stations.size() != demand.native.size() ||
      phis.size() != demand.native.size())
    throw std::invalid_argument("exhaustive: size mismatch");
  if (s > sc_cap)
    throw std::invalid_argument("exhaustive: " + std::to_string(s) +
                                " small cells exceeds the cap of " +
                                std::to_string(sc_cap));
  if (demand.native[0] > 1.0 + kFeasibilityTol) return all_on_policy(demand);

  // Status code bit s-i holds small cell i, so ascending enumeration breaks
  // power ties toward the smaller code.
  const std::uint64_t count = policy_count(s);
  std::vector<std::uint8_t> policy(demand.native.size(), 1);
  std::vector<std::uint8_t> best;
  double best_power = 0.0;
  for (std::uint64_t code = 0; code < count; ++code) {
    for (int i = 1; i <= s; ++i)
      policy[i] = static_cast<std::uint8_t>((code >> (s - i)) & 1u);
    const NetworkState state = apply_policy(demand, policy, phis);
    if (!is_feasible(state)) continue;
    const double power = network_power_w(stations, state);
    if (best.empty() || power < best_power) {
      best = policy;
      best_power = power;
    }
  }
  return best;  // never empty: all-on is feasible when macro demand <= 1
}

}  // namespace cellsw
