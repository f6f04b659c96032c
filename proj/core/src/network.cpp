#include "cellsw/network.hpp"

#include <stdexcept>

namespace cellsw {

NetworkState apply_policy(const SlotDemand& demand,
                          std::span<const std::uint8_t> policy,
                          std::span<const double> phis) {
  const std::size_t n = demand.native.size();
  if (n == 0) throw std::invalid_argument("apply_policy: empty demand");
  if (policy.size() != n || phis.size() != n)
    throw std::invalid_argument("apply_policy: size mismatch");
  if (policy[0] == 0)
    throw std::invalid_argument("apply_policy: the macro cell is always on");
  for (double d : demand.native)
    if (d < 0.0 || d > 1.0 + kFeasibilityTol)
      throw std::invalid_argument("apply_policy: demand entries must be in [0,1]");

  NetworkState state;
  state.loads.resize(n);
  state.statuses.assign(policy.begin(), policy.end());

  double macro = demand.native[0];
  for (std::size_t j = 1; j < n; ++j) {
    if (policy[j]) {
      state.loads[j] = demand.native[j];
    } else {
      state.loads[j] = 0.0;
      macro += phis[j] * demand.native[j];
    }
  }
  state.loads[0] = macro;
  return state;
}

bool is_feasible(const NetworkState& state) {
  return state.macro_load() <= 1.0 + kFeasibilityTol;
}

std::uint64_t policy_count(int sc_count) {
  if (sc_count < 0) throw std::invalid_argument("policy_count: negative count");
  if (sc_count > 62) throw std::overflow_error("policy_count: 2^s overflows");
  return std::uint64_t{1} << sc_count;
}

}  // namespace cellsw
