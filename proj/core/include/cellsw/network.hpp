#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cellsw/power_model.hpp"

namespace cellsw {

/// Per-slot network snapshot: post-offloading load factors and on/off
/// statuses for the macro (index 0) and all small cells. Immutable by
/// convention; operations return fresh states.
struct NetworkState {
  std::vector<double> loads;
  std::vector<std::uint8_t> statuses;
  std::int64_t slot = 0;

  int sc_count() const { return static_cast<int>(loads.size()) - 1; }
  double macro_load() const { return loads[0]; }
};

/// Native per-cell demand for one slot, load-factor units, entry 0 is the
/// macro. These are the loads each cell would carry with every station on.
struct SlotDemand {
  std::vector<double> native;

  int sc_count() const { return static_cast<int>(native.size()) - 1; }
};

inline constexpr double kFeasibilityTol = 1e-12;

/// Applies a switching policy to native demand. A small cell that is off
/// hands exactly its own demand to the macro, scaled by its relative
/// capacity; one that is on keeps it. The macro load may exceed 1 (a blind
/// all-off can overload it); feasibility is a separate query.
NetworkState apply_policy(const SlotDemand& demand,
                          std::span<const std::uint8_t> policy,
                          std::span<const double> phis);

/// True iff the macro is within capacity (load <= 1, small float tolerance).
bool is_feasible(const NetworkState& state);

/// Number of distinct switching policies for s small cells (2^s).
std::uint64_t policy_count(int sc_count);

inline double network_power_w(std::span<const BaseStation> stations,
                              const NetworkState& state) {
  return network_power_w(stations, state.loads, state.statuses);
}

}  // namespace cellsw
