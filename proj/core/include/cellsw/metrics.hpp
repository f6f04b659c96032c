#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cellsw/network.hpp"

namespace cellsw {

/// Outcome of one simulated slot under some switching method.
struct SlotResult {
  std::int64_t slot = 0;
  std::vector<std::uint8_t> policy;
  double power_w = 0.0;
  double cost = 0.0;
  bool feasible = true;
  double tput_norm = 0.0;
};

struct RunSummary {
  std::string method;
  int sc_count = 0;
  double energy_j = 0.0;
  double gain_pct = 0.0;
  double mean_tput = 0.0;
  std::int64_t infeasible_slots = 0;
};

/// Total energy over a run: constant power per slot times slot duration.
double energy_j(std::span<const SlotResult> results, double slot_seconds);

/// Percentage energy reduction relative to the all-on baseline. Negative
/// when the method consumed more than all-on.
double gain_pct(double e_on_j, double e_x_j);

/// Network throughput normalized per-cell to installed capacity: each cell
/// contributes min(load, 1). An overloaded cell saturates at 1; everything
/// riding on an overloaded macro shares that saturation.
double normalized_throughput(const NetworkState& state);

RunSummary summarize(const std::string& method, int sc_count,
                     std::span<const SlotResult> results, double slot_seconds,
                     double e_on_j);

}  // namespace cellsw
