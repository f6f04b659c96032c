#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cellsw/network.hpp"

namespace cellsw {

/// Every station on; no offloading.
std::vector<std::uint8_t> all_on_policy(const SlotDemand& demand);

/// Every small cell off, traffic offloaded to the macro blindly (the result
/// may be infeasible; that is this method's defining behavior).
std::vector<std::uint8_t> all_off_policy(const SlotDemand& demand);

/// Small cells sorted ascending by load; each is switched off in turn iff the
/// macro still has room for its traffic. Always returns a feasible policy.
/// Requires macro demand <= 1.
std::vector<std::uint8_t> sorting_policy(const SlotDemand& demand,
                                         std::span<const double> phis);

inline constexpr int kDefaultExhaustiveCap = 15;

/// Enumerates all 2^s policies and returns the feasible one with minimum
/// network power; ties go to the smaller status code. Refuses to run above
/// sc_cap. If the macro demand already exceeds 1 no policy is feasible and
/// all-on is returned.
std::vector<std::uint8_t> exhaustive_policy(const SlotDemand& demand,
                                            std::span<const BaseStation> stations,
                                            std::span<const double> phis,
                                            int sc_cap = kDefaultExhaustiveCap);

}  // namespace cellsw
