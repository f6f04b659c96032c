#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cellsw {

enum class BsType { Macro, Rrh, Micro, Pico, Femto };

const char* bs_type_name(BsType type);

/// EARTH-model constants for one base-station class.
struct PowerProfile {
  double eta;       // PA efficiency (dimensionless)
  double p_tx_w;    // transmit power, W
  double p_op_w;    // operational circuit power while on, W
  double p_sleep_w; // circuit power while asleep, W

  void validate() const;
};

/// Reference hardware profile for a BS class (EARTH model figures).
PowerProfile default_profile(BsType type);

struct BaseStation {
  int id = 1;  // 1-based; id 1 is the macro cell
  BsType type = BsType::Macro;
  PowerProfile profile{};
  double capacity_mhz = 20.0;
};

/// Validates a station list: macro first (id 1), small cells after, equal
/// profiles within a type, positive capacities.
void validate_stations(std::span<const BaseStation> stations);

/// Relative capacity of each station versus the macro (entry 0 is 1).
std::vector<double> relative_capacities(std::span<const BaseStation> stations);

/// Instantaneous draw of one BS: sleep power when off, operational plus
/// load-proportional PA power when on. The on branch extends continuously to
/// zero load (an idle station still draws its operational power) and clamps
/// the load factor at 1 (the PA cannot emit beyond full load).
double bs_power_w(const PowerProfile& profile, double load, bool is_on);

/// Total network draw: sum of bs_power_w over all stations.
double network_power_w(std::span<const BaseStation> stations,
                       std::span<const double> loads,
                       std::span<const std::uint8_t> statuses);

/// Linear extension of bs_power_w past full load (no clamp). Identical below
/// load 1. The learning agent trains on this signal so an overloaded macro
/// stays visible in its features; reported power always uses the clamped
/// form.
double bs_power_linear_w(const PowerProfile& profile, double load, bool is_on);

double network_power_linear_w(std::span<const BaseStation> stations,
                              std::span<const double> loads,
                              std::span<const std::uint8_t> statuses);

/// Load factor above which keeping the small cell on draws less power than
/// sleeping it and carrying its traffic on the macro. Empty when the small
/// cell's own PA slope already beats the macro's (then the cell should stay
/// on at any load).
std::optional<double> profitability_threshold(const BaseStation& sc,
                                              const BaseStation& mc,
                                              double phi);

/// Signed network-power change from waking the small cell at the given load,
/// all other stations held fixed. Negative means waking it saves power.
double delta_power_switch_on_w(const BaseStation& sc, const BaseStation& mc,
                               double phi, double sc_load_after_on);

}  // namespace cellsw
