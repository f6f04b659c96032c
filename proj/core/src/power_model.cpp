#include "cellsw/power_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cellsw {

const char* bs_type_name(BsType type) {
  switch (type) {
    case BsType::Macro: return "macro";
    case BsType::Rrh: return "rrh";
    case BsType::Micro: return "micro";
    case BsType::Pico: return "pico";
    case BsType::Femto: return "femto";
  }
  return "?";
}

void PowerProfile::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("PowerProfile: eta must be > 0");
  if (p_tx_w < 0.0) throw std::invalid_argument("PowerProfile: p_tx must be >= 0");
  if (p_sleep_w < 0.0) throw std::invalid_argument("PowerProfile: p_sleep must be >= 0");
  if (!(p_op_w > p_sleep_w))
    throw std::invalid_argument("PowerProfile: p_op must exceed p_sleep");
}

PowerProfile default_profile(BsType type) {
  switch (type) {
    case BsType::Macro: return {4.7, 20.0, 130.0, 75.0};
    case BsType::Rrh:   return {2.8, 20.0, 84.0, 56.0};
    case BsType::Micro: return {2.6, 6.3, 56.0, 39.0};
    case BsType::Pico:  return {4.0, 0.13, 6.8, 4.3};
    case BsType::Femto: return {8.0, 0.05, 4.8, 2.9};
  }
  throw std::invalid_argument("unknown BS type");
}

void validate_stations(std::span<const BaseStation> stations) {
  if (stations.empty()) throw std::invalid_argument("station list is empty");
  if (stations[0].type != BsType::Macro || stations[0].id != 1)
    throw std::invalid_argument("station 0 must be the macro cell with id 1");
  for (std::size_t j = 0; j < stations.size(); ++j) {
    const auto& bs = stations[j];
    if (j > 0 && bs.type == BsType::Macro)
      throw std::invalid_argument("only station 0 may be a macro cell");
    if (bs.id != static_cast<int>(j) + 1)
      throw std::invalid_argument("station ids must be 1..s+1 in order");
    if (!(bs.capacity_mhz > 0.0))
      throw std::invalid_argument("station capacity must be > 0");
    bs.profile.validate();
    // Same type means identical hardware.
    for (std::size_t k = 0; k < j; ++k) {
      if (stations[k].type != bs.type) continue;
      const auto& a = stations[k].profile;
      const auto& b = bs.profile;
      if (a.eta != b.eta || a.p_tx_w != b.p_tx_w || a.p_op_w != b.p_op_w ||
          a.p_sleep_w != b.p_sleep_w)
        throw std::invalid_argument("stations of one type must share a profile");
    }
  }
}

std::vector<double> relative_capacities(std::span<const BaseStation> stations) {
  validate_stations(stations);
  std::vector<double> phis(stations.size());
  for (std::size_t j = 0; j < stations.size(); ++j)
    phis[j] = stations[j].capacity_mhz / stations[0].capacity_mhz;
  return phis;
}

double bs_power_w(const PowerProfile& profile, double load, bool is_on) {
  if (load < 0.0) throw std::invalid_argument("bs_power: negative load");
  if (!is_on) {
    if (load != 0.0)
      throw std::invalid_argument("bs_power: a sleeping BS carries no load");
    return profile.p_sleep_w;
  }
  const double lambda = std::min(load, 1.0);
  return profile.p_op_w + profile.eta * lambda * profile.p_tx_w;
}

double network_power_w(std::span<const BaseStation> stations,
                       std::span<const double> loads,
                       std::span<const std::uint8_t> statuses) {
  if (stations.size() != loads.size() || stations.size() != statuses.size())
    throw std::invalid_argument("network_power: size mismatch");
  double total = 0.0;
  for (std::size_t j = 0; j < stations.size(); ++j)
    total += bs_power_w(stations[j].profile, loads[j], statuses[j] != 0);
  return total;
}

double bs_power_linear_w(const PowerProfile& profile, double load, bool is_on) {
  if (load < 0.0) throw std::invalid_argument("bs_power: negative load");
  if (!is_on) {
    if (load != 0.0)
      throw std::invalid_argument("bs_power: a sleeping BS carries no load");
    return profile.p_sleep_w;
  }
  return profile.p_op_w + profile.eta * load * profile.p_tx_w;
}

double network_power_linear_w(std::span<const BaseStation> stations,
                              std::span<const double> loads,
                              std::span<const std::uint8_t> statuses) {
  if (stations.size() != loads.size() || stations.size() != statuses.size())
    throw std::invalid_argument("network_power: size mismatch");
  double total = 0.0;
  for (std::size_t j = 0; j < stations.size(); ++j)
    total += bs_power_linear_w(stations[j].profile, loads[j], statuses[j] != 0);
  return total;
}

std::optional<double> profitability_threshold(const BaseStation& sc,
                                              const BaseStation& mc,
                                              double phi) {
  if (sc.id == 1) throw std::invalid_argument("the macro cell is never switched");
  const double denom =
      phi * mc.profile.eta * mc.profile.p_tx_w - sc.profile.eta * sc.profile.p_tx_w;
  if (denom <= 0.0) return std::nullopt;
  return (sc.profile.p_op_w - sc.profile.p_sleep_w) / denom;
}

double delta_power_switch_on_w(const BaseStation& sc, const BaseStation& mc,
                               double phi, double sc_load_after_on) {
  if (sc_load_after_on < 0.0 || sc_load_after_on > 1.0)
    throw std::invalid_argument("delta_power_switch_on: load must be in [0,1]");
  return sc.profile.p_op_w + sc.profile.eta * sc_load_after_on * sc.profile.p_tx_w -
         mc.profile.eta * phi * sc_load_after_on * mc.profile.p_tx_w -
         sc.profile.p_sleep_w;
}

}  // namespace cellsw
