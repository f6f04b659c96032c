#include "cellsw/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cellsw {

double energy_j(std::span<const SlotResult> results, double slot_seconds) {
  if (results.empty()) throw std::invalid_argument("energy: no slot results");
  if (!(slot_seconds > 0.0))
    throw std::invalid_argument("energy: slot duration must be > 0");
  double total = 0.0;
  for (const auto& r : results) total += r.power_w * slot_seconds;
  return total;
}

double gain_pct(double e_on_j, double e_x_j) {
  if (!(e_on_j > 0.0))
    throw std::invalid_argument("gain: all-on energy must be > 0");
  return (e_on_j - e_x_j) / e_on_j * 100.0;
}

double normalized_throughput(const NetworkState& state) {
  double total = 0.0;
  for (double load : state.loads) {
    if (load < 0.0)
      throw std::invalid_argument("normalized_throughput: negative load");
    total += std::min(load, 1.0);
  }
  return total;
}

RunSummary summarize(const std::string& method, int sc_count,
                     std::span<const SlotResult> results, double slot_seconds,
                     double e_on_j) {
  RunSummary s;
  s.method = method;
  s.sc_count = sc_count;
  s.energy_j = energy_j(results, slot_seconds);
  s.gain_pct = gain_pct(e_on_j, s.energy_j);
  double tput = 0.0;
  for (const auto& r : results) {
    tput += r.tput_norm;
    if (!r.feasible) ++s.infeasible_slots;
  }
  s.mean_tput = tput / static_cast<double>(results.size());
  return s;
}

}  // namespace cellsw
