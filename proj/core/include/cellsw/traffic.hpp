#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cellsw/network.hpp"

namespace cellsw {

/// One CDR-style record: combined user activity observed in one spatial grid
/// during one 10-minute slot.
struct RawActivity {
  std::int64_t grid_id = 0;
  std::int64_t slot = 0;
  double call = 0.0;
  double sms = 0.0;
  double internet = 0.0;
};

/// Which grids feed which cell: two for the macro, one per small cell.
struct CellGridMap {
  std::vector<std::int64_t> macro_grids;
  std::vector<std::int64_t> sc_grids;
};

/// Time-indexed native demand per cell, load-factor units in [0,1].
/// Column 0 is the macro.
struct TrafficTrace {
  std::vector<std::vector<double>> demands;  // [slot][cell]
  double slot_seconds = 600.0;
  CellGridMap cells;

  int slots() const { return static_cast<int>(demands.size()); }
  int sc_count() const {
    return demands.empty() ? -1 : static_cast<int>(demands[0].size()) - 1;
  }
  SlotDemand demand_at(int t) const { return SlotDemand{demands.at(t)}; }
};

/// Parses an activity CSV with header `grid_id,slot,call,sms,internet`.
/// Empty activity fields read as 0. Malformed rows raise a parse error
/// naming the line.
std::vector<RawActivity> load_raw_csv(const std::filesystem::path& path);

/// Builds a trace from raw records with an explicit grid-to-cell mapping:
/// activities are combined per grid, the macro's two grids are summed, and
/// all resulting series are min-max normalized jointly to [0,1]. A constant
/// data set (min == max) maps to all zeros.
TrafficTrace build_trace_with_mapping(std::span<const RawActivity> raw,
                                      const CellGridMap& mapping, int slots);

/// Same, but draws the s+2 distinct grids uniformly without replacement from
/// the seeded generator (two for the macro, one per small cell).
TrafficTrace build_trace(std::span<const RawActivity> raw, int sc_count,
                         std::uint64_t seed, int slots);

struct SyntheticOptions {
  double midpoint = 0.35;
  double amplitude_min = 0.15;
  double amplitude_max = 0.30;
  double noise = 0.05;
  int period = 144;  // slots per diurnal cycle
};

/// Deterministic synthetic trace: per-cell diurnal sinusoid with seeded
/// random phase and amplitude plus uniform noise, clamped to [0,1].
TrafficTrace synthetic_trace(int sc_count, int slots, std::uint64_t seed,
                             const SyntheticOptions& options = {});

/// Writes `slot,cell_0,...,cell_s` rows.
void write_trace_csv(const TrafficTrace& trace,
                     const std::filesystem::path& path);

}  // namespace cellsw
