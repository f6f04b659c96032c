#include "cellsw/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cellsw/rng.hpp"

namespace cellsw {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_activity(const std::string& field, std::size_t line_no) {
  if (field.empty()) return 0.0;  // missing activity reads as zero
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("activity csv line " + std::to_string(line_no) +
                             ": bad number '" + field + "'");
  }
  if (pos != field.size() || v < 0.0 || !std::isfinite(v))
    throw std::runtime_error("activity csv line " + std::to_string(line_no) +
                             ": bad activity '" + field + "'");
  return v;
}

std::int64_t parse_int(const std::string& field, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(field, &pos);
    if (pos != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("activity csv line " + std::to_string(line_no) +
                             ": bad integer '" + field + "'");
  }
}

}  // namespace

std::vector<RawActivity> load_raw_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path.string() + ": empty activity file");
  if (split_fields(line) !=
      std::vector<std::string>{"grid_id", "slot", "call", "sms", "internet"})
    throw std::runtime_error(path.string() +
                             ": expected header grid_id,slot,call,sms,internet");

  std::vector<RawActivity> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 5)
      throw std::runtime_error("activity csv line " + std::to_string(line_no) +
                               ": expected 5 fields, got " +
                               std::to_string(fields.size()));
    RawActivity rec;
    rec.grid_id = parse_int(fields[0], line_no);
    rec.slot = parse_int(fields[1], line_no);
    rec.call = parse_activity(fields[2], line_no);
    rec.sms = parse_activity(fields[3], line_no);
    rec.internet = parse_activity(fields[4], line_no);
    records.push_back(rec);
  }
  if (records.empty())
    throw std::runtime_error(path.string() + ": no activity records");
  return records;
}

namespace {

// grid id -> combined activity per slot index
using GridSeries = std::map<std::int64_t, std::map<std::int64_t, double>>;

GridSeries combine_activities(std::span<const RawActivity> raw) {
  GridSeries series;
  for (const auto& rec : raw)
    series[rec.grid_id][rec.slot] += rec.call + rec.sms + rec.internet;
  return series;
}

std::vector<double> series_prefix(const GridSeries& series, std::int64_t grid,
                                  int slots) {
  auto it = series.find(grid);
  if (it == series.end())
    throw std::runtime_error("grid " + std::to_string(grid) + " not in data");
  std::vector<double> out(slots);
  for (int t = 0; t < slots; ++t) {
    auto st = it->second.find(t);
    if (st == it->second.end())
      throw std::runtime_error("grid " + std::to_string(grid) +
                               " is missing slot " + std::to_string(t));
    out[t] = st->second;
  }
  return out;
}

}  // namespace

TrafficTrace build_trace_with_mapping(std::span<const RawActivity> raw,
                                      const CellGridMap& mapping, int slots) {
  if (slots < 1) throw std::invalid_argument("build_trace: slots must be >= 1");
  if (mapping.macro_grids.size() != 2)
    throw std::invalid_argument("build_trace: the macro takes exactly 2 grids");
  const auto series = combine_activities(raw);

  const int cells = static_cast<int>(mapping.sc_grids.size()) + 1;
  std::vector<std::vector<double>> columns(cells);
  {
    auto a = series_prefix(series, mapping.macro_grids[0], slots);
    auto b = series_prefix(series, mapping.macro_grids[1], slots);
    columns[0].resize(slots);
    for (int t = 0; t < slots; ++t) columns[0][t] = a[t] + b[t];
  }
  for (int c = 1; c < cells; ++c)
    columns[c] = series_prefix(series, mapping.sc_grids[c - 1], slots);

  // Joint min-max normalization across every cell series.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& col : columns)
    for (double v : col) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }

  TrafficTrace trace;
  trace.cells = mapping;
  trace.demands.assign(slots, std::vector<double>(cells, 0.0));
  if (hi > lo) {
    const double span = hi - lo;
    for (int t = 0; t < slots; ++t)
      for (int c = 0; c < cells; ++c)
        trace.demands[t][c] = (columns[c][t] - lo) / span;
  }
  // else: constant data carries no load signal; everything stays 0
  return trace;
}

TrafficTrace build_trace(std::span<const RawActivity> raw, int sc_count,
                         std::uint64_t seed, int slots) {
  if (sc_count < 0) throw std::invalid_argument("build_trace: negative SC count");
  if (slots < 1) throw std::invalid_argument("build_trace: slots must be >= 1");
  const auto series = combine_activities(raw);

  std::vector<std::int64_t> eligible;
  for (const auto& [grid, by_slot] : series) {
    bool complete = true;
    for (int t = 0; t < slots; ++t)
      if (!by_slot.count(t)) {
        complete = false;
        break;
      }
    if (complete) eligible.push_back(grid);
  }
  const std::size_t needed = static_cast<std::size_t>(sc_count) + 2;
  if (eligible.size() < needed)
    throw std::runtime_error("build_trace: need " + std::to_string(needed) +
                             " grids with " + std::to_string(slots) +
                             " slots each, found " +
                             std::to_string(eligible.size()));

  // Uniform draw without replacement; grid ids are sorted (std::map), so the
  // pick is a pure function of the data set and the seed.
  Rng rng(derive_seed(seed, /*stream=*/0x67726964, /*index=*/0));
  std::vector<std::int64_t> picked;
  for (std::size_t k = 0; k < needed; ++k) {
    const std::uint64_t i = rng.below(eligible.size());
    picked.push_back(eligible[i]);
    eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(i));
  }

  CellGridMap mapping;
  mapping.macro_grids = {picked[0], picked[1]};
  mapping.sc_grids.assign(picked.begin() + 2, picked.end());
  return build_trace_with_mapping(raw, mapping, slots);
}

TrafficTrace synthetic_trace(int sc_count, int slots, std::uint64_t seed,
                             const SyntheticOptions& options) {
  if (sc_count < 0) throw std::invalid_argument("synthetic_trace: negative SC count");
  if (slots < 1) throw std::invalid_argument("synthetic_trace: slots must be >= 1");
  if (options.period < 1)
    throw std::invalid_argument("synthetic_trace: period must be >= 1");

  const int cells = sc_count + 1;
  Rng rng(derive_seed(seed, /*stream=*/0x73796e74, /*index=*/0));
  std::vector<double> phase(cells), amplitude(cells);
  for (int c = 0; c < cells; ++c) {
    phase[c] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    amplitude[c] = rng.uniform(options.amplitude_min, options.amplitude_max);
  }

  TrafficTrace trace;
  trace.demands.assign(slots, std::vector<double>(cells, 0.0));
  for (int t = 0; t < slots; ++t)
    for (int c = 0; c < cells; ++c) {
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>(t) / options.period;
      const double noise = rng.uniform(-options.noise, options.noise);
      const double v =
          options.midpoint + amplitude[c] * std::sin(angle + phase[c]) + noise;
      trace.demands[t][c] = std::clamp(v, 0.0, 1.0);
    }
  return trace;
}

void write_trace_csv(const TrafficTrace& trace,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "slot";
  for (int c = 0; c <= trace.sc_count(); ++c) out << ",cell_" << c;
  out << "\n";
  char buf[64];
  for (int t = 0; t < trace.slots(); ++t) {
    out << t;
    for (double v : trace.demands[t]) {
      std::snprintf(buf, sizeof(buf), "%.12g", v);
      out << ',' << buf;
    }
    out << "\n";
  }
}

}  // namespace cellsw
