#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cellsw/agent.hpp"
#include "cellsw/baselines.hpp"
#include "cellsw/metrics.hpp"
#include "cellsw/traffic.hpp"

namespace cellsw {

enum class Scenario { A, B, Custom };

enum class Method { Vfa, AllOn, AllOff, Sorting, Exhaustive };

const char* method_name(Method method);
Method method_from_name(const std::string& name);
Scenario scenario_from_name(const std::string& name);
const char* scenario_name(Scenario scenario);

enum class TraceSource { Synthetic, Csv };

/// Fully describes one experiment. Defaults reproduce the stock setup:
/// scenario B, 144 ten-minute slots, 25 rounds, all five methods.
struct RunConfig {
  Scenario scenario = Scenario::B;
  std::vector<int> sc_counts = {4};
  std::vector<Method> methods = {Method::Vfa, Method::AllOn, Method::AllOff,
                                 Method::Sorting, Method::Exhaustive};
  TraceSource trace = TraceSource::Synthetic;
  std::filesystem::path trace_path;
  std::uint64_t seed = 1;
  int slots = 144;
  int rounds = 25;
  double slot_seconds = 600.0;
  int exhaustive_cap = kDefaultExhaustiveCap;
  AgentConfig agent;
  std::optional<double> kappa_override;  // else 20 for scenario A, 10 otherwise
  SyntheticOptions synthetic;
  std::filesystem::path out_dir;
  std::vector<BsType> custom_sc_types;                 // scenario Custom only
  std::map<BsType, PowerProfile> profiles;             // defaults from table
  std::map<BsType, double> capacities;                 // MHz, default 20

  RunConfig();

  AgentConfig resolved_agent() const;
  void validate() const;
};

/// Small-cell type layout for a scenario: scenario A is all micro (with zero
/// sleep power), scenario B spreads {micro, rrh, pico, femto} as equally as
/// possible with the remainder going to the last types.
std::vector<BsType> scenario_sc_types(const RunConfig& config, int sc_count);

/// Builds the station list (macro first) for one sweep point.
std::vector<BaseStation> make_stations(const RunConfig& config, int sc_count);

/// Evaluates one method over a whole trace, one SlotResult per slot.
std::vector<SlotResult> evaluate_method(Method method, const TrafficTrace& trace,
                                        std::span<const BaseStation> stations,
                                        const AgentConfig& agent_config,
                                        int exhaustive_cap,
                                        std::uint64_t agent_seed);

/// Runs every requested method over `rounds` independent traces for the
/// single configured SC count, writing power_<method>.csv, summary.csv and
/// config_echo under out_dir. Partial output is removed on failure.
std::vector<RunSummary> run(const RunConfig& config);

/// Same across every configured SC count: per-point files go to s_<k>/
/// subdirectories and one summary.csv at the root collects a row per
/// (s, method).
std::vector<RunSummary> sweep(const RunConfig& config);

/// Flat key = value config file ('#' comments). Returned in file order.
std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::filesystem::path& path);

/// Applies one key/value pair to the config. Unknown keys or bad values
/// throw.
void apply_config_kv(RunConfig& config, const std::string& key,
                     const std::string& value);

}  // namespace cellsw
