#include "cellsw/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

namespace cellsw {

namespace {

constexpr std::uint64_t kTraceStream = 0x74726163;  // per-round trace seeds
constexpr std::uint64_t kAgentStream = 0x6167656e;  // per-round agent seeds

const std::vector<Method> kAllMethods = {Method::Vfa, Method::AllOn,
                                         Method::AllOff, Method::Sorting,
                                         Method::Exhaustive};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

const char* method_name(Method method) {
  switch (method) {
    case Method::Vfa: return "vfa";
    case Method::AllOn: return "all_on";
    case Method::AllOff: return "all_off";
    case Method::Sorting: return "sorting";
    case Method::Exhaustive: return "exhaustive";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  for (Method m : kAllMethods)
    if (name == method_name(m)) return m;
  throw std::invalid_argument("unknown method '" + name + "'");
}

const char* scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::A: return "A";
    case Scenario::B: return "B";
    case Scenario::Custom: return "custom";
  }
  return "?";
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "A" || name == "a") return Scenario::A;
  if (name == "B" || name == "b") return Scenario::B;
  if (name == "custom") return Scenario::Custom;
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

RunConfig::RunConfig() {
  for (BsType t : {BsType::Macro, BsType::Rrh, BsType::Micro, BsType::Pico,
                   BsType::Femto}) {
    profiles[t] = default_profile(t);
    capacities[t] = 20.0;
  }
}

AgentConfig RunConfig::resolved_agent() const {
  AgentConfig agent_config = agent;
  if (kappa_override) {
    agent_config.kappa = *kappa_override;
  } else {
    agent_config.kappa = scenario == Scenario::A ? 20.0 : 10.0;
  }
  return agent_config;
}

void RunConfig::validate() const {
  if (sc_counts.empty()) throw std::invalid_argument("config: no SC count given");
  for (int s : sc_counts)
    if (s < 0) throw std::invalid_argument("config: SC count must be >= 0");
  if (methods.empty()) throw std::invalid_argument("config: no methods selected");
  if (slots < 1) throw std::invalid_argument("config: slots must be >= 1");
  if (rounds < 1) throw std::invalid_argument("config: rounds must be >= 1");
  if (!(slot_seconds > 0.0))
    throw std::invalid_argument("config: slot_seconds must be > 0");
  if (out_dir.empty()) throw std::invalid_argument("config: output dir not set");
  if (trace == TraceSource::Csv && trace_path.empty())
    throw std::invalid_argument("config: csv trace needs a path");
  resolved_agent().validate();
  const bool wants_exhaustive =
      std::find(methods.begin(), methods.end(), Method::Exhaustive) !=
      methods.end();
  if (wants_exhaustive)
    for (int s : sc_counts)
      if (s > exhaustive_cap)
        throw std::invalid_argument(
            "config: exhaustive search is capped at s = " +
            std::to_string(exhaustive_cap) + ", requested s = " +
            std::to_string(s));
  if (scenario == Scenario::Custom)
    for (int s : sc_counts)
      if (static_cast<int>(custom_sc_types.size()) != s)
        throw std::invalid_argument(
            "config: custom scenario needs sc_types matching each s");
}

std::vector<BsType> scenario_sc_types(const RunConfig& config, int sc_count) {
  std::vector<BsType> types;
  types.reserve(sc_count);
  switch (config.scenario) {
    case Scenario::A:
      types.assign(sc_count, BsType::Micro);
      break;
    case Scenario::B: {
      // Near-equal split over the four SC classes; the remainder goes to the
      // last listed classes, e.g. 13 -> 3,3,3,4.
      const std::vector<BsType> order = {BsType::Micro, BsType::Rrh,
                                         BsType::Pico, BsType::Femto};
      const int base = sc_count / 4;
      const int rem = sc_count % 4;
      for (int i = 0; i < 4; ++i) {
        int count = base + (i >= 4 - rem ? 1 : 0);
        types.insert(types.end(), count, order[i]);
      }
      break;
    }
    case Scenario::Custom:
      types = config.custom_sc_types;
      break;
  }
  return types;
}

std::vector<BaseStation> make_stations(const RunConfig& config, int sc_count) {
  std::vector<BaseStation> stations;
  stations.reserve(sc_count + 1);
  stations.push_back(BaseStation{1, BsType::Macro,
                                 config.profiles.at(BsType::Macro),
                                 config.capacities.at(BsType::Macro)});
  const auto types = scenario_sc_types(config, sc_count);
  for (int i = 0; i < sc_count; ++i) {
    PowerProfile profile = config.profiles.at(types[i]);
    if (config.scenario == Scenario::A) profile.p_sleep_w = 0.0;
    stations.push_back(BaseStation{i + 2, types[i], profile,
                                   config.capacities.at(types[i])});
  }
  validate_stations(stations);
  return stations;
}

std::vector<SlotResult> evaluate_method(Method method, const TrafficTrace& trace,
                                        std::span<const BaseStation> stations,
                                        const AgentConfig& agent_config,
                                        int exhaustive_cap,
                                        std::uint64_t agent_seed) {
  if (method == Method::Vfa)
    return run_simulation(trace, stations, agent_config, agent_seed);

  const auto phis = relative_capacities(stations);
  std::vector<SlotResult> results;
  results.reserve(trace.slots());
  for (int t = 0; t < trace.slots(); ++t) {
    const SlotDemand demand = trace.demand_at(t);
    std::vector<std::uint8_t> policy;
    switch (method) {
      case Method::AllOn: policy = all_on_policy(demand); break;
      case Method::AllOff: policy = all_off_policy(demand); break;
      case Method::Sorting: policy = sorting_policy(demand, phis); break;
      case Method::Exhaustive:
        policy = exhaustive_policy(demand, stations, phis, exhaustive_cap);
        break;
      case Method::Vfa: break;  // handled above
    }
    NetworkState state = apply_policy(demand, policy, phis);
    state.slot = t;
    SlotResult r;
    r.slot = t;
    r.policy = std::move(policy);
    r.power_w = network_power_w(stations, state);
    r.cost = cost(stations, state, agent_config.kappa);
    r.feasible = is_feasible(state);
    r.tput_norm = normalized_throughput(state);
    results.push_back(std::move(r));
  }
  return results;
}

namespace {

TrafficTrace make_round_trace(const RunConfig& config, int sc_count, int round,
                              const std::vector<RawActivity>* raw) {
  const std::uint64_t seed = derive_seed(config.seed, kTraceStream,
                                         static_cast<std::uint64_t>(round));
  TrafficTrace trace;
  if (config.trace == TraceSource::Csv) {
    trace = build_trace(*raw, sc_count, seed, config.slots);
  } else {
    trace = synthetic_trace(sc_count, config.slots, seed, config.synthetic);
  }
  trace.slot_seconds = config.slot_seconds;
  return trace;
}

struct RoundOutput {
  std::map<Method, std::vector<SlotResult>> by_method;
};

/// Every requested method (plus all-on, needed as the gain baseline) on the
/// rounds of one sweep point. Rounds run concurrently; each owns a derived
/// seed, so scheduling cannot change the results.
std::vector<RoundOutput> evaluate_point(const RunConfig& config, int sc_count,
                                        const std::vector<BaseStation>& stations,
                                        const std::vector<RawActivity>* raw) {
  std::vector<Method> methods = config.methods;
  if (std::find(methods.begin(), methods.end(), Method::AllOn) == methods.end())
    methods.push_back(Method::AllOn);
  const AgentConfig agent_config = config.resolved_agent();

  std::vector<std::future<RoundOutput>> futures;
  futures.reserve(config.rounds);
  for (int round = 0; round < config.rounds; ++round) {
    futures.push_back(std::async(std::launch::async, [&, round]() {
      const TrafficTrace trace = make_round_trace(config, sc_count, round, raw);
      const std::uint64_t agent_seed = derive_seed(
          config.seed, kAgentStream, static_cast<std::uint64_t>(round));
      RoundOutput out;
      for (Method m : methods)
        out.by_method[m] = evaluate_method(m, trace, stations, agent_config,
                                           config.exhaustive_cap, agent_seed);
      return out;
    }));
  }
  std::vector<RoundOutput> rounds;
  rounds.reserve(config.rounds);
  for (auto& f : futures) rounds.push_back(f.get());
  return rounds;
}

class OutputTracker {
 public:
  std::ofstream create(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    files_.push_back(path);
    return out;
  }

  void track_dir(const std::filesystem::path& dir) { dirs_.push_back(dir); }

  void remove_all() noexcept {
    std::error_code ec;
    for (const auto& f : files_) std::filesystem::remove(f, ec);
    for (auto it = dirs_.rbegin(); it != dirs_.rend(); ++it)
      std::filesystem::remove(*it, ec);  // only removes now-empty dirs
  }

 private:
  std::vector<std::filesystem::path> files_;
  std::vector<std::filesystem::path> dirs_;
};

void write_power_csv(OutputTracker& tracker, const std::filesystem::path& path,
                     Method method, const std::vector<RoundOutput>& rounds) {
  std::ofstream out = tracker.create(path);
  out << "slot,round,watts\n";
  for (std::size_t r = 0; r < rounds.size(); ++r)
    for (const SlotResult& slot : rounds[r].by_method.at(method))
      out << slot.slot << ',' << r << ',' << format_double(slot.power_w)
          << '\n';
}

std::vector<RunSummary> summarize_point(const RunConfig& config, int sc_count,
                                        const std::vector<RoundOutput>& rounds) {
  std::map<Method, std::vector<SlotResult>> merged;
  for (const auto& round : rounds)
    for (const auto& [m, results] : round.by_method)
      merged[m].insert(merged[m].end(), results.begin(), results.end());

  const double e_on = energy_j(merged.at(Method::AllOn), config.slot_seconds);
  std::vector<RunSummary> summaries;
  for (Method m : kAllMethods) {
    if (std::find(config.methods.begin(), config.methods.end(), m) ==
        config.methods.end())
      continue;
    summaries.push_back(summarize(method_name(m), sc_count, merged.at(m),
                                  config.slot_seconds, e_on));
  }
  return summaries;
}

void write_summary_csv(OutputTracker& tracker,
                       const std::filesystem::path& path,
                       const std::vector<RunSummary>& summaries) {
  std::ofstream out = tracker.create(path);
  out << "method,s,energy_j,gain_pct,mean_tput,infeasible_slots\n";
  for (const auto& s : summaries)
    out << s.method << ',' << s.sc_count << ',' << format_double(s.energy_j)
        << ',' << format_double(s.gain_pct) << ','
        << format_double(s.mean_tput) << ',' << s.infeasible_slots << '\n';
}

void write_config_echo(OutputTracker& tracker,
                       const std::filesystem::path& path,
                       const RunConfig& config) {
  std::ofstream out = tracker.create(path);
  out << "scenario = " << scenario_name(config.scenario) << '\n';
  out << "s =";
  for (std::size_t i = 0; i < config.sc_counts.size(); ++i)
    out << (i ? "," : " ") << config.sc_counts[i];
  out << '\n';
  out << "methods =";
  for (std::size_t i = 0; i < config.methods.size(); ++i)
    out << (i ? "," : " ") << method_name(config.methods[i]);
  out << '\n';
  out << "trace = "
      << (config.trace == TraceSource::Csv
              ? "csv:" + config.trace_path.string()
              : std::string("synthetic"))
      << '\n';
  out << "seed = " << config.seed << '\n';
  out << "slots = " << config.slots << '\n';
  out << "rounds = " << config.rounds << '\n';
  out << "slot_seconds = " << format_double(config.slot_seconds) << '\n';
  out << "exhaustive_cap = " << config.exhaustive_cap << '\n';
  out << "out = " << config.out_dir.string() << '\n';

  const AgentConfig agent = config.resolved_agent();
  out << "agent.epsilon = " << format_double(agent.epsilon) << '\n';
  out << "agent.epsilon_decay = " << format_double(agent.epsilon_decay) << '\n';
  out << "agent.alpha = " << format_double(agent.alpha) << '\n';
  out << "agent.gamma = " << format_double(agent.gamma) << '\n';
  out << "agent.xi = " << agent.xi << '\n';
  out << "agent.j_min = " << agent.j_min << '\n';
  out << "agent.omega = " << format_double(agent.omega) << '\n';
  out << "agent.j_rep = " << agent.j_rep << '\n';
  out << "agent.max_iter = " << agent.max_iter << '\n';
  out << "agent.kappa = " << format_double(agent.kappa) << '\n';

  if (config.trace == TraceSource::Synthetic) {
    out << "synthetic.midpoint = " << format_double(config.synthetic.midpoint)
        << '\n';
    out << "synthetic.amplitude_min = "
        << format_double(config.synthetic.amplitude_min) << '\n';
    out << "synthetic.amplitude_max = "
        << format_double(config.synthetic.amplitude_max) << '\n';
    out << "synthetic.noise = " << format_double(config.synthetic.noise) << '\n';
    out << "synthetic.period = " << config.synthetic.period << '\n';
  }

  for (BsType t : {BsType::Macro, BsType::Rrh, BsType::Micro, BsType::Pico,
                   BsType::Femto}) {
    PowerProfile p = config.profiles.at(t);
    if (config.scenario == Scenario::A && t == BsType::Micro) p.p_sleep_w = 0.0;
    const std::string prefix = std::string("profile.") + bs_type_name(t);
    out << prefix << ".eta = " << format_double(p.eta) << '\n';
    out << prefix << ".p_tx = " << format_double(p.p_tx_w) << '\n';
    out << prefix << ".p_op = " << format_double(p.p_op_w) << '\n';
    out << prefix << ".p_sleep = " << format_double(p.p_sleep_w) << '\n';
    out << "capacity." << bs_type_name(t) << " = "
        << format_double(config.capacities.at(t)) << '\n';
  }
  if (config.scenario == Scenario::Custom) {
    out << "sc_types =";
    for (std::size_t i = 0; i < config.custom_sc_types.size(); ++i)
      out << (i ? "," : " ") << bs_type_name(config.custom_sc_types[i]);
    out << '\n';
  }
}

std::vector<RawActivity> maybe_load_raw(const RunConfig& config) {
  if (config.trace == TraceSource::Csv) return load_raw_csv(config.trace_path);
  return {};
}

}  // namespace

std::vector<RunSummary> run(const RunConfig& config) {
  config.validate();
  if (config.sc_counts.size() != 1)
    throw std::invalid_argument("run: exactly one SC count; use sweep for lists");
  const int s = config.sc_counts[0];

  const auto raw = maybe_load_raw(config);
  const auto stations = make_stations(config, s);

  std::filesystem::create_directories(config.out_dir);
  OutputTracker tracker;
  try {
    const auto rounds = evaluate_point(
        config, s, stations, config.trace == TraceSource::Csv ? &raw : nullptr);
    for (Method m : config.methods)
      write_power_csv(tracker,
                      config.out_dir /
                          ("power_" + std::string(method_name(m)) + ".csv"),
                      m, rounds);
    const auto summaries = summarize_point(config, s, rounds);
    write_summary_csv(tracker, config.out_dir / "summary.csv", summaries);
    write_config_echo(tracker, config.out_dir / "config_echo", config);
    return summaries;
  } catch (...) {
    tracker.remove_all();
    throw;
  }
}

std::vector<RunSummary> sweep(const RunConfig& config) {
  config.validate();
  const auto raw = maybe_load_raw(config);

  std::filesystem::create_directories(config.out_dir);
  OutputTracker tracker;
  try {
    std::vector<RunSummary> all_summaries;
    for (int s : config.sc_counts) {
      const auto stations = make_stations(config, s);
      const auto rounds = evaluate_point(
          config, s, stations,
          config.trace == TraceSource::Csv ? &raw : nullptr);
      const auto point_dir = config.out_dir / ("s_" + std::to_string(s));
      std::filesystem::create_directories(point_dir);
      tracker.track_dir(point_dir);
      for (Method m : config.methods)
        write_power_csv(tracker,
                        point_dir /
                            ("power_" + std::string(method_name(m)) + ".csv"),
                        m, rounds);
      const auto summaries = summarize_point(config, s, rounds);
      all_summaries.insert(all_summaries.end(), summaries.begin(),
                           summaries.end());
    }
    write_summary_csv(tracker, config.out_dir / "summary.csv", all_summaries);
    write_config_echo(tracker, config.out_dir / "config_echo", config);
    return all_summaries;
  } catch (...) {
    tracker.remove_all();
    throw;
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": '" +
                                value + "'");
  }
}

std::int64_t parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": '" +
                                value + "'");
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

BsType bs_type_from_name(const std::string& name) {
  for (BsType t : {BsType::Macro, BsType::Rrh, BsType::Micro, BsType::Pico,
                   BsType::Femto})
    if (name == bs_type_name(t)) return t;
  throw std::invalid_argument("unknown BS type '" + name + "'");
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected key = value");
    pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return pairs;
}

void apply_config_kv(RunConfig& config, const std::string& key,
                     const std::string& value) {
  if (key == "scenario") {
    config.scenario = scenario_from_name(value);
  } else if (key == "s") {
    config.sc_counts.clear();
    for (const auto& item : split_list(value))
      config.sc_counts.push_back(static_cast<int>(parse_integer(key, item)));
  } else if (key == "methods") {
    config.methods.clear();
    for (const auto& item : split_list(value))
      config.methods.push_back(method_from_name(item));
  } else if (key == "trace") {
    if (value == "synthetic") {
      config.trace = TraceSource::Synthetic;
    } else if (value.rfind("csv:", 0) == 0) {
      config.trace = TraceSource::Csv;
      config.trace_path = value.substr(4);
    } else {
      throw std::invalid_argument("config: trace must be synthetic or csv:<path>");
    }
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_integer(key, value));
  } else if (key == "slots") {
    config.slots = static_cast<int>(parse_integer(key, value));
  } else if (key == "rounds") {
    config.rounds = static_cast<int>(parse_integer(key, value));
  } else if (key == "slot_seconds") {
    config.slot_seconds = parse_double(key, value);
  } else if (key == "exhaustive_cap") {
    config.exhaustive_cap = static_cast<int>(parse_integer(key, value));
  } else if (key == "out") {
    config.out_dir = value;
  } else if (key == "agent.epsilon") {
    config.agent.epsilon = parse_double(key, value);
  } else if (key == "agent.epsilon_decay") {
    config.agent.epsilon_decay = parse_double(key, value);
  } else if (key == "agent.alpha") {
    config.agent.alpha = parse_double(key, value);
  } else if (key == "agent.gamma") {
    config.agent.gamma = parse_double(key, value);
  } else if (key == "agent.xi") {
    config.agent.xi = static_cast<int>(parse_integer(key, value));
  } else if (key == "agent.j_min") {
    config.agent.j_min = static_cast<int>(parse_integer(key, value));
  } else if (key == "agent.omega") {
    config.agent.omega = parse_double(key, value);
  } else if (key == "agent.j_rep") {
    config.agent.j_rep = static_cast<int>(parse_integer(key, value));
  } else if (key == "agent.max_iter") {
    config.agent.max_iter = static_cast<int>(parse_integer(key, value));
  } else if (key == "agent.kappa") {
    config.kappa_override = parse_double(key, value);
  } else if (key == "synthetic.midpoint") {
    config.synthetic.midpoint = parse_double(key, value);
  } else if (key == "synthetic.amplitude_min") {
    config.synthetic.amplitude_min = parse_double(key, value);
  } else if (key == "synthetic.amplitude_max") {
    config.synthetic.amplitude_max = parse_double(key, value);
  } else if (key == "synthetic.noise") {
    config.synthetic.noise = parse_double(key, value);
  } else if (key == "synthetic.period") {
    config.synthetic.period = static_cast<int>(parse_integer(key, value));
  } else if (key == "sc_types") {
    config.custom_sc_types.clear();
    for (const auto& item : split_list(value))
      config.custom_sc_types.push_back(bs_type_from_name(item));
  } else if (key.rfind("profile.", 0) == 0 || key.rfind("capacity.", 0) == 0) {
    const auto first_dot = key.find('.');
    const auto second_dot = key.find('.', first_dot + 1);
    const bool is_profile = key.rfind("profile.", 0) == 0;
    if (is_profile && second_dot == std::string::npos)
      throw std::invalid_argument("config: expected profile.<type>.<field>");
    const std::string type_name =
        is_profile ? key.substr(first_dot + 1, second_dot - first_dot - 1)
                   : key.substr(first_dot + 1);
    const BsType type = bs_type_from_name(type_name);
    if (!is_profile) {
      config.capacities[type] = parse_double(key, value);
      return;
    }
    const std::string field = key.substr(second_dot + 1);
    PowerProfile& p = config.profiles[type];
    if (field == "eta") p.eta = parse_double(key, value);
    else if (field == "p_tx") p.p_tx_w = parse_double(key, value);
    else if (field == "p_op") p.p_op_w = parse_double(key, value);
    else if (field == "p_sleep") p.p_sleep_w = parse_double(key, value);
    else throw std::invalid_argument("config: unknown profile field '" + field + "'");
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

}  // namespace cellsw
