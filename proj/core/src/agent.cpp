#include "cellsw/agent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cellsw {

void AgentConfig::validate() const {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("agent: epsilon must be in [0,1]");
  if (epsilon_decay < 0.0 || epsilon_decay > 1.0)
    throw std::invalid_argument("agent: epsilon_decay must be in [0,1]");
  if (!(alpha > 0.0)) throw std::invalid_argument("agent: alpha must be > 0");
  if (gamma < 0.0 || gamma >= 1.0)
    throw std::invalid_argument("agent: gamma must be in [0,1)");
  if (xi < 2) throw std::invalid_argument("agent: xi must be >= 2");
  if (j_min < 1) throw std::invalid_argument("agent: j_min must be >= 1");
  if (!(omega > 0.0)) throw std::invalid_argument("agent: omega must be > 0");
  if (j_rep < 1) throw std::invalid_argument("agent: j_rep must be >= 1");
  if (max_iter < j_min)
    throw std::invalid_argument("agent: max_iter must be >= j_min");
  if (kappa < 0.0) throw std::invalid_argument("agent: kappa must be >= 0");
}

ActionSet make_action_set(int sc_count, int xi) {
  if (sc_count < 0) throw std::invalid_argument("action set: negative SC count");
  if (xi < 2) throw std::invalid_argument("action set: xi must be >= 2");
  ActionSet set;
  set.sc_count = sc_count;
  set.xi = xi;
  set.actions.push_back(0);
  std::int64_t power = 1;
  for (int exponent = 0; exponent <= sc_count; ++exponent) {
    set.actions.push_back(power);
    set.actions.push_back(-power);
    power *= xi;
  }
  return set;
}

StatusCode encode_status(std::span<const std::uint8_t> sc_statuses) {
  if (sc_statuses.size() > 62)
    throw std::invalid_argument("encode_status: too many small cells");
  StatusCode status;
  status.sc_count = static_cast<int>(sc_statuses.size());
  for (std::uint8_t bit : sc_statuses) {
    if (bit > 1) throw std::invalid_argument("encode_status: statuses are 0/1");
    status.code = (status.code << 1) | bit;
  }
  return status;
}

std::vector<std::uint8_t> decode_status(const StatusCode& status) {
  if (status.sc_count < 0 || status.sc_count > 62)
    throw std::invalid_argument("decode_status: bad SC count");
  if (status.code >= (std::uint64_t{1} << status.sc_count))
    throw std::invalid_argument("decode_status: code out of range");
  std::vector<std::uint8_t> bits(status.sc_count);
  for (int i = 0; i < status.sc_count; ++i)
    bits[i] = static_cast<std::uint8_t>(
        (status.code >> (status.sc_count - 1 - i)) & 1u);
  return bits;
}

std::vector<std::uint8_t> policy_from_status(const StatusCode& status) {
  auto bits = decode_status(status);
  std::vector<std::uint8_t> policy;
  policy.reserve(bits.size() + 1);
  policy.push_back(1);
  policy.insert(policy.end(), bits.begin(), bits.end());
  return policy;
}

std::vector<std::size_t> valid_action_indices(const StatusCode& status,
                                              const ActionSet& actions) {
  const auto upper = static_cast<std::int64_t>(
      (std::uint64_t{1} << status.sc_count) - 1);
  const auto code = static_cast<std::int64_t>(status.code);
  std::vector<std::size_t> valid;
  for (std::size_t i = 0; i < actions.actions.size(); ++i) {
    const std::int64_t next = code + actions.actions[i];
    if (next >= 0 && next <= upper) valid.push_back(i);
  }
  return valid;
}

double cost(std::span<const BaseStation> stations, const NetworkState& state,
            double kappa) {
  const double power =
      network_power_linear_w(stations, state.loads, state.statuses);
  const double macro_load = state.macro_load();
  if (macro_load > 1.0)
    return power + static_cast<double>(state.sc_count()) * kappa * macro_load;
  return power;
}

std::vector<double> features(const NetworkState& state,
                             std::span<const BaseStation> stations,
                             double kappa) {
  // With one learning rate across features, a dimensionless load would adapt
  // orders of magnitude slower than the watt-scale power term, so loads enter
  // in macro-marginal watts.
  const double load_scale_w =
      stations[0].profile.eta * stations[0].profile.p_tx_w;
  std::vector<double> x;
  x.reserve(state.loads.size() + 1);
  x.push_back(cost(stations, state, kappa));
  for (double load : state.loads) x.push_back(load_scale_w * load);
  return x;
}

double q_hat(std::span<const double> x, std::span<const double> theta) {
  if (x.size() != theta.size())
    throw std::invalid_argument("q_hat: dimension mismatch");
  double value = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) value += x[i] * theta[i];
  return value;
}

std::size_t select_action(std::span<const double> q_values, double epsilon,
                          Rng& rng) {
  if (q_values.empty()) throw std::invalid_argument("select_action: no actions");
  const double draw = rng.uniform01();
  if (draw < epsilon) return rng.below(q_values.size());
  std::size_t best = 0;
  for (std::size_t i = 1; i < q_values.size(); ++i)
    if (q_values[i] < q_values[best]) best = i;
  return best;
}

double sarsa_update(std::vector<double>& theta_a, std::span<const double> x,
                    double c, std::span<const double> x_next,
                    std::span<const double> theta_a_next, double alpha,
                    double gamma) {
  const double target = c + gamma * q_hat(x_next, theta_a_next);
  const double td_error = target - q_hat(x, theta_a);
  for (std::size_t i = 0; i < theta_a.size(); ++i) {
    theta_a[i] += alpha * td_error * x[i];
    if (!std::isfinite(theta_a[i]))
      throw std::runtime_error("sarsa_update: weights diverged");
  }
  return td_error;
}

WeightVectors WeightVectors::zeros(std::size_t n_actions,
                                   std::size_t n_features) {
  WeightVectors w;
  w.theta.assign(n_actions, std::vector<double>(n_features, 0.0));
  return w;
}

void write_weights_csv(const WeightVectors& weights,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "action_index,feature_index,value\n";
  char buf[64];
  for (std::size_t a = 0; a < weights.theta.size(); ++a)
    for (std::size_t f = 0; f < weights.theta[a].size(); ++f) {
      std::snprintf(buf, sizeof(buf), "%.17g", weights.theta[a][f]);
      out << a << ',' << f << ',' << buf << '\n';
    }
}

WeightVectors read_weights_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "action_index,feature_index,value")
    throw std::runtime_error(path.string() +
                             ": expected header action_index,feature_index,value");
  WeightVectors weights;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t a = 0, f = 0;
    double v = 0.0;
    char comma1 = 0, comma2 = 0;
    if (!(row >> a >> comma1 >> f >> comma2 >> v) || comma1 != ',' ||
        comma2 != ',')
      throw std::runtime_error(path.string() + ": bad weights row '" + line + "'");
    if (a >= weights.theta.size()) weights.theta.resize(a + 1);
    if (f >= weights.theta[a].size()) weights.theta[a].resize(f + 1, 0.0);
    weights.theta[a][f] = v;
  }
  return weights;
}

namespace {

StatusCode shifted(const StatusCode& status, std::int64_t offset) {
  return StatusCode{static_cast<std::uint64_t>(
                        static_cast<std::int64_t>(status.code) + offset),
                    status.sc_count};
}

// Per-action values at one status: every valid action is scored by the
// features of the status it would produce under the episode's fixed demand.
struct ActionValues {
  std::vector<std::size_t> valid;            // indices into the action set
  std::vector<std::vector<double>> x_after;  // features per valid action
  std::vector<double> q;                     // one value per valid action
};

ActionValues evaluate_actions(const StatusCode& status, const ActionSet& set,
                              const SlotDemand& demand,
                              std::span<const BaseStation> stations,
                              std::span<const double> phis, double kappa,
                              const WeightVectors& weights) {
  ActionValues av;
  av.valid = valid_action_indices(status, set);
  av.x_after.reserve(av.valid.size());
  av.q.reserve(av.valid.size());
  for (std::size_t i : av.valid) {
    const StatusCode after = shifted(status, set.actions[i]);
    const NetworkState state =
        apply_policy(demand, policy_from_status(after), phis);
    av.x_after.push_back(features(state, stations, kappa));
    av.q.push_back(q_hat(av.x_after.back(), weights.theta[i]));
  }
  return av;
}

}  // namespace

EpisodeResult run_episode(const SlotDemand& demand,
                          std::span<const BaseStation> stations,
                          std::span<const double> phis,
                          const AgentConfig& config, double epsilon,
                          WeightVectors& weights, Rng& rng, StatusCode start) {
  config.validate();
  const int s = demand.sc_count();
  if (start.sc_count != s)
    throw std::invalid_argument("run_episode: status/demand size mismatch");
  const ActionSet set = make_action_set(s, config.xi);
  if (weights.theta.size() != set.size())
    throw std::invalid_argument("run_episode: weights/action-set size mismatch");

  StatusCode status = start;
  ActionValues av = evaluate_actions(status, set, demand, stations, phis,
                                     config.kappa, weights);
  std::size_t selected = select_action(av.q, epsilon, rng);

  EpisodeResult result;
  double c_min = std::numeric_limits<double>::infinity();
  double c_max = -std::numeric_limits<double>::infinity();
  double prev_cost = std::numeric_limits<double>::quiet_NaN();
  int repeats = 0;

  for (int j_it = 1; j_it <= config.max_iter; ++j_it) {
    const std::size_t action = av.valid[selected];
    const std::vector<double> x = av.x_after[selected];

    status = shifted(status, set.actions[action]);
    const NetworkState state =
        apply_policy(demand, policy_from_status(status), phis);
    const double c = cost(stations, state, config.kappa);
    result.costs.push_back(c);

    ActionValues av_next = evaluate_actions(status, set, demand, stations,
                                            phis, config.kappa, weights);
    const std::size_t next_selected = select_action(av_next.q, epsilon, rng);

    sarsa_update(weights.theta[action], x, c,
                 av_next.x_after[next_selected],
                 weights.theta[av_next.valid[next_selected]], config.alpha,
                 config.gamma);

    av = std::move(av_next);
    selected = next_selected;

    c_min = std::min(c_min, c);
    c_max = std::max(c_max, c);
    const double scaled = c_max > c_min ? (c - c_min) / (c_max - c_min) : 0.0;
    const bool same = c == prev_cost;
    prev_cost = c;
    if (j_it > config.j_min && scaled <= config.omega && same) {
      if (++repeats >= config.j_rep) break;
    } else {
      repeats = 0;
    }
  }

  result.final_status = status;
  return result;
}

std::vector<SlotResult> run_simulation(const TrafficTrace& trace,
                                       std::span<const BaseStation> stations,
                                       const AgentConfig& config,
                                       std::uint64_t seed) {
  config.validate();
  const int s = trace.sc_count();
  if (s < 0 || static_cast<int>(stations.size()) != s + 1)
    throw std::invalid_argument("run_simulation: trace/stations size mismatch");
  const auto phis = relative_capacities(stations);
  const ActionSet set = make_action_set(s, config.xi);
  WeightVectors weights =
      WeightVectors::zeros(set.size(), static_cast<std::size_t>(s) + 2);
  Rng rng(seed);

  StatusCode status{policy_count(s) - 1, s};  // start with every cell on
  double epsilon = config.epsilon;

  std::vector<SlotResult> results;
  results.reserve(trace.slots());
  for (int t = 0; t < trace.slots(); ++t) {
    const SlotDemand demand = trace.demand_at(t);
    const EpisodeResult episode = run_episode(demand, stations, phis, config,
                                              epsilon, weights, rng, status);
    status = episode.final_status;
    epsilon *= config.epsilon_decay;

    NetworkState state = apply_policy(demand, policy_from_status(status), phis);
    state.slot = t;
    SlotResult r;
    r.slot = t;
    r.policy = state.statuses;
    r.power_w = network_power_w(stations, state);
    r.cost = cost(stations, state, config.kappa);
    r.feasible = is_feasible(state);
    r.tput_norm = normalized_throughput(state);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace cellsw
