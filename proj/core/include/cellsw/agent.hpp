#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cellsw/metrics.hpp"
#include "cellsw/network.hpp"
#include "cellsw/rng.hpp"
#include "cellsw/traffic.hpp"

namespace cellsw {

struct AgentConfig {
  double epsilon = 0.8;        // chance of a random action
  double epsilon_decay = 0.9;  // per-episode multiplier on epsilon (1 = constant)
  double alpha = 1e-7;         // learning rate
  double gamma = 0.9;          // discount factor
  int xi = 2;                  // inter-space between consecutive actions
  int j_min = 10;              // min iterations before the stop rule arms
  double omega = 5e-2;         // feature-scaled cost threshold
  int j_rep = 10;              // consecutive repeats required to stop
  int max_iter = 100;          // iteration cap per episode
  double kappa = 10.0;         // overload penalty factor

  void validate() const;
};

/// Decimal encoding of the small cells' on/off bit string. Small cell 1 is
/// the most significant bit.
struct StatusCode {
  std::uint64_t code = 0;
  int sc_count = 0;
};

/// Ordered action list [0, +xi^0, -xi^0, ..., +xi^s, -xi^s]; an action is a
/// signed offset added to the status code.
struct ActionSet {
  std::vector<std::int64_t> actions;
  int sc_count = 0;
  int xi = 2;

  std::size_t size() const { return actions.size(); }
};

ActionSet make_action_set(int sc_count, int xi);

StatusCode encode_status(std::span<const std::uint8_t> sc_statuses);
std::vector<std::uint8_t> decode_status(const StatusCode& status);

/// Full policy vector (macro forced on) for a status code.
std::vector<std::uint8_t> policy_from_status(const StatusCode& status);

/// Indices into the action set whose offsets keep the code in range. Never
/// empty: the no-op at index 0 is always valid.
std::vector<std::size_t> valid_action_indices(const StatusCode& status,
                                              const ActionSet& actions);

/// Training cost: linear-model network power plus s*kappa*load_1 whenever
/// the macro is overloaded. Equals the plain network power for any feasible
/// state (and for every state when kappa is 0).
double cost(std::span<const BaseStation> stations, const NetworkState& state,
            double kappa);

/// Feature vector [power, load_1, ..., load_{s+1}], length s+2. The power
/// entry is the penalized linear power (cost above), so the capacity
/// boundary stays visible to a linear approximator; the loads are expressed
/// in macro-marginal watts (eta_1 * P_T1 per unit load) so that one learning
/// rate suits every coordinate.
std::vector<double> features(const NetworkState& state,
                             std::span<const BaseStation> stations,
                             double kappa = 0.0);

/// Linear action-value estimate: dot(x, theta).
double q_hat(std::span<const double> x, std::span<const double> theta);

/// Epsilon-greedy over the given values: random index with probability
/// epsilon, otherwise the minimum with ties to the lowest index. Always
/// consumes one uniform draw, plus one more when exploring.
std::size_t select_action(std::span<const double> q_values, double epsilon,
                          Rng& rng);

/// One semi-gradient step toward the bootstrapped target
/// c + gamma * q_hat(x_next, theta_next). Returns the TD error.
double sarsa_update(std::vector<double>& theta_a, std::span<const double> x,
                    double c, std::span<const double> x_next,
                    std::span<const double> theta_a_next, double alpha,
                    double gamma);

/// One weight vector per action, feature dimensionality s+2, zero initialized.
struct WeightVectors {
  std::vector<std::vector<double>> theta;

  static WeightVectors zeros(std::size_t n_actions, std::size_t n_features);
};

void write_weights_csv(const WeightVectors& weights,
                       const std::filesystem::path& path);
WeightVectors read_weights_csv(const std::filesystem::path& path);

struct EpisodeResult {
  StatusCode final_status;
  std::vector<double> costs;  // observed cost per iteration
};

/// Runs one learning episode at fixed demand, mutating the weights, and
/// returns the status held at termination. Each candidate action is valued
/// by the features of the status it leads to. Stops early once, past j_min
/// iterations, the feature-scaled cost stays under omega with an unchanged
/// cost for j_rep consecutive iterations.
EpisodeResult run_episode(const SlotDemand& demand,
                          std::span<const BaseStation> stations,
                          std::span<const double> phis,
                          const AgentConfig& config, double epsilon,
                          WeightVectors& weights, Rng& rng, StatusCode start);

/// Online simulation over a whole trace: one episode per slot, weights and
/// final status carried across slots, epsilon decayed per episode.
std::vector<SlotResult> run_simulation(const TrafficTrace& trace,
                                       std::span<const BaseStation> stations,
                                       const AgentConfig& config,
                                       std::uint64_t seed);

}  // namespace cellsw
