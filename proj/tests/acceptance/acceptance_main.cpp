// Acceptance suite: one line of output per criterion, non-zero exit when any
// criterion fails. Every tolerance is pinned here, in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cellsw/experiment.hpp"
#include "../support/throughput_oracle.hpp"

using namespace cellsw;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kMasterSeed = 20250808;

struct Criterion {
  int id;
  bool pass;
  std::string detail;
  double seconds;
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const auto start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

std::vector<BaseStation> stations_for(Scenario scenario, int s,
                                      double kappa = 10.0) {
  RunConfig config;
  config.scenario = scenario;
  config.kappa_override = kappa;
  return make_stations(config, s);
}

// ---------------------------------------------------------------------------
// 1. Switch-on power delta vs. the profitability threshold: exact sign
//    agreement over all four SC types and a 0.01-step load grid.
Criterion criterion_1() {
  const double t0 = now_seconds();
  const auto macro = stations_for(Scenario::B, 0)[0];
  int checked = 0, agreed = 0;
  for (BsType type : {BsType::Rrh, BsType::Micro, BsType::Pico, BsType::Femto}) {
    BaseStation sc{2, type, default_profile(type), 20.0};
    const auto threshold = profitability_threshold(sc, macro, 1.0);
    if (!threshold) continue;
    for (int i = 0; i <= 100; ++i) {
      const double lambda = i / 100.0;
      const double delta = delta_power_switch_on_w(sc, macro, 1.0, lambda);
      if (std::fabs(delta) < 1e-9) continue;  // boundary excluded
      ++checked;
      if ((delta > 0.0) == (lambda < *threshold)) ++agreed;
    }
  }
  const double elapsed = now_seconds() - t0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "sign agreement %d/%d grid points across 4 SC types", agreed,
                checked);
  return {1, checked > 0 && agreed == checked && elapsed < 1.0, detail,
          elapsed};
}

// ---------------------------------------------------------------------------
// 2. Homogeneous micro cells, zero sleep power: sorting energy equals the
//    exhaustive optimum to 1e-9 relative on >= 100 random slots per size.
//    SC demands stay below the micro profitability threshold (~0.7215), the
//    regime where every switch-off saves power.
Criterion criterion_2() {
  const double t0 = now_seconds();
  Rng rng(derive_seed(kMasterSeed, 2, 0));
  int slots_checked = 0;
  double worst_rel = 0.0;
  bool pass = true;
  for (int s = 2; s <= 12; ++s) {
    const auto stations = stations_for(Scenario::A, s);
    const std::vector<double> phis(s + 1, 1.0);
    for (int slot = 0; slot < 120; ++slot) {
      SlotDemand demand;
      demand.native.push_back(rng.uniform01());
      for (int j = 0; j < s; ++j)
        demand.native.push_back(rng.uniform(0.0, 0.7));
      const auto sort_state =
          apply_policy(demand, sorting_policy(demand, phis), phis);
      const auto es_state = apply_policy(
          demand, exhaustive_policy(demand, stations, phis), phis);
      const double e_sort = network_power_w(stations, sort_state);
      const double e_es = network_power_w(stations, es_state);
      const double rel = std::fabs(e_sort - e_es) / e_es;
      worst_rel = std::max(worst_rel, rel);
      if (rel > 1e-9) pass = false;
      ++slots_checked;
    }
  }
  const double elapsed = now_seconds() - t0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%d slots over s=2..12, worst relative gap %.3g",
                slots_checked, worst_rel);
  return {2, pass && elapsed < 30.0, detail, elapsed};
}

// ---------------------------------------------------------------------------
// Shared study for criteria 3, 4 and 6: scenario B, s in {4, 8, 12},
// 25 rounds of 144-slot synthetic traces, stock hyperparameters, kappa 10
// (plus a kappa 0 rerun of the agent for the direction check).
struct MethodSlots {
  // [round][slot]
  std::vector<std::vector<SlotResult>> rounds;
};

struct StudyPoint {
  int s = 0;
  MethodSlots vfa, vfa_kappa0, all_on, all_off, sorting, exhaustive;
};

std::vector<StudyPoint> run_study() {
  std::vector<StudyPoint> points;
  for (int s : {4, 8, 12}) {
    RunConfig config;
    config.scenario = Scenario::B;
    config.kappa_override = 10.0;
    const auto stations = make_stations(config, s);
    AgentConfig agent10 = config.resolved_agent();
    AgentConfig agent0 = agent10;
    agent0.kappa = 0.0;

    StudyPoint point;
    point.s = s;
    for (int round = 0; round < 25; ++round) {
      auto trace = synthetic_trace(s, 144, derive_seed(kMasterSeed, 31, round));
      const std::uint64_t agent_seed = derive_seed(kMasterSeed, 32, round);
      point.vfa.rounds.push_back(
          evaluate_method(Method::Vfa, trace, stations, agent10, 15, agent_seed));
      point.vfa_kappa0.rounds.push_back(
          evaluate_method(Method::Vfa, trace, stations, agent0, 15, agent_seed));
      point.all_on.rounds.push_back(evaluate_method(Method::AllOn, trace,
                                                    stations, agent10, 15, 0));
      point.all_off.rounds.push_back(evaluate_method(Method::AllOff, trace,
                                                     stations, agent10, 15, 0));
      point.sorting.rounds.push_back(evaluate_method(Method::Sorting, trace,
                                                     stations, agent10, 15, 0));
      point.exhaustive.rounds.push_back(evaluate_method(
          Method::Exhaustive, trace, stations, agent10, 15, 0));
    }
    points.push_back(std::move(point));
  }
  return points;
}

std::vector<double> slot_mean_power(const MethodSlots& method) {
  const std::size_t slots = method.rounds[0].size();
  std::vector<double> mean(slots, 0.0);
  for (const auto& round : method.rounds)
    for (std::size_t t = 0; t < slots; ++t) mean[t] += round[t].power_w;
  for (double& v : mean) v /= static_cast<double>(method.rounds.size());
  return mean;
}

double infeasible_fraction(const MethodSlots& method, int first_slot) {
  int infeasible = 0, total = 0;
  for (const auto& round : method.rounds)
    for (std::size_t t = first_slot; t < round.size(); ++t) {
      ++total;
      if (!round[t].feasible) ++infeasible;
    }
  return static_cast<double>(infeasible) / total;
}

// 3. Post-learning, the agent's mean power per slot tracks the exhaustive
//    optimum within 10% on at least 80% of slots.
Criterion criterion_3(const std::vector<StudyPoint>& study, double elapsed) {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& point : study) {
    const auto vfa = slot_mean_power(point.vfa);
    const auto es = slot_mean_power(point.exhaustive);
    const int first = static_cast<int>(vfa.size()) / 4;  // learning phase
    int within = 0, total = 0;
    for (std::size_t t = first; t < vfa.size(); ++t) {
      ++total;
      if (std::fabs(vfa[t] - es[t]) <= 0.10 * es[t]) ++within;
    }
    const double frac = static_cast<double>(within) / total;
    if (frac < 0.80) pass = false;
    detail << "s=" << point.s << ": " << within << "/" << total << " ";
  }
  detail << "slots within 10% of exhaustive";
  return {3, pass && elapsed < 300.0, detail.str(), elapsed};
}

// 4. QoS under penalty: kappa 10 keeps post-learning constraint violations
//    at or below 5%; dropping kappa to 0 never reduces them.
Criterion criterion_4(const std::vector<StudyPoint>& study, double elapsed) {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& point : study) {
    const int first = 144 / 4;
    const double with_penalty = infeasible_fraction(point.vfa, first);
    const double without_penalty =
        infeasible_fraction(point.vfa_kappa0, first);
    if (with_penalty > 0.05 || without_penalty < with_penalty) pass = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "s=%d: %.2f%% (k=10) vs %.2f%% (k=0)  ",
                  point.s, 100.0 * with_penalty, 100.0 * without_penalty);
    detail << buf;
  }
  return {4, pass, detail.str(), elapsed};
}

// ---------------------------------------------------------------------------
// 5. The per-user throughput derivation, normalized by installed capacity,
//    matches the per-cell saturation metric to 1e-12 on 10,000 random triples.
Criterion criterion_5() {
  const double t0 = now_seconds();
  Rng rng(derive_seed(kMasterSeed, 5, 0));
  int checked = 0, matched = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double provided = rng.uniform(0.1, 50.0);
    const double required = rng.uniform(0.0, 75.0);
    const int users = 1 + static_cast<int>(rng.below(64));
    const double oracle =
        testing::cell_throughput_oracle(required, provided, users) / provided;
    const NetworkState cell{{required / provided}, {1}, 0};
    const double metric = normalized_throughput(cell);
    const double diff = std::fabs(oracle - metric);
    worst = std::max(worst, diff);
    ++checked;
    if (diff <= 1e-12) ++matched;
  }
  const double elapsed = now_seconds() - t0;
  char detail[128];
  std::snprintf(detail, sizeof(detail), "%d/%d triples agree, worst |diff| %.3g",
                matched, checked, worst);
  return {5, matched == checked && elapsed < 1.0, detail, elapsed};
}

// 6. Benchmark dominance on every slot of the study: exhaustive is never
//    beaten on power, all-on is never beaten on throughput.
Criterion criterion_6(const std::vector<StudyPoint>& study, double elapsed) {
  bool pass = true;
  long slots = 0;
  for (const auto& point : study) {
    for (std::size_t r = 0; r < point.exhaustive.rounds.size(); ++r) {
      for (std::size_t t = 0; t < point.exhaustive.rounds[r].size(); ++t) {
        ++slots;
        const double es = point.exhaustive.rounds[r][t].power_w;
        if (es > point.sorting.rounds[r][t].power_w + 1e-9) pass = false;
        if (es > point.all_on.rounds[r][t].power_w + 1e-9) pass = false;
        const double best_tput = point.all_on.rounds[r][t].tput_norm;
        for (const MethodSlots* other :
             {&point.vfa, &point.all_off, &point.sorting, &point.exhaustive})
          if (best_tput < other->rounds[r][t].tput_norm - 1e-12) pass = false;
      }
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "power and throughput dominance on %ld slots", slots);
  return {6, pass, detail, elapsed};
}

// ---------------------------------------------------------------------------
// 7. All-off sign behavior on high-load traces (per-cell mean demand >= 0.6):
//    expected to consume more than all-on at s=4 and less at s=28.
Criterion criterion_7() {
  const double t0 = now_seconds();
  SyntheticOptions high_load;
  high_load.midpoint = 0.65;

  auto energies = [&](int s) {
    RunConfig config;
    config.scenario = Scenario::B;
    config.kappa_override = 10.0;
    const auto stations = make_stations(config, s);
    const AgentConfig agent = config.resolved_agent();
    double e_on = 0.0, e_off = 0.0, demand_sum = 0.0;
    long demand_count = 0;
    for (int round = 0; round < 10; ++round) {
      auto trace =
          synthetic_trace(s, 144, derive_seed(kMasterSeed, 7, round), high_load);
      for (const auto& row : trace.demands)
        for (double v : row) {
          demand_sum += v;
          ++demand_count;
        }
      e_on += energy_j(
          evaluate_method(Method::AllOn, trace, stations, agent, 15, 0), 600.0);
      e_off += energy_j(
          evaluate_method(Method::AllOff, trace, stations, agent, 15, 0), 600.0);
    }
    return std::tuple{e_on, e_off, demand_sum / demand_count};
  };

  const auto [on4, off4, mean4] = energies(4);
  const auto [on28, off28, mean28] = energies(28);
  const bool family_ok = mean4 >= 0.6 && mean28 >= 0.6;
  const bool small_negative_gain = off4 > on4;
  const bool large_crossover = off28 < on28;

  const double elapsed = now_seconds() - t0;
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "mean demand %.2f; s=4: all_off %.4g %s all_on %.4g J "
                "(expected >); s=28: all_off %.4g %s all_on %.4g J (expected <)",
                mean4, off4, small_negative_gain ? ">" : "<=", on4, off28,
                large_crossover ? "<" : ">=", on28);
  return {7, family_ok && small_negative_gain && large_crossover, detail,
          elapsed};
}

// ---------------------------------------------------------------------------
// 8. Determinism: one config, two runs, byte-identical outputs.
Criterion criterion_8() {
  const double t0 = now_seconds();
  auto make_config = [](const fs::path& out) {
    RunConfig config;
    config.scenario = Scenario::B;
    config.sc_counts = {6};
    config.slots = 36;
    config.rounds = 3;
    config.seed = 99;
    config.out_dir = out;
    return config;
  };
  const auto base = fs::temp_directory_path() / "cellsw_acceptance_det";
  fs::remove_all(base);
  run(make_config(base / "a"));
  run(make_config(base / "b"));

  bool pass = true;
  int files = 0;
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    const auto name = entry.path().filename();
    if (name == "config_echo") continue;  // embeds the differing out path
    ++files;
    std::ifstream fa(entry.path(), std::ios::binary);
    std::ifstream fb(base / "b" / name, std::ios::binary);
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (!fb || sa.str() != sb.str()) pass = false;
  }
  const double elapsed = now_seconds() - t0;
  char detail[96];
  std::snprintf(detail, sizeof(detail), "%d output files byte-identical", files);
  return {8, pass && files > 0, detail, elapsed};
}

void report(const Criterion& c) {
  std::printf("criterion %d: %s — %s [%.2f s]\n", c.id,
              c.pass ? "PASS" : "FAIL", c.detail.c_str(), c.seconds);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  std::vector<Criterion> results;
  auto want = [&](int id) { return only == 0 || only == id; };

  if (want(1)) results.push_back(criterion_1());
  if (want(2)) results.push_back(criterion_2());
  if (want(3) || want(4) || want(6)) {
    const double t0 = now_seconds();
    const auto study = run_study();
    const double elapsed = now_seconds() - t0;
    if (want(3)) results.push_back(criterion_3(study, elapsed));
    if (want(4)) results.push_back(criterion_4(study, elapsed));
    if (want(6)) results.push_back(criterion_6(study, elapsed));
  }
  if (want(5)) results.push_back(criterion_5());
  if (want(7)) results.push_back(criterion_7());
  if (want(8)) results.push_back(criterion_8());

  std::sort(results.begin(), results.end(),
            [](const Criterion& a, const Criterion& b) { return a.id < b.id; });
  int failures = 0;
  for (const auto& c : results) {
    report(c);
    if (!c.pass) ++failures;
  }
  std::printf("%zu criteria run, %d failed\n", results.size(), failures);
  return failures;
}
