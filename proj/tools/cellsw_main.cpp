#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cellsw/experiment.hpp"

namespace {

struct CliOptions {
  std::string config_file;
  std::string scenario;
  std::string s_list;
  std::string methods;
  std::string trace;
  std::string out;
  std::int64_t seed = -1;
  int slots = -1;
  int rounds = -1;
  double kappa = std::numeric_limits<double>::quiet_NaN();
};

void add_common_flags(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_file,
                  "Key = value config file; flags override its entries");
  cmd->add_option("--scenario", opts.scenario, "A, B or custom");
  cmd->add_option("--s", opts.s_list,
                  "Small-cell count, or comma list for sweep");
  cmd->add_option("--methods", opts.methods,
                  "Comma list of vfa,all_on,all_off,sorting,exhaustive");
  cmd->add_option("--trace", opts.trace, "synthetic or csv:<path>");
  cmd->add_option("--seed", opts.seed, "Master seed");
  cmd->add_option("--slots", opts.slots, "Slots per round");
  cmd->add_option("--rounds", opts.rounds, "Independent rounds to average");
  cmd->add_option("--kappa", opts.kappa, "Overload penalty factor");
  cmd->add_option("--out", opts.out, "Output directory");
}

cellsw::RunConfig build_config(const CliOptions& opts) {
  cellsw::RunConfig config;
  if (!opts.config_file.empty())
    for (const auto& [key, value] : cellsw::parse_config_file(opts.config_file))
      cellsw::apply_config_kv(config, key, value);
  // Command-line flags win over file entries.
  if (!opts.scenario.empty()) cellsw::apply_config_kv(config, "scenario", opts.scenario);
  if (!opts.s_list.empty()) cellsw::apply_config_kv(config, "s", opts.s_list);
  if (!opts.methods.empty()) cellsw::apply_config_kv(config, "methods", opts.methods);
  if (!opts.trace.empty()) cellsw::apply_config_kv(config, "trace", opts.trace);
  if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.slots >= 0) config.slots = opts.slots;
  if (opts.rounds >= 0) config.rounds = opts.rounds;
  if (!std::isnan(opts.kappa)) config.kappa_override = opts.kappa;
  if (!opts.out.empty()) config.out_dir = opts.out;
  return config;
}

void print_summaries(const std::vector<cellsw::RunSummary>& summaries) {
  std::printf("%-12s %4s %16s %10s %10s %12s\n", "method", "s", "energy_j",
              "gain_pct", "mean_tput", "infeasible");
  for (const auto& s : summaries)
    std::printf("%-12s %4d %16.6g %10.4f %10.4f %12lld\n", s.method.c_str(),
                s.sc_count, s.energy_j, s.gain_pct, s.mean_tput,
                static_cast<long long>(s.infeasible_slots));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-driven small-cell switching simulator"};
  app.require_subcommand(1);

  CliOptions run_opts;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Run every method at one small-cell count");
  add_common_flags(run_cmd, run_opts);

  CliOptions sweep_opts;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Run across a list of small-cell counts");
  add_common_flags(sweep_cmd, sweep_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      print_summaries(cellsw::run(build_config(run_opts)));
    } else {
      print_summaries(cellsw::sweep(build_config(sweep_opts)));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
