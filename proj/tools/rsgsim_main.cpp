// Command-line front end. Exit codes: 0 success, 1 I/O failure, 2 bad
// config or usage, 3 arrival rates outside the capacity region.

#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "rsgsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Slotted-time link scheduling simulator and analysis toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0, horizon = 0, warmup = 0;
  std::uint32_t reps = 0;
  rsgsim::cli::Overrides ov;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Override run.seed");
    sub->add_option("--horizon", horizon, "Override run.horizon (slots)");
    sub->add_option("--warmup", warmup, "Override run.warmup (slots)");
    sub->add_option("--reps", reps, "Override run.replications");
    sub->add_option("--jobs", ov.jobs,
                    "Max concurrent replications (0 = one per core, 1 = serial)");
  };
  auto collect_common = [&](CLI::App* sub) {
    if (sub->count("--seed")) ov.seed = seed;
    if (sub->count("--horizon")) ov.horizon = horizon;
    if (sub->count("--warmup")) ov.warmup = warmup;
    if (sub->count("--reps")) ov.replications = reps;
  };

  std::string config, config_b, output, gamma_spec;

  CLI::App* run = app.add_subcommand("run", "Simulate one config; write per-link stats CSV");
  run->add_option("config", config, "JSON config path")->required();
  run->add_option("output", output, "Output CSV path")->required();
  add_common(run);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Rerun a config across a gamma grid; one CSV row per gamma");
  sweep->add_option("config", config, "JSON config path")->required();
  sweep->add_option("output", output, "Output CSV path")->required();
  sweep->add_option("--gamma", gamma_spec, "Gamma grid: pow2:<lo>..<hi> or v1,v2,...")
      ->required();
  add_common(sweep);

  CLI::App* compare = app.add_subcommand(
      "compare", "Run two configs differing only in policy under common random numbers");
  compare->add_option("config_a", config, "Baseline JSON config")->required();
  compare->add_option("config_b", config_b, "Alternative JSON config")->required();
  compare->add_option("output", output, "Output CSV path")->required();
  add_common(compare);

  CLI::App* bounds =
      app.add_subcommand("bounds", "Print capacity margins and analytic bounds (no simulation)");
  bounds->add_option("config", config, "JSON config path")->required();
  add_common(bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*run) {
    collect_common(run);
    return rsgsim::cli::cmd_run(config, output, ov);
  }
  if (*sweep) {
    collect_common(sweep);
    return rsgsim::cli::cmd_sweep(config, gamma_spec, output, ov);
  }
  if (*compare) {
    collect_common(compare);
    return rsgsim::cli::cmd_compare(config, config_b, output, ov);
  }
  collect_common(bounds);
  return rsgsim::cli::cmd_bounds(config, ov);
}
