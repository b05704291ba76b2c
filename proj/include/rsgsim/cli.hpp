#pragma once
// Subcommand implementations behind the command-line tool. Each returns
// the process exit code: 0 success, 1 I/O failure, 2 bad config or usage,
// 3 arrival rates outside the capacity region (bounds only).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rsgsim::cli {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> warmup;
  std::optional<std::uint32_t> replications;
  int jobs = 0;  // max concurrent replications; 0 = all cores, 1 = serial
};

// Simulates one config; writes per-link rows plus a "total" row.
int cmd_run(const std::string& config_path, const std::string& out_path, const Overrides& ov);

// Reruns the config across a gamma grid; one CSV row per gamma.
// gamma_spec: "pow2:a..b" (2^a .. 2^b, integer exponents) or a
// comma-separated list of values.
int cmd_sweep(const std::string& config_path, const std::string& gamma_spec,
              const std::string& out_path, const Overrides& ov);

// Runs two configs that differ only in their policy section under common
// random numbers and writes per-link deltas.
int cmd_compare(const std::string& config_a, const std::string& config_b,
                const std::string& out_path, const Overrides& ov);

// Prints capacity margins, drift constant, queue bound, and the
// regularity lower bound for a config (no simulation).
int cmd_bounds(const std::string& config_path, const Overrides& ov);

// Exposed for tests: parses a gamma grid spec. Throws ConfigError.
std::vector<double> parse_gamma_spec(const std::string& spec);

}  // namespace rsgsim::cli
