#pragma once
// Seeded replication runner: the per-slot simulation loop, parallel
// execution across replications, aggregation with standard errors, and
// the gamma sweep used for tradeoff studies.

#include <cstdint>
#include <limits>
#include <vector>

#include "rsgsim/stats.hpp"
#include "rsgsim/types.hpp"

namespace rsgsim {

// One replication; `seed` is this replication's own seed (see
// replication_seed in rng.hpp for how run seeds split). Identical
// (cfg, seed) pairs produce bit-identical results. The overload taking a
// prebuilt schedule set avoids rebuilding it per replication.
RunStats run_replication(const SimConfig& cfg, std::uint64_t seed);
RunStats run_replication(const SimConfig& cfg, const ScheduleSet& schedules, std::uint64_t seed);

// Mean and standard error of one scalar across replications. se is NaN
// when fewer than two replications contributed; mean is NaN when none did
// (possible for inter-service fields on starved links).
struct Estimate {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double se = std::numeric_limits<double>::quiet_NaN();
  std::uint32_t n = 0;
};

struct LinkAggregate {
  Estimate mean_q, std_q, mean_t, e_i, e_i2, norm_i2, var_i, p_service, mean_unused,
      mean_departed;
  std::uint64_t inter_service_samples = 0;  // summed across replications
};

struct AggregateStats {
  std::vector<LinkAggregate> link;
  Estimate total_mean_q, sum_alpha_mean_q, regularity_metric, weighted_norm_i2,
      total_mean_unused;
  Estimate h_beta, h_beta_lambda, h_beta_lambda_t, h_beta_lambda_t2;
  // Identity residuals evaluated on replication-pooled estimates. The
  // renewal-identity residual is the max over links with at least 100
  // pooled interval samples (NaN when no link qualifies).
  double lemma1_residual_max = std::numeric_limits<double>::quiet_NaN();
  Lemma2Residuals lemma2;
  // Raw per-replication results, kept for paired comparisons.
  std::vector<RunStats> per_rep;
};

// Runs cfg.run.replications independent replications and aggregates.
// jobs = 1: plain serial loop (the reference path); jobs = 0: one thread
// per core; jobs = n: at most n concurrent replications. All values of
// `jobs` produce bit-identical aggregates.
AggregateStats run_experiment(const SimConfig& cfg, int jobs = 0);

struct SweepRow {
  double gamma = 0.0;
  Estimate total_mean_q;
  Estimate regularity_metric;
  double lower_bound = 0.0;
  // Metric upper bounds; NaN for gamma == 0 rows (the bound needs
  // gamma > 0) and when lambda has no positive multiplicative margin.
  double upper_bound_measured_h = std::numeric_limits<double>::quiet_NaN();
  double upper_bound_conservative = std::numeric_limits<double>::quiet_NaN();
};

// Reruns `base` once per gamma value, holding everything else (seeds
// included) fixed. The policy kind is the TSLS-aware scheduler (keeping
// the variant counter rule if `base` uses it), so a gamma = 0 row
// reproduces the plain queue-weighted scheduler exactly.
std::vector<SweepRow> sweep_gamma(const SimConfig& base, const std::vector<double>& gammas,
                                  int jobs = 0);

}  // namespace rsgsim
