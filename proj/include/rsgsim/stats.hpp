#pragma once
// Streaming accumulation of steady-state estimates over the post-warmup
// window of one replication, and the residuals of the two telescoping
// identities that tie TSLS moments to service events.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rsgsim/types.hpp"

namespace rsgsim {

struct LinkStats {
  double mean_q = 0.0;
  double std_q = 0.0;  // population standard deviation
  double mean_t = 0.0;
  double mean_t2 = 0.0;
  // Inter-service interval estimates; absent until the link has recorded
  // at least one complete interval (the window before the first
  // post-warmup service event is always discarded).
  std::optional<double> e_i;       // Ê[I]
  std::optional<double> e_i2;      // Ê[I²]
  std::optional<double> norm_i2;   // Ê[I²] / Ê[I]²  (>= 1, = 1 iff periodic)
  std::optional<double> var_i;     // Ê[I²] - Ê[I]²
  double p_service = 0.0;          // fraction of slots with c*s > 0
  double mean_unused = 0.0;
  double mean_departed = 0.0;
  std::uint64_t service_events = 0;
  std::uint64_t inter_service_samples = 0;

  bool operator==(const LinkStats&) const = default;
};

struct RunStats {
  std::vector<LinkStats> link;
  double sum_alpha_mean_q = 0.0;   // sum_l alpha_l * mean Q_l
  double regularity_metric = 0.0;  // sum_l beta_l * lambda_l * mean T_l
  double weighted_norm_i2 = 0.0;   // sum_l beta_l * rho_l * normI2_l, rho_l = lambda_l Ê[I_l]
  // Time averages of sums over the served set H[t] = {l : c_l s_l > 0},
  // using the slot's begin-of-slot T values:
  double h_beta_lambda = 0.0;      // Ê[Σ_{l∈H} β_l λ_l]
  double h_beta_lambda_t = 0.0;    // Ê[Σ_{l∈H} β_l λ_l T_l]
  double h_beta_lambda_t2 = 0.0;   // Ê[Σ_{l∈H} β_l λ_l T_l²]
  double h_beta = 0.0;             // Ê[Σ_{l∈H} β_l]
  double total_mean_q = 0.0;
  double total_mean_q_second_half = 0.0;  // same average over the last half of the window
  std::uint64_t slots_counted = 0;

  bool operator==(const RunStats&) const = default;
};

struct Lemma2Residuals {
  double r1_abs = 0.0;
  double r1_rel = 0.0;
  double r2_abs = 0.0;
  double r2_rel = 0.0;
};

class StatsAccumulator {
 public:
  StatsAccumulator(std::size_t num_links, std::uint64_t warmup, std::uint64_t horizon);

  // Accumulates one post-warmup slot. `q` and `t` are begin-of-slot values
  // (before the slot's update); the remaining spans are the slot's outcome.
  // Only slots with index >= warmup may be recorded.
  void record_slot(std::uint64_t slot, std::span<const std::int64_t> q,
                   std::span<const std::int64_t> t, std::span<const std::uint8_t> service_event,
                   std::span<const std::int64_t> unused, std::span<const std::int64_t> departed);

  // Turns the accumulated sums into estimates. Throws std::logic_error if
  // no slots were recorded.
  RunStats finalize(std::span<const double> lambda, std::span<const double> alpha,
                    std::span<const double> beta) const;

  std::uint64_t slots_counted() const { return slots_; }

 private:
  // Quadratic sums use 128-bit integers: exact and overflow-proof even for
  // badly unstable runs (Q ~ 1e7 over 1e6 slots).
  struct PerLink {
    std::uint64_t sum_q = 0;
    unsigned __int128 sum_q2 = 0;
    std::uint64_t sum_t = 0;
    unsigned __int128 sum_t2 = 0;
    std::uint64_t sum_unused = 0, sum_departed = 0;
    std::uint64_t service_events = 0;
    // Sums of T and T² over slots where the link is served (for the
    // served-set identities).
    std::uint64_t served_t_sum = 0;
    unsigned __int128 served_t2_sum = 0;
    // Inter-service interval tracking.
    bool armed = false;
    std::uint64_t last_service_slot = 0;
    std::uint64_t samples = 0;
    std::uint64_t i_sum = 0;
    unsigned __int128 i2_sum = 0;
  };

  std::vector<PerLink> links_;
  std::uint64_t warmup_;
  std::uint64_t second_half_start_;
  std::uint64_t slots_ = 0;
  std::uint64_t slots_second_half_ = 0;
  std::uint64_t sum_q_total_second_half_ = 0;
};

// Residuals of the two identities relating served-set averages to the
// per-link rates:  (1)  Ê[Σ_H βλT] = Σβλ − Ê[Σ_H βλ]
//                  (2)  2 Σ_l βλ·meanT_l = Σβλ − Ê[Σ_H βλ] + Ê[Σ_H βλT²]
// Relative residuals are |lhs − rhs| / max(|lhs|, |rhs|), 0 when both
// sides vanish.
Lemma2Residuals lemma2_residuals(const RunStats& run, std::span<const double> lambda,
                                 std::span<const double> beta);

// Relative residual of the renewal-reward identity
// meanT = (Ê[I²]/Ê[I] − 1)/2, normalized by max(meanT, 1). Absent when the
// link has fewer than `min_samples` complete intervals.
std::optional<double> lemma1_residual(const LinkStats& link, std::uint64_t min_samples = 1);

}  // namespace rsgsim
