#pragma once
// Closed-form analytics that accompany the simulator: capacity-region
// margins (via an exact LP over per-channel-state schedule shares), the
// drift constant and its steady-state queue bound, lower / upper bounds on
// the weighted regularity metric, and the Lyapunov diagnostic.

#include <cstdint>
#include <optional>
#include <span>

#include "rsgsim/types.hpp"

namespace rsgsim {

struct CapacityMargin {
  double additive_eps = 0.0;        // max e with lambda + e*1 still supportable
  double multiplicative_eps = 0.0;  // max e with lambda*(1+e) still supportable

  bool inside() const { return additive_eps > 0.0 && multiplicative_eps > 0.0; }
};

// Exact margins of lambda relative to the capacity region spanned by
// randomizing over schedules per joint channel state. Negative values mean
// lambda lies outside the region. Guard: the joint channel state space
// (product over links) must have at most 4096 states, and the LP at most
// 20000 share variables.
CapacityMargin capacity_margin(std::span<const double> lambda, const ScheduleSet& schedules,
                               const ChannelModel& channel);

// Universal lower bound on sum_l beta_l lambda_l E[T_l]:
//   (Sum/M - 1)/2 * Sum, with Sum = sum_l beta_l lambda_l and
//   M = max over schedules of the in-schedule beta*lambda sum.
double regularity_lower_bound(std::span<const double> lambda, std::span<const double> beta,
                              const ScheduleSet& schedules);

// Upper bound on the weighted regularity metric achieved by the
// TSLS-aware max-weight policy with parameters (alpha, beta, gamma > 0),
// for lambda with multiplicative margin eps_mult > 0:
//   C_max/(1+eps) * (sum_l beta_l - measured_h_beta)
//   + 1/(2*gamma*(1+eps)) * sum_l alpha_l (E[A_l^2] + E[C_l^2]).
// Pass measured_h_beta = 0 for the conservative (no-measurement) form.
double regularity_upper_bound(std::span<const double> lambda, std::span<const double> alpha,
                              std::span<const double> beta, double gamma,
                              const ChannelModel& channel, const ArrivalModel& arrivals,
                              double eps_mult, double measured_h_beta);

// Drift constant B = 4*gamma*C_max*sum_l beta_l
//                    + sum_l alpha_l * (E[A_l^2] + E[C_l^2]).
double drift_constant(std::span<const double> alpha, std::span<const double> beta, double gamma,
                      const ChannelModel& channel, const ArrivalModel& arrivals);

// Steady-state bound sum_l alpha_l E[Q_l] <= B / (2*eps_add), eps_add > 0.
double queue_bound(double drift_b, double eps_add);

// W(state) = sum_l alpha_l Q_l^2 + 4*gamma*C_max*sum_l beta_l T_l.
double lyapunov_w(std::span<const std::int64_t> q, std::span<const std::int64_t> t,
                  std::span<const double> alpha, std::span<const double> beta, double gamma,
                  std::int64_t c_max);

struct PeriodicService {
  double mean_t;   // (period - 1) / 2
  double norm_i2;  // always exactly 1
};

// Moments of a perfectly periodic service pattern; the fixed point both
// regularity identities must agree on.
PeriodicService lemma1_oracle(std::uint64_t period);

// Per-link boundary rate of the symmetric capacity region, when a closed
// form applies: single-hop with identical constant channels (c/L),
// single-hop with identical two-point on/off channels (c*(1-(1-q)^L)/L),
// or a crossbar with identical constant channels (c/N). Otherwise nullopt.
std::optional<double> symmetric_boundary(const TopologySpec& topology,
                                         const ChannelModel& channel);

}  // namespace rsgsim
