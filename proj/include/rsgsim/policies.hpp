#pragma once
// Per-slot schedule selection: the max-weight family (queue-only weights,
// or queue plus weighted TSLS counters) and round-robin.

#include <cstdint>
#include <span>
#include <vector>

#include "rsgsim/dynamics.hpp"
#include "rsgsim/rng.hpp"
#include "rsgsim/types.hpp"

namespace rsgsim {

struct RoundRobinState {
  LinkId next_link = 0;
};

// w_l = alpha_l * Q_l.
void mws_weights(std::span<const std::int64_t> q, std::span<const double> alpha,
                 std::vector<double>& w);

// w_l = alpha_l * Q_l + gamma * beta_l * T_l. gamma == 0 reduces to
// mws_weights exactly.
void rsg_weights(std::span<const std::int64_t> q, std::span<const std::int64_t> t,
                 std::span<const double> alpha, std::span<const double> beta, double gamma,
                 std::vector<double>& w);

// Index of a schedule maximizing sum_l w_l * c_l * S_l over the explicit
// set. TieRule::LowestIndex picks the first maximizer in the set's
// canonical order (so all-zero weights select schedule 0);
// TieRule::SeededUniform draws uniformly among the maximizers from
// `tie_rng`, which then must be non-null.
std::size_t select_max_weight(std::span<const double> w, std::span<const std::int64_t> c,
                              const ScheduleSet& schedules, TieRule tie_rule,
                              RngStream* tie_rng = nullptr);

// One-hot schedule at the cursor; the cursor advances mod L every slot,
// whether or not the served link's channel is up. Single-hop sets only.
std::size_t select_round_robin(RoundRobinState& rr, const ScheduleSet& schedules);

// Dispatch on policy kind. The TSLS-variant policy selects exactly like
// the standard one; the two differ only in the counter update rule the
// dynamics apply (see tsls_mode_of).
std::size_t decide(const PolicySpec& policy, const SystemState& state,
                   std::span<const std::int64_t> c, const ScheduleSet& schedules,
                   RoundRobinState& rr, RngStream* tie_rng, std::vector<double>& weight_scratch);

inline TslsMode tsls_mode_of(const PolicySpec& policy) {
  return policy.kind == PolicyKind::RsgVariant ? TslsMode::Variant : TslsMode::Standard;
}

}  // namespace rsgsim
