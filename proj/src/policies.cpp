// Weight computation and schedule selection.

#include "rsgsim/policies.hpp"

#include <stdexcept>

namespace rsgsim {

void mws_weights(std::span<const std::int64_t> q, std::span<const double> alpha,
                 std::vector<double>& w) {
  if (q.size() != alpha.size()) throw std::invalid_argument("mws_weights: dimension mismatch");
  w.resize(q.size());
  for (std::size_t l = 0; l < q.size(); ++l)
    w[l] = alpha[l] * static_cast<double>(q[l]);
}

void rsg_weights(std::span<const std::int64_t> q, std::span<const std::int64_t> t,
                 std::span<const double> alpha, std::span<const double> beta, double gamma,
                 std::vector<double>& w) {
  if (q.size() != t.size() || q.size() != alpha.size() || q.size() != beta.size())
    throw std::invalid_argument("rsg_weights: dimension mismatch");
  w.resize(q.size());
  for (std::size_t l = 0; l < q.size(); ++l)
    w[l] = alpha[l] * static_cast<double>(q[l]) + gamma * beta[l] * static_cast<double>(t[l]);
}

std::size_t select_max_weight(std::span<const double> w, std::span<const std::int64_t> c,
                              const ScheduleSet& schedules, TieRule tie_rule,
                              RngStream* tie_rng) {
  if (w.size() != schedules.num_links || c.size() != schedules.num_links)
    throw std::invalid_argument("select_max_weight: dimension mismatch");
  if (schedules.schedules.empty())
    throw std::invalid_argument("select_max_weight: empty schedule set");

  // Pass 1: the maximum total weight. Summation runs over each schedule's
  // active links in ascending link order, so equal-weight schedules
  // produce bit-identical totals and ties are exact.
  double best = -1.0;  // any real schedule value is >= 0 only if weights are; start below all
  bool first = true;
  std::size_t best_idx = 0;
  std::size_t tie_count = 0;
  for (std::size_t i = 0; i < schedules.size(); ++i) {
    double v = 0.0;
    for (LinkId l : schedules.active_links[i]) v += w[l] * static_cast<double>(c[l]);
    if (first || v > best) {
      best = v;
      best_idx = i;
      tie_count = 1;
      first = false;
    } else if (v == best) {
      ++tie_count;
    }
  }
  if (tie_rule == TieRule::LowestIndex || tie_count == 1) return best_idx;

  if (tie_rng == nullptr)
    throw std::invalid_argument("select_max_weight: SeededUniform needs a tie-break stream");
  // Pass 2: pick the k-th maximizer uniformly.
  std::uint64_t k = tie_rng->uniform_int(tie_count);
  for (std::size_t i = best_idx; i < schedules.size(); ++i) {
    double v = 0.0;
    for (LinkId l : schedules.active_links[i]) v += w[l] * static_cast<double>(c[l]);
    if (v == best) {
      if (k == 0) return i;
      --k;
    }
  }
  return best_idx;  // unreachable
}

std::size_t select_round_robin(RoundRobinState& rr, const ScheduleSet& schedules) {
  if (schedules.origin != TopologyKind::SingleHop)
    throw ConfigError("round-robin is defined for single-hop schedule sets only");
  const std::size_t idx = rr.next_link;
  rr.next_link = (rr.next_link + 1) % schedules.num_links;
  return idx;  // single-hop schedule i serves exactly link i
}

std::size_t decide(const PolicySpec& policy, const SystemState& state,
                   std::span<const std::int64_t> c, const ScheduleSet& schedules,
                   RoundRobinState& rr, RngStream* tie_rng, std::vector<double>& weight_scratch) {
  switch (policy.kind) {
    case PolicyKind::MaxWeight:
      mws_weights(state.q, policy.alpha, weight_scratch);
      break;
    case PolicyKind::Rsg:
    case PolicyKind::RsgVariant:
      rsg_weights(state.q, state.t, policy.alpha, policy.beta, policy.gamma, weight_scratch);
      break;
    case PolicyKind::RoundRobin:
      return select_round_robin(rr, schedules);
  }
  return select_max_weight(weight_scratch, c, schedules, policy.tie_rule, tie_rng);
}

}  // namespace rsgsim
