// Capacity margins via an exact LP, plus the closed-form drift and
// regularity bounds.

#include "rsgsim/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "rsgsim/lp.hpp"

namespace rsgsim {

namespace {

struct JointChannelState {
  double prob;
  std::vector<std::int64_t> c;
};

// Product distribution over per-link channel states. Guarded.
std::vector<JointChannelState> enumerate_channel_states(const ChannelModel& channel) {
  constexpr std::size_t kMaxStates = 4096;
  const std::size_t num_links = channel.link.size();
  std::size_t count = 1;
  for (const auto& d : channel.link) {
    count *= d.values.size();
    if (count > kMaxStates) {
      std::ostringstream os;
      os << "joint channel state enumeration guard: more than " << kMaxStates << " states";
      throw ConfigError(os.str());
    }
  }
  std::vector<JointChannelState> states;
  states.reserve(count);
  std::vector<std::size_t> idx(num_links, 0);
  for (;;) {
    JointChannelState s;
    s.prob = 1.0;
    s.c.resize(num_links);
    for (std::size_t l = 0; l < num_links; ++l) {
      s.prob *= channel.link[l].probs[idx[l]];
      s.c[l] = channel.link[l].values[idx[l]];
    }
    states.push_back(std::move(s));
    std::size_t l = 0;
    while (l < num_links && ++idx[l] == channel.link[l].values.size()) idx[l++] = 0;
    if (l == num_links) break;
  }
  return states;
}

// maximize eps s.t. per-state schedule shares support lambda with slack
// eps (additive: rate_l >= lambda_l + eps; multiplicative:
// rate_l >= lambda_l * (1 + eps)). eps is free, split into two
// non-negative variables.
double solve_margin(std::span<const double> lambda, const ScheduleSet& schedules,
                    const std::vector<JointChannelState>& states, bool multiplicative) {
  const std::size_t num_links = schedules.num_links;
  const std::size_t ns = schedules.size();
  const std::size_t share_vars = states.size() * ns;
  if (share_vars > 20000)
    throw ConfigError("capacity program guard: more than 20000 schedule-share variables");

  lp::Problem p;
  p.num_vars = share_vars + 2;  // shares, eps_pos, eps_neg
  const std::size_t eps_pos = share_vars, eps_neg = share_vars + 1;

  // One convexity row per channel state.
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::vector<double> row(p.num_vars, 0.0);
    for (std::size_t s = 0; s < ns; ++s) row[k * ns + s] = 1.0;
    p.a.push_back(std::move(row));
    p.b.push_back(1.0);
    p.relation.push_back(0);
  }
  // One service-rate row per link.
  for (std::size_t l = 0; l < num_links; ++l) {
    std::vector<double> row(p.num_vars, 0.0);
    for (std::size_t k = 0; k < states.size(); ++k) {
      const double pc = states[k].prob * static_cast<double>(states[k].c[l]);
      if (pc == 0.0) continue;
      for (std::size_t s = 0; s < ns; ++s)
        if (schedules.schedules[s].active[l]) row[k * ns + s] = pc;
    }
    const double coef = multiplicative ? lambda[l] : 1.0;
    row[eps_pos] = -coef;
    row[eps_neg] = coef;
    p.a.push_back(std::move(row));
    p.b.push_back(lambda[l]);
    p.relation.push_back(1);
  }
  p.c.assign(p.num_vars, 0.0);
  p.c[eps_pos] = 1.0;
  p.c[eps_neg] = -1.0;

  const lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal)
    throw std::runtime_error("capacity margin program did not solve to optimality");
  return sol.objective;
}

// Means of A^2 and C^2 weighted by alpha: sum_l alpha_l (E[A_l^2] + E[C_l^2]).
double alpha_weighted_second_moments(std::span<const double> alpha, const ChannelModel& channel,
                                     const ArrivalModel& arrivals) {
  double total = 0.0;
  for (std::size_t l = 0; l < alpha.size(); ++l)
    total += alpha[l] * (arrivals.link[l].second_moment() + channel.link[l].second_moment());
  return total;
}

}  // namespace

CapacityMargin capacity_margin(std::span<const double> lambda, const ScheduleSet& schedules,
                               const ChannelModel& channel) {
  if (lambda.size() != schedules.num_links || channel.link.size() != schedules.num_links)
    throw std::invalid_argument("capacity_margin: dimension mismatch");
  for (double l : lambda)
    if (!(l > 0.0) || !std::isfinite(l))
      throw ConfigError("capacity_margin: arrival rates must be positive and finite");
  const auto states = enumerate_channel_states(channel);
  CapacityMargin m;
  m.additive_eps = solve_margin(lambda, schedules, states, false);
  m.multiplicative_eps = solve_margin(lambda, schedules, states, true);
  return m;
}

double regularity_lower_bound(std::span<const double> lambda, std::span<const double> beta,
                              const ScheduleSet& schedules) {
  if (lambda.size() != schedules.num_links || beta.size() != schedules.num_links)
    throw std::invalid_argument("regularity_lower_bound: dimension mismatch");
  double sum = 0.0;
  for (std::size_t l = 0; l < lambda.size(); ++l) sum += beta[l] * lambda[l];
  if (sum <= 0.0) return 0.0;
  double max_in_schedule = 0.0;
  for (std::size_t s = 0; s < schedules.size(); ++s) {
    double v = 0.0;
    for (LinkId l : schedules.active_links[s]) v += beta[l] * lambda[l];
    max_in_schedule = std::max(max_in_schedule, v);
  }
  return 0.5 * (sum / max_in_schedule - 1.0) * sum;
}

double regularity_upper_bound(std::span<const double> lambda, std::span<const double> alpha,
                              std::span<const double> beta, double gamma,
                              const ChannelModel& channel, const ArrivalModel& arrivals,
                              double eps_mult, double measured_h_beta) {
  const std::size_t n = lambda.size();
  if (alpha.size() != n || beta.size() != n || channel.link.size() != n ||
      arrivals.link.size() != n)
    throw std::invalid_argument("regularity_upper_bound: dimension mismatch");
  if (!(gamma > 0.0)) throw ConfigError("regularity upper bound requires gamma > 0");
  if (!(eps_mult > 0.0))
    throw ConfigError("regularity upper bound requires a positive multiplicative margin");
  double sum_beta = 0.0;
  for (double b : beta) sum_beta += b;
  if (measured_h_beta < 0.0 || measured_h_beta > sum_beta + 1e-9)
    throw std::invalid_argument("regularity_upper_bound: measured served-set beta out of range");
  double c_max = 0.0;
  for (const auto& d : channel.link) c_max = std::max(c_max, static_cast<double>(d.max_value()));
  const double term1 = c_max / (1.0 + eps_mult) * (sum_beta - measured_h_beta);
  const double term2 =
      1.0 / (2.0 * gamma * (1.0 + eps_mult)) * alpha_weighted_second_moments(alpha, channel, arrivals);
  return term1 + term2;
}

double drift_constant(std::span<const double> alpha, std::span<const double> beta, double gamma,
                      const ChannelModel& channel, const ArrivalModel& arrivals) {
  const std::size_t n = alpha.size();
  if (beta.size() != n || channel.link.size() != n || arrivals.link.size() != n)
    throw std::invalid_argument("drift_constant: dimension mismatch");
  if (!(gamma >= 0.0)) throw ConfigError("drift_constant: gamma must be >= 0");
  double sum_beta = 0.0;
  for (double b : beta) sum_beta += b;
  const double c_max = static_cast<double>(channel.c_max);
  return 4.0 * gamma * c_max * sum_beta + alpha_weighted_second_moments(alpha, channel, arrivals);
}

double queue_bound(double drift_b, double eps_add) {
  if (!(eps_add > 0.0)) throw ConfigError("queue bound requires a positive additive margin");
  return drift_b / (2.0 * eps_add);
}

double lyapunov_w(std::span<const std::int64_t> q, std::span<const std::int64_t> t,
                  std::span<const double> alpha, std::span<const double> beta, double gamma,
                  std::int64_t c_max) {
  const std::size_t n = q.size();
  if (t.size() != n || alpha.size() != n || beta.size() != n)
    throw std::invalid_argument("lyapunov_w: dimension mismatch");
  double w = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    const double ql = static_cast<double>(q[l]);
    w += alpha[l] * ql * ql;
    w += 4.0 * gamma * static_cast<double>(c_max) * beta[l] * static_cast<double>(t[l]);
  }
  return w;
}

PeriodicService lemma1_oracle(std::uint64_t period) {
  if (period == 0) throw std::invalid_argument("lemma1_oracle: period must be >= 1");
  return {(static_cast<double>(period) - 1.0) / 2.0, 1.0};
}

std::optional<double> symmetric_boundary(const TopologySpec& topology,
                                         const ChannelModel& channel) {
  if (channel.link.empty()) return std::nullopt;
  for (const auto& d : channel.link)
    if (!(d == channel.link.front())) return std::nullopt;
  const DiscreteDist& d = channel.link.front();

  const bool constant = d.values.size() == 1;
  const bool on_off = d.values.size() == 2 && d.values[0] == 0;
  const double c = static_cast<double>(d.max_value());
  if (c <= 0.0) return std::nullopt;

  switch (topology.kind) {
    case TopologyKind::SingleHop: {
      const double links = static_cast<double>(topology.num_links());
      if (constant) return c / links;
      if (on_off) {
        const double q = d.probs[1];
        return c * (1.0 - std::pow(1.0 - q, links)) / links;
      }
      return std::nullopt;
    }
    case TopologyKind::Switch:
      if (constant) return c / static_cast<double>(topology.ports);
      return std::nullopt;
    case TopologyKind::ConflictGraph:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace rsgsim
