// Distribution constructors/moments plus configuration validation and
// canonicalization.

#include "rsgsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rsgsim/schedule_space.hpp"

namespace rsgsim {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::string link_field(const char* section, LinkId l) {
  std::ostringstream os;
  os << section << "[" << l << "]";
  return os.str();
}

// Sorts the support, merges duplicate values, drops zero-probability
// entries, and normalizes the probabilities. Rejects negative values,
// negative probabilities, and totals not within 1e-6 of 1. Exactly
// idempotent: an already-canonical distribution is returned unchanged.
DiscreteDist canonicalize_dist(const DiscreteDist& d, const std::string& field) {
  if (d.values.empty() || d.values.size() != d.probs.size())
    fail(field + ": support and probabilities must be non-empty and equal-sized");
  std::vector<std::pair<std::int64_t, double>> entries;
  entries.reserve(d.values.size());
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (d.values[i] < 0) fail(field + ": support values must be non-negative integers");
    if (!(d.probs[i] >= 0.0) || !std::isfinite(d.probs[i]))
      fail(field + ": probabilities must be finite and non-negative");
    entries.emplace_back(d.values[i], d.probs[i]);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  DiscreteDist out;
  out.kind = d.kind;
  for (const auto& [v, p] : entries) {
    if (!out.values.empty() && out.values.back() == v)
      out.probs.back() += p;
    else if (p > 0.0) {
      out.values.push_back(v);
      out.probs.push_back(p);
    }
  }
  if (out.values.empty()) fail(field + ": distribution has no positive-probability value");
  double total = 0.0;
  for (double p : out.probs) total += p;
  if (std::abs(total - 1.0) > 1e-6) {
    std::ostringstream os;
    os << field << ": probabilities sum to " << total << ", expected 1";
    fail(os.str());
  }
  // Renormalize only when off by more than accumulated rounding, so that
  // canonicalization is a fixed point.
  if (std::abs(total - 1.0) > 1e-12)
    for (double& p : out.probs) p /= total;
  return out;
}

std::vector<double> canonical_weights(const std::vector<double>& w, std::size_t num_links,
                                      const char* name, bool strictly_positive) {
  std::vector<double> out = w;
  if (out.empty()) out.assign(num_links, 1.0);
  if (out.size() != num_links) {
    std::ostringstream os;
    os << "policy." << name << ": expected " << num_links << " entries, got " << out.size();
    fail(os.str());
  }
  for (std::size_t l = 0; l < out.size(); ++l) {
    if (!std::isfinite(out[l]) || (strictly_positive ? out[l] <= 0.0 : out[l] < 0.0)) {
      std::ostringstream os;
      os << "policy." << name << "[" << l << "]: must be finite and "
         << (strictly_positive ? "> 0" : ">= 0");
      fail(os.str());
    }
  }
  return out;
}

TopologySpec canonical_topology(const TopologySpec& t) {
  TopologySpec out = t;
  switch (t.kind) {
    case TopologyKind::SingleHop:
      if (t.links == 0) fail("topology.links: single-hop needs at least one link");
      if (!t.conflict_edges.empty())
        fail("topology.edges: only conflict-graph topologies take edges");
      out.ports = 0;
      break;
    case TopologyKind::Switch:
      if (t.ports < 1 || t.ports > 6)
        fail("topology.ports: switch port count must be between 1 and 6");
      if (!t.conflict_edges.empty())
        fail("topology.edges: only conflict-graph topologies take edges");
      out.links = static_cast<std::size_t>(t.ports) * t.ports;
      break;
    case TopologyKind::ConflictGraph: {
      if (t.links == 0 || t.links > 20)
        fail("topology.links: conflict graph size must be between 1 and 20");
      out.ports = 0;
      std::set<std::pair<LinkId, LinkId>> edges;
      for (auto [u, v] : t.conflict_edges) {
        if (u >= t.links || v >= t.links)
          fail("topology.edges: edge endpoint out of range");
        if (u == v) fail("topology.edges: self-loops are not allowed");
        edges.emplace(std::min(u, v), std::max(u, v));
      }
      out.conflict_edges.assign(edges.begin(), edges.end());
      break;
    }
  }
  return out;
}

}  // namespace

DiscreteDist DiscreteDist::constant(std::int64_t v) {
  return DiscreteDist{DistKind::Constant, {v}, {1.0}};
}

DiscreteDist DiscreteDist::on_off(std::int64_t c, double q) {
  if (q >= 1.0) return DiscreteDist{DistKind::OnOff, {c}, {1.0}};
  return DiscreteDist{DistKind::OnOff, {0, c}, {1.0 - q, q}};
}

DiscreteDist DiscreteDist::bernoulli(double lambda) {
  if (lambda >= 1.0) return DiscreteDist{DistKind::Bernoulli, {1}, {1.0}};
  return DiscreteDist{DistKind::Bernoulli, {0, 1}, {1.0 - lambda, lambda}};
}

DiscreteDist DiscreteDist::bursty(std::int64_t k, std::int64_t scale) {
  const std::int64_t burst = 2 * k * scale;
  if (k <= 1) return DiscreteDist{DistKind::Bursty, {burst}, {1.0}};
  const double p = 1.0 / static_cast<double>(k);
  return DiscreteDist{DistKind::Bursty, {0, burst}, {1.0 - p, p}};
}

DiscreteDist DiscreteDist::general(std::vector<std::int64_t> values, std::vector<double> probs) {
  return DiscreteDist{DistKind::General, std::move(values), std::move(probs)};
}

double DiscreteDist::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    m += static_cast<double>(values[i]) * probs[i];
  return m;
}

double DiscreteDist::second_moment() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = static_cast<double>(values[i]);
    m += v * v * probs[i];
  }
  return m;
}

std::int64_t DiscreteDist::max_value() const {
  std::int64_t m = 0;
  for (std::int64_t v : values) m = std::max(m, v);
  return m;
}

std::int64_t DiscreteDist::sample(double u) const {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    acc += probs[i];
    if (u < acc) return values[i];
  }
  return values.back();
}

std::vector<double> ArrivalModel::means() const {
  std::vector<double> out(link.size());
  for (std::size_t l = 0; l < link.size(); ++l) out[l] = link[l].mean();
  return out;
}

ChannelModel make_channel(std::vector<DiscreteDist> per_link) {
  ChannelModel m;
  m.link = std::move(per_link);
  for (const auto& d : m.link) m.c_max = std::max(m.c_max, d.max_value());
  return m;
}

ArrivalModel make_arrivals(std::vector<DiscreteDist> per_link) {
  ArrivalModel m;
  m.link = std::move(per_link);
  for (const auto& d : m.link) m.a_max = std::max(m.a_max, d.max_value());
  return m;
}

void validate_schedule_set(const ScheduleSet& set) {
  if (set.schedules.empty()) fail("schedule set is empty");
  if (set.active_links.size() != set.schedules.size())
    fail("schedule set: active-link lists out of sync with schedules");
  std::vector<std::uint8_t> covered(set.num_links, 0);
  std::set<std::vector<std::uint8_t>> seen;
  for (std::size_t i = 0; i < set.schedules.size(); ++i) {
    const auto& s = set.schedules[i];
    if (s.size() != set.num_links) fail("schedule set: schedule of wrong length");
    if (!seen.insert(s.active).second) fail("schedule set: duplicate schedule");
    std::vector<LinkId> active;
    for (LinkId l = 0; l < s.size(); ++l)
      if (s.active[l]) {
        covered[l] = 1;
        active.push_back(l);
      }
    if (active != set.active_links[i])
      fail("schedule set: active-link list disagrees with schedule bits");
  }
  for (LinkId l = 0; l < set.num_links; ++l)
    if (!covered[l]) fail("link " + std::to_string(l) + " appears in no feasible schedule");
}

SimConfig validate_config(const SimConfig& cfg) {
  SimConfig out = cfg;
  out.topology = canonical_topology(cfg.topology);
  const std::size_t num_links = out.topology.num_links();

  if (cfg.channel.link.size() != num_links) {
    std::ostringstream os;
    os << "channel: expected " << num_links << " per-link distributions, got "
       << cfg.channel.link.size();
    fail(os.str());
  }
  if (cfg.arrivals.link.size() != num_links) {
    std::ostringstream os;
    os << "arrivals: expected " << num_links << " per-link distributions, got "
       << cfg.arrivals.link.size();
    fail(os.str());
  }

  out.channel.link.clear();
  out.channel.c_max = 0;
  for (LinkId l = 0; l < num_links; ++l) {
    DiscreteDist d = canonicalize_dist(cfg.channel.link[l], link_field("channel", l));
    if (!(d.mean() > 0.0))
      fail(link_field("channel", l) + ": mean channel rate must be positive");
    out.channel.c_max = std::max(out.channel.c_max, d.max_value());
    out.channel.link.push_back(std::move(d));
  }
  out.arrivals.link.clear();
  out.arrivals.a_max = 0;
  for (LinkId l = 0; l < num_links; ++l) {
    DiscreteDist d = canonicalize_dist(cfg.arrivals.link[l], link_field("arrivals", l));
    if (!(d.mean() > 0.0))
      fail(link_field("arrivals", l) + ": mean arrival rate must be positive");
    out.arrivals.a_max = std::max(out.arrivals.a_max, d.max_value());
    out.arrivals.link.push_back(std::move(d));
  }

  out.policy.alpha = canonical_weights(cfg.policy.alpha, num_links, "alpha", true);
  out.policy.beta = canonical_weights(cfg.policy.beta, num_links, "beta", false);
  if (!std::isfinite(cfg.policy.gamma) || cfg.policy.gamma < 0.0)
    fail("policy.gamma: must be finite and >= 0");
  if (cfg.policy.kind == PolicyKind::RoundRobin &&
      out.topology.kind != TopologyKind::SingleHop)
    fail("policy.kind: round_robin is defined for single-hop topologies only");

  if (cfg.run.horizon == 0) fail("run.horizon: must be at least 1");
  if (cfg.run.warmup >= cfg.run.horizon) fail("run.warmup: must be smaller than run.horizon");
  if (cfg.run.replications == 0) fail("run.replications: must be at least 1");

  validate_schedule_set(build_schedules(out.topology));
  return out;
}

}  // namespace rsgsim
