// Feasible-schedule enumeration for the three supported topologies.

#include "rsgsim/schedule_space.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace rsgsim {

namespace {

void push_schedule(ScheduleSet& set, std::vector<std::uint8_t> bits) {
  ScheduleVector s{std::move(bits)};
  std::vector<LinkId> active;
  for (LinkId l = 0; l < s.size(); ++l)
    if (s.active[l]) active.push_back(l);
  set.schedules.push_back(std::move(s));
  set.active_links.push_back(std::move(active));
}

}  // namespace

ScheduleSet single_hop_schedules(std::size_t num_links) {
  if (num_links == 0) throw ConfigError("single-hop topology needs at least one link");
  ScheduleSet set;
  set.origin = TopologyKind::SingleHop;
  set.num_links = num_links;
  for (LinkId l = 0; l < num_links; ++l) {
    std::vector<std::uint8_t> bits(num_links, 0);
    bits[l] = 1;
    push_schedule(set, std::move(bits));
  }
  return set;
}

ScheduleSet switch_matchings(int ports) {
  if (ports < 1) throw ConfigError("switch needs at least one port");
  if (ports > 6)
    throw ConfigError("switch enumeration guard: at most 6 ports (" + std::to_string(ports) +
                      " requested)");
  const std::size_t n = static_cast<std::size_t>(ports);
  ScheduleSet set;
  set.origin = TopologyKind::Switch;
  set.num_links = n * n;
  set.switch_ports = ports;
  // Lexicographic order over permutations; link (input i, output j) = i*n + j.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::uint8_t> bits(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) bits[i * n + perm[i]] = 1;
    push_schedule(set, std::move(bits));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return set;
}

ScheduleSet conflict_graph_schedules(std::size_t num_links,
                                     const std::vector<std::pair<LinkId, LinkId>>& edges) {
  if (num_links == 0) throw ConfigError("conflict graph needs at least one link");
  if (num_links > 20)
    throw ConfigError("conflict graph enumeration guard: at most 20 links (" +
                      std::to_string(num_links) + " requested)");
  std::vector<std::uint32_t> adj(num_links, 0);
  for (auto [u, v] : edges) {
    if (u >= num_links || v >= num_links)
      throw ConfigError("conflict graph edge endpoint out of range");
    if (u == v) throw ConfigError("conflict graph self-loops are not allowed");
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  ScheduleSet set;
  set.origin = TopologyKind::ConflictGraph;
  set.num_links = num_links;
  const std::uint32_t all = num_links == 32 ? ~0u : (1u << num_links) - 1;
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    bool independent = true;
    for (LinkId l = 0; l < num_links && independent; ++l)
      if ((mask >> l) & 1u) independent = (adj[l] & mask) == 0;
    if (!independent) continue;
    bool maximal = true;
    for (LinkId l = 0; l < num_links && maximal; ++l)
      if (!((mask >> l) & 1u)) maximal = (adj[l] & mask) != 0;
    if (!maximal) continue;
    std::vector<std::uint8_t> bits(num_links, 0);
    for (LinkId l = 0; l < num_links; ++l) bits[l] = (mask >> l) & 1u;
    push_schedule(set, std::move(bits));
  }
  return set;
}

ScheduleSet build_schedules(const TopologySpec& topology) {
  switch (topology.kind) {
    case TopologyKind::SingleHop:
      return single_hop_schedules(topology.links);
    case TopologyKind::Switch:
      return switch_matchings(topology.ports);
    case TopologyKind::ConflictGraph:
      return conflict_graph_schedules(topology.links, topology.conflict_edges);
  }
  throw ConfigError("unknown topology kind");
}

}  // namespace rsgsim
