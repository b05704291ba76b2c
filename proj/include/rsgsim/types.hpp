#pragma once
// Core domain types shared by every module of the simulator.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsgsim {

using LinkId = std::size_t;

// Configuration or validation problem; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Activation vector: one bit per link, 1 = link may transmit this slot.
struct ScheduleVector {
  std::vector<std::uint8_t> active;

  std::size_t size() const { return active.size(); }
  bool operator==(const ScheduleVector&) const = default;
};

enum class TopologyKind { SingleHop, Switch, ConflictGraph };

// Explicit finite set of feasible schedules (the interference model).
// Canonical order: single-hop by link index, switch matchings in
// lexicographic permutation order, conflict graphs by ascending bitmask.
struct ScheduleSet {
  std::vector<ScheduleVector> schedules;
  // Ascending active link indices per schedule; kept alongside the bit
  // vectors so hot loops can skip inactive links.
  std::vector<std::vector<LinkId>> active_links;
  TopologyKind origin = TopologyKind::SingleHop;
  std::size_t num_links = 0;
  int switch_ports = 0;  // N, only for origin == Switch

  std::size_t size() const { return schedules.size(); }
};

enum class DistKind { Constant, OnOff, Bernoulli, Bursty, General };

// Finite discrete distribution on non-negative integers. Canonical form
// (after validation): values ascending and unique, probs > 0 summing to 1.
struct DiscreteDist {
  DistKind kind = DistKind::General;
  std::vector<std::int64_t> values;
  std::vector<double> probs;

  static DiscreteDist constant(std::int64_t v);
  static DiscreteDist on_off(std::int64_t c, double q);  // value c w.p. q, else 0
  static DiscreteDist bernoulli(double lambda);          // one packet w.p. lambda
  static DiscreteDist bursty(std::int64_t k, std::int64_t scale);  // 2*k*scale w.p. 1/k, else 0
  static DiscreteDist general(std::vector<std::int64_t> values, std::vector<double> probs);

  double mean() const;
  double second_moment() const;
  std::int64_t max_value() const;
  // Inverse-CDF sample, u in [0, 1).
  std::int64_t sample(double u) const;

  bool operator==(const DiscreteDist&) const = default;
};

struct ChannelModel {
  std::vector<DiscreteDist> link;  // C_l distribution per link
  std::int64_t c_max = 0;          // max support value over links

  bool operator==(const ChannelModel&) const = default;
};

struct ArrivalModel {
  std::vector<DiscreteDist> link;  // A_l distribution per link
  std::int64_t a_max = 0;

  double mean(LinkId l) const { return link[l].mean(); }
  std::vector<double> means() const;

  bool operator==(const ArrivalModel&) const = default;
};

enum class PolicyKind { MaxWeight, Rsg, RsgVariant, RoundRobin };
enum class TieRule { LowestIndex, SeededUniform };

struct PolicySpec {
  PolicyKind kind = PolicyKind::MaxWeight;
  std::vector<double> alpha;  // per-link queue weight, > 0
  std::vector<double> beta;   // per-link regularity preference, >= 0
  double gamma = 0.0;         // common TSLS weight, >= 0
  TieRule tie_rule = TieRule::LowestIndex;

  bool operator==(const PolicySpec&) const = default;
};

// Full Markov state: queue lengths, TSLS counters, slot index.
struct SystemState {
  std::vector<std::int64_t> q;  // packets, >= 0
  std::vector<std::int64_t> t;  // slots since last service, >= 0 and <= slot
  std::uint64_t slot = 0;

  static SystemState zero(std::size_t num_links) {
    return SystemState{std::vector<std::int64_t>(num_links, 0),
                       std::vector<std::int64_t>(num_links, 0), 0};
  }
};

struct TopologySpec {
  TopologyKind kind = TopologyKind::SingleHop;
  std::size_t links = 0;  // single-hop / conflict-graph L
  int ports = 0;          // switch N; implies N*N links
  std::vector<std::pair<LinkId, LinkId>> conflict_edges;

  std::size_t num_links() const {
    return kind == TopologyKind::Switch ? static_cast<std::size_t>(ports) * ports : links;
  }

  bool operator==(const TopologySpec&) const = default;
};

struct RunSpec {
  std::uint64_t horizon = 1'000'000;
  std::uint64_t warmup = 10'000;
  std::uint64_t seed = 1;
  std::uint32_t replications = 8;

  bool operator==(const RunSpec&) const = default;
};

struct SimConfig {
  TopologySpec topology;
  ChannelModel channel;
  ArrivalModel arrivals;
  PolicySpec policy;
  RunSpec run;

  bool operator==(const SimConfig&) const = default;
};

}  // namespace rsgsim
