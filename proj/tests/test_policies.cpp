#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rsgsim/policies.hpp"
#include "rsgsim/schedule_space.hpp"

using namespace rsgsim;

namespace {

double schedule_value(const ScheduleSet& set, std::size_t idx, const std::vector<double>& w,
                      const std::vector<std::int64_t>& c) {
  double v = 0.0;
  for (LinkId l : set.active_links[idx]) v += w[l] * static_cast<double>(c[l]);
  return v;
}

}  // namespace

TEST_CASE("weight vectors follow their definitions") {
  std::vector<double> w;
  mws_weights(std::vector<std::int64_t>{3, 1}, std::vector<double>{2.0, 1.0}, w);
  CHECK(w == std::vector<double>{6.0, 1.0});

  rsg_weights(std::vector<std::int64_t>{3, 1}, std::vector<std::int64_t>{2, 4},
              std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 0.5}, 2.0, w);
  CHECK(w == std::vector<double>{7.0, 5.0});
}

TEST_CASE("gamma zero makes the TSLS-aware weights coincide with queue weights") {
  RngStream rng(5);
  std::vector<double> w_mws, w_rsg;
  for (int i = 0; i < 500; ++i) {
    std::vector<std::int64_t> q = {static_cast<std::int64_t>(rng.uniform_int(50)),
                                   static_cast<std::int64_t>(rng.uniform_int(50)),
                                   static_cast<std::int64_t>(rng.uniform_int(50))};
    std::vector<std::int64_t> t = {static_cast<std::int64_t>(rng.uniform_int(100)),
                                   static_cast<std::int64_t>(rng.uniform_int(100)),
                                   static_cast<std::int64_t>(rng.uniform_int(100))};
    const std::vector<double> alpha = {1.5, 2.0, 0.5};
    const std::vector<double> beta = {1.0, 3.0, 0.0};
    mws_weights(q, alpha, w_mws);
    rsg_weights(q, t, alpha, beta, 0.0, w_rsg);
    CHECK(w_mws == w_rsg);
  }
}

TEST_CASE("selection maximizes the channel-weighted schedule value") {
  const ScheduleSet hop = single_hop_schedules(3);
  const std::vector<std::int64_t> on = {1, 1, 1};
  CHECK(select_max_weight(std::vector<double>{1.0, 3.0, 2.0}, on, hop,
                          TieRule::LowestIndex) == 1);
  // A dead channel masks the heaviest queue.
  CHECK(select_max_weight(std::vector<double>{1.0, 3.0, 2.0},
                          std::vector<std::int64_t>{1, 0, 1}, hop,
                          TieRule::LowestIndex) == 2);
}

TEST_CASE("crossbar selection picks the best matching") {
  const ScheduleSet sw = switch_matchings(2);
  // Weight matrix rows (3,1),(2,4): identity matching scores 3+4=7,
  // the crossed matching 1+2=3.
  const std::vector<double> w = {3.0, 1.0, 2.0, 4.0};
  const std::vector<std::int64_t> c = {1, 1, 1, 1};
  const std::size_t pick = select_max_weight(w, c, sw, TieRule::LowestIndex);
  CHECK(sw.active_links[pick] == std::vector<LinkId>{0, 3});
}

TEST_CASE("lowest-index ties go to the first maximizer") {
  const ScheduleSet hop = single_hop_schedules(4);
  const std::vector<std::int64_t> on = {1, 1, 1, 1};
  CHECK(select_max_weight(std::vector<double>{0, 0, 0, 0}, on, hop, TieRule::LowestIndex) == 0);
  CHECK(select_max_weight(std::vector<double>{1, 2, 2, 1}, on, hop, TieRule::LowestIndex) == 1);
}

TEST_CASE("seeded ties draw uniformly among maximizers only") {
  const ScheduleSet hop = single_hop_schedules(3);
  const std::vector<std::int64_t> on = {1, 1, 1};
  const std::vector<double> w = {2.0, 2.0, 1.0};
  RngStream tie(42);
  int count0 = 0, count1 = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t pick = select_max_weight(w, on, hop, TieRule::SeededUniform, &tie);
    REQUIRE(pick < 2);  // link 2 never wins
    if (pick == 0)
      ++count0;
    else
      ++count1;
  }
  CHECK(count0 + count1 == 1000);
  CHECK(count0 > 400);  // roughly balanced
  CHECK(count1 > 400);
}

TEST_CASE("unique maxima never touch the tie stream") {
  const ScheduleSet hop = single_hop_schedules(2);
  const std::vector<std::int64_t> on = {1, 1};
  RngStream tie(11), fresh(11);
  CHECK(select_max_weight(std::vector<double>{5.0, 1.0}, on, hop, TieRule::SeededUniform,
                          &tie) == 0);
  CHECK(tie.bits() == fresh.bits());  // stream untouched by the selection
}

TEST_CASE("seeded tie rule without a stream is an error") {
  const ScheduleSet hop = single_hop_schedules(2);
  const std::vector<std::int64_t> on = {1, 1};
  CHECK_THROWS_AS(select_max_weight(std::vector<double>{1.0, 1.0}, on, hop,
                                    TieRule::SeededUniform, nullptr),
                  std::invalid_argument);
}

TEST_CASE("selection matches brute force on random draws") {
  RngStream rng(314159);
  const ScheduleSet cycle =
      conflict_graph_schedules(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  const ScheduleSet sw = switch_matchings(3);
  for (const ScheduleSet* set : {&cycle, &sw}) {
    for (int i = 0; i < 300; ++i) {
      std::vector<double> w(set->num_links);
      std::vector<std::int64_t> c(set->num_links);
      for (std::size_t l = 0; l < set->num_links; ++l) {
        w[l] = 10.0 * rng.uniform();
        c[l] = static_cast<std::int64_t>(rng.uniform_int(3));
      }
      const std::size_t pick = select_max_weight(w, c, *set, TieRule::LowestIndex);
      double best = -1.0;
      for (std::size_t k = 0; k < set->size(); ++k)
        best = std::max(best, schedule_value(*set, k, w, c));
      CHECK(schedule_value(*set, pick, w, c) == best);
    }
  }
}

TEST_CASE("round robin cycles through links regardless of channels") {
  const ScheduleSet hop = single_hop_schedules(3);
  RoundRobinState rr;
  CHECK(select_round_robin(rr, hop) == 0);
  CHECK(select_round_robin(rr, hop) == 1);
  CHECK(select_round_robin(rr, hop) == 2);
  CHECK(select_round_robin(rr, hop) == 0);
}

TEST_CASE("round robin requires a single-hop schedule set") {
  const ScheduleSet sw = switch_matchings(2);
  RoundRobinState rr;
  CHECK_THROWS_AS(select_round_robin(rr, sw), ConfigError);
}

TEST_CASE("decide dispatches by policy kind") {
  const ScheduleSet hop = single_hop_schedules(2);
  SystemState state{{0, 0}, {0, 5}, 10};
  const std::vector<std::int64_t> on = {1, 1};
  RoundRobinState rr;
  RngStream tie(3);
  std::vector<double> scratch;

  PolicySpec rsg{PolicyKind::Rsg, {1.0, 1.0}, {1.0, 1.0}, 1.0, TieRule::LowestIndex};
  CHECK(decide(rsg, state, on, hop, rr, &tie, scratch) == 1);  // TSLS pulls link 1

  PolicySpec mws{PolicyKind::MaxWeight, {1.0, 1.0}, {1.0, 1.0}, 0.0, TieRule::LowestIndex};
  CHECK(decide(mws, state, on, hop, rr, &tie, scratch) == 0);  // queue tie, lowest index

  PolicySpec rrp{PolicyKind::RoundRobin, {1.0, 1.0}, {1.0, 1.0}, 0.0, TieRule::LowestIndex};
  CHECK(decide(rrp, state, on, hop, rr, &tie, scratch) == 0);
  CHECK(decide(rrp, state, on, hop, rr, &tie, scratch) == 1);  // cursor advanced

  // The variant selects exactly like the standard TSLS-aware policy.
  PolicySpec variant = rsg;
  variant.kind = PolicyKind::RsgVariant;
  CHECK(decide(variant, state, on, hop, rr, &tie, scratch) == 1);
  CHECK(tsls_mode_of(variant) == TslsMode::Variant);
  CHECK(tsls_mode_of(rsg) == TslsMode::Standard);
  CHECK(tsls_mode_of(mws) == TslsMode::Standard);
}

TEST_CASE("weight scaling cannot change the selection") {
  RngStream rng(77);
  const ScheduleSet hop = single_hop_schedules(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> w(4);
    std::vector<std::int64_t> c(4);
    for (std::size_t l = 0; l < 4; ++l) {
      w[l] = rng.uniform() * 5.0;
      c[l] = static_cast<std::int64_t>(rng.uniform_int(2));
    }
    bool any_on = false;
    for (auto v : c) any_on = any_on || v > 0;
    if (!any_on) c[0] = 1;
    const std::size_t base = select_max_weight(w, c, hop, TieRule::LowestIndex);
    std::vector<double> scaled = w;
    for (auto& v : scaled) v *= 8.0;  // power of two: exact in floating point
    CHECK(select_max_weight(scaled, c, hop, TieRule::LowestIndex) == base);
  }
}
