#include <doctest.h>

#include <cmath>
#include <vector>

#include "rsgsim/engine.hpp"
#include "rsgsim/model.hpp"
#include "rsgsim/types.hpp"

using namespace rsgsim;

namespace {

SimConfig symmetric_config(std::size_t links, double lambda, PolicyKind kind, double gamma,
                           std::uint64_t horizon, std::uint64_t warmup, std::uint32_t reps) {
  SimConfig cfg;
  cfg.topology = {TopologyKind::SingleHop, links, 0, {}};
  cfg.channel = make_channel(std::vector<DiscreteDist>(links, DiscreteDist::constant(1)));
  cfg.arrivals = make_arrivals(std::vector<DiscreteDist>(links, DiscreteDist::bernoulli(lambda)));
  cfg.policy.kind = kind;
  cfg.policy.gamma = gamma;
  cfg.run = {horizon, warmup, 7, reps};
  return validate_config(cfg);
}

}  // namespace

TEST_CASE("replications are deterministic in (config, seed)") {
  const SimConfig cfg = symmetric_config(4, 0.225, PolicyKind::Rsg, 1.0, 20000, 1000, 1);
  const RunStats a = run_replication(cfg, 12345);
  const RunStats b = run_replication(cfg, 12345);
  CHECK(a == b);
  const RunStats c = run_replication(cfg, 12346);
  CHECK(a != c);
}

TEST_CASE("parallel and serial replication runs agree bit for bit") {
  const SimConfig cfg = symmetric_config(4, 0.225, PolicyKind::Rsg, 1.0, 20000, 1000, 6);
  const AggregateStats serial = run_experiment(cfg, 1);
  const AggregateStats parallel = run_experiment(cfg, 4);
  REQUIRE(serial.per_rep.size() == 6);
  CHECK(serial.per_rep == parallel.per_rep);
  CHECK(serial.total_mean_q.mean == parallel.total_mean_q.mean);
  CHECK(serial.total_mean_q.se == parallel.total_mean_q.se);
  CHECK(serial.regularity_metric.mean == parallel.regularity_metric.mean);
}

TEST_CASE("zero TSLS weight reproduces the queue-weighted scheduler exactly") {
  SimConfig mws = symmetric_config(4, 0.2, PolicyKind::MaxWeight, 0.0, 30000, 1000, 3);
  SimConfig rsg0 = mws;
  rsg0.policy.kind = PolicyKind::Rsg;
  rsg0.policy.gamma = 0.0;
  const AggregateStats a = run_experiment(mws, 1);
  const AggregateStats b = run_experiment(validate_config(rsg0), 1);
  CHECK(a.per_rep == b.per_rep);
}

TEST_CASE("single saturated link is served every slot") {
  SimConfig cfg;
  cfg.topology = {TopologyKind::SingleHop, 1, 0, {}};
  cfg.channel = make_channel({DiscreteDist::constant(1)});
  cfg.arrivals = make_arrivals({DiscreteDist::constant(1)});
  cfg.policy.kind = PolicyKind::MaxWeight;
  cfg.run = {5000, 100, 1, 2};
  const AggregateStats agg = run_experiment(validate_config(cfg), 1);
  const LinkAggregate& l = agg.link[0];
  CHECK(l.mean_q.mean == 0.0);
  CHECK(l.mean_t.mean == 0.0);
  CHECK(l.p_service.mean == 1.0);
  CHECK(l.norm_i2.mean == 1.0);  // every inter-service gap is exactly one slot
  CHECK(l.var_i.mean == 0.0);
  CHECK(l.mean_departed.mean == 1.0);
  CHECK(l.mean_unused.mean == 0.0);
}

TEST_CASE("round robin service probability matches channel availability") {
  SimConfig cfg;
  cfg.topology = {TopologyKind::SingleHop, 2, 0, {}};
  cfg.channel = make_channel(std::vector<DiscreteDist>(2, DiscreteDist::on_off(1, 0.7)));
  cfg.arrivals = make_arrivals(std::vector<DiscreteDist>(2, DiscreteDist::bernoulli(0.1)));
  cfg.policy.kind = PolicyKind::RoundRobin;
  cfg.run = {200000, 1000, 3, 2};
  const AggregateStats agg = run_experiment(validate_config(cfg), 1);
  // Each link is scheduled every other slot; a service event needs the
  // channel on. Expected rate = 0.5 * 0.7.
  CHECK(agg.link[0].p_service.mean == doctest::Approx(0.35).epsilon(0.05));
  CHECK(agg.link[1].p_service.mean == doctest::Approx(0.35).epsilon(0.05));
}

TEST_CASE("stable systems depart at the arrival rate") {
  const SimConfig cfg = symmetric_config(4, 0.225, PolicyKind::Rsg, 1.0, 200000, 5000, 2);
  const AggregateStats agg = run_experiment(cfg, 1);
  for (LinkId l = 0; l < 4; ++l) {
    CHECK(agg.link[l].mean_departed.mean == doctest::Approx(0.225).epsilon(0.03));
  }
  // No queue drift: the second-half average stays comparable to the full
  // average rather than growing without bound.
  for (const RunStats& rep : agg.per_rep) {
    CHECK(rep.total_mean_q_second_half <= 2.0 * rep.total_mean_q + 1.0);
  }
}

TEST_CASE("symmetric links are statistically exchangeable") {
  SimConfig cfg = symmetric_config(4, 0.225, PolicyKind::Rsg, 1.0, 150000, 5000, 16);
  cfg.policy.tie_rule = TieRule::SeededUniform;  // lowest-index ties favor low links
  const AggregateStats agg = run_experiment(cfg, 0);
  for (LinkId i = 0; i < 4; ++i) {
    for (LinkId j = i + 1; j < 4; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      const double dq = std::abs(agg.link[i].mean_q.mean - agg.link[j].mean_q.mean);
      const double sq =
          std::sqrt(agg.link[i].mean_q.se * agg.link[i].mean_q.se +
                    agg.link[j].mean_q.se * agg.link[j].mean_q.se);
      CHECK(dq <= 3.5 * sq);
      const double dt = std::abs(agg.link[i].mean_t.mean - agg.link[j].mean_t.mean);
      const double st =
          std::sqrt(agg.link[i].mean_t.se * agg.link[i].mean_t.se +
                    agg.link[j].mean_t.se * agg.link[j].mean_t.se);
      CHECK(dt <= 3.5 * st);
    }
  }
}

TEST_CASE("standard errors need at least two replications") {
  const SimConfig cfg = symmetric_config(2, 0.2, PolicyKind::MaxWeight, 0.0, 5000, 100, 1);
  const AggregateStats agg = run_experiment(cfg, 1);
  CHECK(agg.total_mean_q.n == 1);
  CHECK(std::isnan(agg.total_mean_q.se));
  CHECK_FALSE(std::isnan(agg.total_mean_q.mean));
}

TEST_CASE("gamma sweep rows reproduce standalone runs") {
  SimConfig base = symmetric_config(4, 0.225, PolicyKind::Rsg, 1.0, 30000, 1000, 3);
  const std::vector<double> gammas{0.0, 1.0};
  const std::vector<SweepRow> rows = sweep_gamma(base, gammas, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].gamma == 0.0);
  CHECK(rows[1].gamma == 1.0);

  // gamma = 0 row == plain queue-weighted scheduler run.
  SimConfig mws = base;
  mws.policy.kind = PolicyKind::MaxWeight;
  mws.policy.gamma = 0.0;
  const AggregateStats mws_agg = run_experiment(validate_config(mws), 1);
  CHECK(rows[0].total_mean_q.mean == mws_agg.total_mean_q.mean);
  CHECK(rows[0].regularity_metric.mean == mws_agg.regularity_metric.mean);

  // gamma = 1 row == the base config run.
  const AggregateStats rsg_agg = run_experiment(base, 1);
  CHECK(rows[1].total_mean_q.mean == rsg_agg.total_mean_q.mean);
  CHECK(rows[1].regularity_metric.mean == rsg_agg.regularity_metric.mean);
}

TEST_CASE("sweep rows carry regularity bounds") {
  SimConfig base = symmetric_config(4, 0.225, PolicyKind::Rsg, 1.0, 20000, 1000, 2);
  const std::vector<SweepRow> rows = sweep_gamma(base, {0.0, 2.0}, 1);
  // Policy-independent lower bound: same on every row. For this symmetric
  // config it evaluates to 1.35.
  CHECK(rows[0].lower_bound == doctest::Approx(1.35));
  CHECK(rows[1].lower_bound == doctest::Approx(1.35));
  // Upper bounds need gamma > 0.
  CHECK(std::isnan(rows[0].upper_bound_measured_h));
  CHECK(std::isnan(rows[0].upper_bound_conservative));
  CHECK(std::isfinite(rows[1].upper_bound_measured_h));
  CHECK(std::isfinite(rows[1].upper_bound_conservative));
  CHECK(rows[1].upper_bound_measured_h <= rows[1].upper_bound_conservative);
}
