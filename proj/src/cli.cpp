// Subcommand bodies: load config, run the engine, write CSV / stdout.

#include "rsgsim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "rsgsim/bounds.hpp"
#include "rsgsim/config_io.hpp"
#include "rsgsim/csv.hpp"
#include "rsgsim/engine.hpp"
#include "rsgsim/model.hpp"
#include "rsgsim/schedule_space.hpp"

namespace rsgsim::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SimConfig load(const std::string& path, const Overrides& ov) {
  SimConfig cfg = parse_config_file(path);
  if (ov.seed) cfg.run.seed = *ov.seed;
  if (ov.horizon) cfg.run.horizon = *ov.horizon;
  if (ov.warmup) cfg.run.warmup = *ov.warmup;
  if (ov.replications) cfg.run.replications = *ov.replications;
  return validate_config(cfg);
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}

std::string opt_fmt(const Estimate& e) { return e.n == 0 ? "nan" : csv::fmt(e.mean); }

void write_run_csv(const std::string& path, const SimConfig& cfg, const AggregateStats& agg) {
  const csv::Row header = {"link",        "mean_q",     "std_q",
                           "mean_t",      "e_i",        "e_i2",
                           "norm_i2",     "var_i",      "p_service",
                           "mean_unused", "mean_departed",
                           "regularity_metric", "weighted_norm_i2", "sum_alpha_meanq",
                           "lemma1_residual_max", "lemma2_r1", "lemma2_r2"};
  std::vector<csv::Row> rows;
  double total_mean_t = 0.0, total_departed = 0.0;
  for (std::size_t l = 0; l < agg.link.size(); ++l) {
    const LinkAggregate& la = agg.link[l];
    total_mean_t += la.mean_t.mean;
    total_departed += la.mean_departed.mean;
    rows.push_back({std::to_string(l), csv::fmt(la.mean_q.mean), csv::fmt(la.std_q.mean),
                    csv::fmt(la.mean_t.mean), opt_fmt(la.e_i), opt_fmt(la.e_i2),
                    opt_fmt(la.norm_i2), opt_fmt(la.var_i), csv::fmt(la.p_service.mean),
                    csv::fmt(la.mean_unused.mean), csv::fmt(la.mean_departed.mean),
                    "", "", "", "", "", ""});
  }
  rows.push_back({"total", csv::fmt(agg.total_mean_q.mean), "", csv::fmt(total_mean_t), "", "",
                  "", "", "", csv::fmt(agg.total_mean_unused.mean), csv::fmt(total_departed),
                  csv::fmt(agg.regularity_metric.mean), csv::fmt(agg.weighted_norm_i2.mean),
                  csv::fmt(agg.sum_alpha_mean_q.mean), csv::fmt(agg.lemma1_residual_max),
                  csv::fmt(agg.lemma2.r1_rel), csv::fmt(agg.lemma2.r2_rel)});
  (void)cfg;
  csv::write_file(path, header, rows);
}

}  // namespace

std::vector<double> parse_gamma_spec(const std::string& spec) {
  std::vector<double> out;
  if (spec.rfind("pow2:", 0) == 0) {
    const std::string range = spec.substr(5);
    const auto dots = range.find("..");
    if (dots == std::string::npos)
      throw ConfigError("gamma spec: pow2 form is pow2:<lo>..<hi> with integer exponents");
    int lo = 0, hi = 0;
    try {
      std::size_t used = 0;
      lo = std::stoi(range.substr(0, dots), &used);
      if (used != dots) throw std::invalid_argument("trailing");
      const std::string hi_str = range.substr(dots + 2);
      hi = std::stoi(hi_str, &used);
      if (used != hi_str.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("gamma spec: could not parse pow2 exponents in '" + spec + "'");
    }
    if (lo > hi) throw ConfigError("gamma spec: pow2 exponent range is empty");
    if (hi - lo > 128) throw ConfigError("gamma spec: pow2 exponent range too wide");
    for (int e = lo; e <= hi; ++e) out.push_back(std::ldexp(1.0, e));
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // trim blanks
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing");
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("gamma spec: could not parse value '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("gamma spec: the gamma list is empty");
  return out;
}

int cmd_run(const std::string& config_path, const std::string& out_path, const Overrides& ov) {
  return guarded([&] {
    const SimConfig cfg = load(config_path, ov);
    const AggregateStats agg = run_experiment(cfg, ov.jobs);
    write_run_csv(out_path, cfg, agg);
    return 0;
  });
}

int cmd_sweep(const std::string& config_path, const std::string& gamma_spec,
              const std::string& out_path, const Overrides& ov) {
  return guarded([&] {
    const SimConfig cfg = load(config_path, ov);
    const std::vector<double> gammas = parse_gamma_spec(gamma_spec);
    const std::vector<SweepRow> sweep = sweep_gamma(cfg, gammas, ov.jobs);
    const csv::Row header = {"gamma",
                             "total_mean_q",
                             "total_mean_q_stderr",
                             "regularity_metric",
                             "regularity_metric_stderr",
                             "lower_bound",
                             "upper_bound_measuredH",
                             "upper_bound_conservative"};
    std::vector<csv::Row> rows;
    for (const SweepRow& r : sweep)
      rows.push_back({csv::fmt(r.gamma), csv::fmt(r.total_mean_q.mean),
                      csv::fmt(r.total_mean_q.se), csv::fmt(r.regularity_metric.mean),
                      csv::fmt(r.regularity_metric.se), csv::fmt(r.lower_bound),
                      csv::fmt(r.upper_bound_measured_h), csv::fmt(r.upper_bound_conservative)});
    csv::write_file(out_path, header, rows);
    return 0;
  });
}

namespace {

// Paired common-random-number delta: per-replication differences of one
// scalar, returned as (mean, stderr of the mean).
Estimate paired_delta(const std::vector<RunStats>& a, const std::vector<RunStats>& b,
                      const std::function<double(const RunStats&)>& field) {
  std::vector<double> diffs;
  for (std::size_t r = 0; r < a.size() && r < b.size(); ++r)
    diffs.push_back(field(b[r]) - field(a[r]));
  Estimate e;
  e.n = static_cast<std::uint32_t>(diffs.size());
  if (diffs.empty()) return e;
  double sum = 0.0;
  for (double d : diffs) sum += d;
  e.mean = sum / static_cast<double>(diffs.size());
  if (diffs.size() >= 2) {
    double ss = 0.0;
    for (double d : diffs) ss += (d - e.mean) * (d - e.mean);
    e.se = std::sqrt(ss / (static_cast<double>(diffs.size()) * (diffs.size() - 1.0)));
  }
  return e;
}

std::string delta_fmt(const Estimate& a, const Estimate& b) {
  if (a.n == 0 || b.n == 0) return "nan";
  return csv::fmt(b.mean - a.mean);
}

}  // namespace

int cmd_compare(const std::string& config_a, const std::string& config_b,
                const std::string& out_path, const Overrides& ov) {
  return guarded([&] {
    const SimConfig a = load(config_a, ov);
    const SimConfig b = load(config_b, ov);
    if (!(a.topology == b.topology) || !(a.channel == b.channel) ||
        !(a.arrivals == b.arrivals) || !(a.run == b.run))
      throw ConfigError("compare: configs must be identical outside the policy section");
    const AggregateStats ra = run_experiment(a, ov.jobs);
    const AggregateStats rb = run_experiment(b, ov.jobs);

    const csv::Row header = {"link",
                             "mean_q_a", "mean_q_b", "mean_q_delta",
                             "std_q_a", "std_q_b", "std_q_delta",
                             "var_i_a", "var_i_b", "var_i_delta",
                             "norm_i2_a", "norm_i2_b", "norm_i2_delta",
                             "mean_unused_a", "mean_unused_b", "mean_unused_delta",
                             "mean_unused_delta_stderr"};
    std::vector<csv::Row> rows;
    for (std::size_t l = 0; l < ra.link.size(); ++l) {
      const LinkAggregate& la = ra.link[l];
      const LinkAggregate& lb = rb.link[l];
      const Estimate du = paired_delta(ra.per_rep, rb.per_rep, [l](const RunStats& r) {
        return r.link[l].mean_unused;
      });
      rows.push_back({std::to_string(l),
                      csv::fmt(la.mean_q.mean), csv::fmt(lb.mean_q.mean),
                      delta_fmt(la.mean_q, lb.mean_q),
                      csv::fmt(la.std_q.mean), csv::fmt(lb.std_q.mean),
                      delta_fmt(la.std_q, lb.std_q),
                      opt_fmt(la.var_i), opt_fmt(lb.var_i), delta_fmt(la.var_i, lb.var_i),
                      opt_fmt(la.norm_i2), opt_fmt(lb.norm_i2),
                      delta_fmt(la.norm_i2, lb.norm_i2),
                      csv::fmt(la.mean_unused.mean), csv::fmt(lb.mean_unused.mean),
                      delta_fmt(la.mean_unused, lb.mean_unused), csv::fmt(du.se)});
    }
    const Estimate dtotal = paired_delta(ra.per_rep, rb.per_rep, [](const RunStats& r) {
      double total = 0.0;
      for (const auto& ls : r.link) total += ls.mean_unused;
      return total;
    });
    rows.push_back({"total",
                    csv::fmt(ra.total_mean_q.mean), csv::fmt(rb.total_mean_q.mean),
                    delta_fmt(ra.total_mean_q, rb.total_mean_q),
                    "", "", "", "", "", "", "", "", "",
                    csv::fmt(ra.total_mean_unused.mean), csv::fmt(rb.total_mean_unused.mean),
                    delta_fmt(ra.total_mean_unused, rb.total_mean_unused), csv::fmt(dtotal.se)});
    csv::write_file(out_path, header, rows);
    return 0;
  });
}

int cmd_bounds(const std::string& config_path, const Overrides& ov) {
  return guarded([&] {
    const SimConfig cfg = load(config_path, ov);
    const ScheduleSet schedules = build_schedules(cfg.topology);
    const std::vector<double> lambda = cfg.arrivals.means();
    const CapacityMargin margin = capacity_margin(lambda, schedules, cfg.channel);
    const double b = drift_constant(cfg.policy.alpha, cfg.policy.beta, cfg.policy.gamma,
                                    cfg.channel, cfg.arrivals);
    const double lower = regularity_lower_bound(lambda, cfg.policy.beta, schedules);
    const auto sym = symmetric_boundary(cfg.topology, cfg.channel);

    std::cout << "links = " << schedules.num_links << '\n'
              << "schedules = " << schedules.size() << '\n'
              << "additive_margin = " << csv::fmt(margin.additive_eps) << '\n'
              << "multiplicative_margin = " << csv::fmt(margin.multiplicative_eps) << '\n'
              << "drift_constant_B = " << csv::fmt(b) << '\n'
              << "queue_bound = "
              << csv::fmt(margin.additive_eps > 0 ? queue_bound(b, margin.additive_eps) : kNaN)
              << '\n'
              << "regularity_lower_bound = " << csv::fmt(lower) << '\n'
              << "symmetric_boundary_rate = " << (sym ? csv::fmt(*sym) : "n/a") << '\n';
    if (!margin.inside()) {
      std::cerr << "arrival rates lie outside the capacity region\n";
      return 3;
    }
    return 0;
  });
}

}  // namespace rsgsim::cli
