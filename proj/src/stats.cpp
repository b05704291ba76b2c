// Post-warmup accumulation and the identity residuals.

#include "rsgsim/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace rsgsim {

StatsAccumulator::StatsAccumulator(std::size_t num_links, std::uint64_t warmup,
                                   std::uint64_t horizon)
    : links_(num_links), warmup_(warmup) {
  if (warmup >= horizon)
    throw std::invalid_argument("StatsAccumulator: warmup must be smaller than horizon");
  second_half_start_ = warmup + (horizon - warmup) / 2;
}

void StatsAccumulator::record_slot(std::uint64_t slot, std::span<const std::int64_t> q,
                                   std::span<const std::int64_t> t,
                                   std::span<const std::uint8_t> service_event,
                                   std::span<const std::int64_t> unused,
                                   std::span<const std::int64_t> departed) {
  const std::size_t n = links_.size();
  if (q.size() != n || t.size() != n || service_event.size() != n || unused.size() != n ||
      departed.size() != n)
    throw std::invalid_argument("record_slot: dimension mismatch");
  if (slot < warmup_) throw std::invalid_argument("record_slot: slot inside warmup window");

  const bool second_half = slot >= second_half_start_;
  for (std::size_t l = 0; l < n; ++l) {
    PerLink& pl = links_[l];
    const auto uq = static_cast<std::uint64_t>(q[l]);
    const auto ut = static_cast<std::uint64_t>(t[l]);
    pl.sum_q += uq;
    pl.sum_q2 += static_cast<unsigned __int128>(uq) * uq;
    pl.sum_t += ut;
    pl.sum_t2 += static_cast<unsigned __int128>(ut) * ut;
    pl.sum_unused += static_cast<std::uint64_t>(unused[l]);
    pl.sum_departed += static_cast<std::uint64_t>(departed[l]);
    if (second_half) sum_q_total_second_half_ += uq;
    if (service_event[l]) {
      ++pl.service_events;
      pl.served_t_sum += ut;
      pl.served_t2_sum += static_cast<unsigned __int128>(ut) * ut;
      if (pl.armed) {
        const std::uint64_t gap = slot - pl.last_service_slot;
        ++pl.samples;
        pl.i_sum += gap;
        pl.i2_sum += static_cast<unsigned __int128>(gap) * gap;
      }
      pl.armed = true;  // first event only opens the window
      pl.last_service_slot = slot;
    }
  }
  ++slots_;
  if (second_half) ++slots_second_half_;
}

RunStats StatsAccumulator::finalize(std::span<const double> lambda,
                                    std::span<const double> alpha,
                                    std::span<const double> beta) const {
  const std::size_t n = links_.size();
  if (lambda.size() != n || alpha.size() != n || beta.size() != n)
    throw std::invalid_argument("finalize: dimension mismatch");
  if (slots_ == 0) throw std::logic_error("finalize: no slots recorded");

  RunStats run;
  run.slots_counted = slots_;
  run.link.resize(n);
  const double slots = static_cast<double>(slots_);
  for (std::size_t l = 0; l < n; ++l) {
    const PerLink& pl = links_[l];
    LinkStats& ls = run.link[l];
    ls.mean_q = static_cast<double>(pl.sum_q) / slots;
    const double eq2 = static_cast<double>(pl.sum_q2) / slots;
    const double varq = eq2 - ls.mean_q * ls.mean_q;
    ls.std_q = varq > 0.0 ? std::sqrt(varq) : 0.0;
    ls.mean_t = static_cast<double>(pl.sum_t) / slots;
    ls.mean_t2 = static_cast<double>(pl.sum_t2) / slots;
    ls.p_service = static_cast<double>(pl.service_events) / slots;
    ls.mean_unused = static_cast<double>(pl.sum_unused) / slots;
    ls.mean_departed = static_cast<double>(pl.sum_departed) / slots;
    ls.service_events = pl.service_events;
    ls.inter_service_samples = pl.samples;
    if (pl.samples > 0) {
      const double m = static_cast<double>(pl.samples);
      const double ei = static_cast<double>(pl.i_sum) / m;
      const double ei2 = static_cast<double>(pl.i2_sum) / m;
      ls.e_i = ei;
      ls.e_i2 = ei2;
      ls.norm_i2 = ei2 / (ei * ei);
      ls.var_i = ei2 - ei * ei;
    }

    run.sum_alpha_mean_q += alpha[l] * ls.mean_q;
    run.total_mean_q += ls.mean_q;
    const double bl = beta[l] * lambda[l];
    run.regularity_metric += bl * ls.mean_t;
    if (ls.norm_i2) run.weighted_norm_i2 += bl * *ls.e_i * *ls.norm_i2;
    run.h_beta_lambda += bl * (static_cast<double>(pl.service_events) / slots);
    run.h_beta_lambda_t += bl * (static_cast<double>(pl.served_t_sum) / slots);
    run.h_beta_lambda_t2 += bl * (static_cast<double>(pl.served_t2_sum) / slots);
    run.h_beta += beta[l] * (static_cast<double>(pl.service_events) / slots);
  }
  run.total_mean_q_second_half =
      slots_second_half_ > 0
          ? static_cast<double>(sum_q_total_second_half_) / static_cast<double>(slots_second_half_)
          : 0.0;
  return run;
}

namespace {

double rel_residual(double lhs, double rhs) {
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  return denom > 0.0 ? std::abs(lhs - rhs) / denom : 0.0;
}

}  // namespace

Lemma2Residuals lemma2_residuals(const RunStats& run, std::span<const double> lambda,
                                 std::span<const double> beta) {
  if (lambda.size() != run.link.size() || beta.size() != run.link.size())
    throw std::invalid_argument("lemma2_residuals: dimension mismatch");
  double sum_bl = 0.0;
  double weighted_mean_t = 0.0;
  for (std::size_t l = 0; l < run.link.size(); ++l) {
    sum_bl += beta[l] * lambda[l];
    weighted_mean_t += beta[l] * lambda[l] * run.link[l].mean_t;
  }
  Lemma2Residuals r;
  const double lhs1 = run.h_beta_lambda_t;
  const double rhs1 = sum_bl - run.h_beta_lambda;
  r.r1_abs = std::abs(lhs1 - rhs1);
  r.r1_rel = rel_residual(lhs1, rhs1);
  const double lhs2 = 2.0 * weighted_mean_t;
  const double rhs2 = sum_bl - run.h_beta_lambda + run.h_beta_lambda_t2;
  r.r2_abs = std::abs(lhs2 - rhs2);
  r.r2_rel = rel_residual(lhs2, rhs2);
  return r;
}

std::optional<double> lemma1_residual(const LinkStats& link, std::uint64_t min_samples) {
  if (!link.e_i || link.inter_service_samples < std::max<std::uint64_t>(min_samples, 1))
    return std::nullopt;
  const double predicted = 0.5 * (*link.e_i2 / *link.e_i - 1.0);
  return std::abs(link.mean_t - predicted) / std::max(link.mean_t, 1.0);
}

}  // namespace rsgsim
