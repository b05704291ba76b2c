#include "markov_oracle.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rsgsim::testing {

namespace {

inline std::size_t index_of(int q0, int q1, int j, int tau, int q_max, int t_max) {
  return ((static_cast<std::size_t>(q0) * (q_max + 1) + q1) * 2 + j) *
             static_cast<std::size_t>(t_max) +
         (tau - 1);
}

}  // namespace

TwoLinkOracleResult solve_two_link_queue_weighted(double lambda0, double lambda1, int q_max,
                                                  int t_max, double tol, int max_iters) {
  if (!(lambda0 > 0.0 && lambda0 < 1.0 && lambda1 > 0.0 && lambda1 < 1.0))
    throw std::invalid_argument("oracle: lambdas must lie in (0, 1)");
  if (lambda0 + lambda1 >= 1.0)
    throw std::invalid_argument("oracle: total load must be below capacity");
  if (q_max < 2 || t_max < 2) throw std::invalid_argument("oracle: caps too small");

  const std::size_t n_states =
      static_cast<std::size_t>(q_max + 1) * (q_max + 1) * 2 * static_cast<std::size_t>(t_max);
  std::vector<double> cur(n_states, 0.0), next(n_states, 0.0);

  // Distribution after slot 0: the empty system serves link 0 (tie), so
  // q0 stays 0, q1 = A1[0], the served link is 0 and the other counter
  // is 1.
  cur[index_of(0, 0, 0, 1, q_max, t_max)] = 1.0 - lambda1;
  cur[index_of(0, 1, 0, 1, q_max, t_max)] = lambda1;

  const double arr_p[2][2] = {
      {(1.0 - lambda0) * (1.0 - lambda1), (1.0 - lambda0) * lambda1},
      {lambda0 * (1.0 - lambda1), lambda0 * lambda1},
  };

  double diff = 0.0;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int q0 = 0; q0 <= q_max; ++q0) {
      for (int q1 = 0; q1 <= q_max; ++q1) {
        const int serve = q0 >= q1 ? 0 : 1;
        for (int j = 0; j < 2; ++j) {
          for (int tau = 1; tau <= t_max; ++tau) {
            const double p = cur[index_of(q0, q1, j, tau, q_max, t_max)];
            if (p == 0.0) continue;
            const int tau_next = serve == j ? std::min(tau + 1, t_max) : 1;
            for (int a0 = 0; a0 < 2; ++a0) {
              for (int a1 = 0; a1 < 2; ++a1) {
                int nq0 = q0 + a0 - (serve == 0 ? 1 : 0);
                int nq1 = q1 + a1 - (serve == 1 ? 1 : 0);
                nq0 = std::min(std::max(nq0, 0), q_max);
                nq1 = std::min(std::max(nq1, 0), q_max);
                next[index_of(nq0, nq1, serve, tau_next, q_max, t_max)] += p * arr_p[a0][a1];
              }
            }
          }
        }
      }
    }
    diff = 0.0;
    for (std::size_t i = 0; i < n_states; ++i) diff += std::abs(next[i] - cur[i]);
    cur.swap(next);
    if (diff < tol) {
      ++iter;
      break;
    }
  }

  TwoLinkOracleResult res;
  res.iterations = iter;
  res.final_l1_diff = diff;
  for (int q0 = 0; q0 <= q_max; ++q0) {
    for (int q1 = 0; q1 <= q_max; ++q1) {
      const int serve = q0 >= q1 ? 0 : 1;
      for (int j = 0; j < 2; ++j) {
        for (int tau = 1; tau <= t_max; ++tau) {
          const double p = cur[index_of(q0, q1, j, tau, q_max, t_max)];
          if (p == 0.0) continue;
          res.mean_q0 += p * q0;
          res.mean_q1 += p * q1;
          if (j == 0)
            res.mean_t1 += p * tau;
          else
            res.mean_t0 += p * tau;
          if (q0 == q_max || q1 == q_max || tau == t_max) res.truncation_mass += p;
          // A served link departs one packet unless it is empty and also
          // receives nothing this slot.
          if (serve == 0)
            res.departure_rate0 += p * (q0 >= 1 ? 1.0 : lambda0);
          else
            res.departure_rate1 += p * (q1 >= 1 ? 1.0 : lambda1);
        }
      }
    }
  }
  return res;
}

}  // namespace rsgsim::testing
