// Two-phase primal simplex on a dense tableau. Dantzig pricing with a
// switch to Bland's rule after a while, which guarantees termination.

#include "rsgsim/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsgsim::lp {

namespace {

constexpr double kTol = 1e-9;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Tableau {
  std::size_t rows = 0, cols = 0;            // cols excludes the rhs column
  std::vector<std::vector<double>> t;        // rows x (cols + 1)
  std::vector<double> obj;                   // cols + 1; obj[cols] = -objective
  std::vector<std::size_t> basis;            // basic column per row

  void pivot(std::size_t r, std::size_t e) {
    const double pv = t[r][e];
    for (double& v : t[r]) v /= pv;
    t[r][e] = 1.0;  // kill rounding on the pivot itself
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = t[i][e];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
      t[i][e] = 0.0;
    }
    const double f = obj[e];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[r][j];
      obj[e] = 0.0;
    }
    basis[r] = e;
  }

  // Reduced-cost row for minimizing `cost` over the current basis.
  void price_out(const std::vector<double>& cost) {
    obj.assign(cols + 1, 0.0);
    for (std::size_t j = 0; j < cols; ++j) obj[j] = cost[j];
    for (std::size_t i = 0; i < rows; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= cb * t[i][j];
    }
  }

  Status iterate(const std::vector<char>& allowed) {
    constexpr std::size_t kBlandAfter = 5000;
    constexpr std::size_t kCap = 200000;
    for (std::size_t iters = 0; iters < kCap; ++iters) {
      std::size_t e = kNone;
      if (iters < kBlandAfter) {
        double best = -kTol;
        for (std::size_t j = 0; j < cols; ++j)
          if (allowed[j] && obj[j] < best) {
            best = obj[j];
            e = j;
          }
      } else {  // Bland: first improving column
        for (std::size_t j = 0; j < cols; ++j)
          if (allowed[j] && obj[j] < -kTol) {
            e = j;
            break;
          }
      }
      if (e == kNone) return Status::Optimal;

      std::size_t r = kNone;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i][e] <= kTol) continue;
        const double ratio = t[i][cols] / t[i][e];
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && (r == kNone || basis[i] < basis[r]))) {
          if (ratio < best_ratio) best_ratio = ratio;
          r = i;
        }
      }
      if (r == kNone) return Status::Unbounded;
      pivot(r, e);
    }
    return Status::IterationLimit;
  }
};

}  // namespace

Solution solve(const Problem& p) {
  const std::size_t m = p.a.size();
  const std::size_t n = p.num_vars;
  if (p.b.size() != m || p.relation.size() != m || p.c.size() != n)
    throw std::invalid_argument("lp::solve: inconsistent problem sizes");
  for (const auto& row : p.a)
    if (row.size() != n) throw std::invalid_argument("lp::solve: constraint row size mismatch");

  // Row normalization: b >= 0.
  std::vector<std::vector<double>> a = p.a;
  std::vector<double> b = p.b;
  std::vector<int> rel = p.relation;
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0.0) {
      for (double& v : a[i]) v = -v;
      b[i] = -b[i];
      rel[i] = -rel[i];
    }

  // Column layout: structural | slack/surplus | artificial.
  std::vector<std::size_t> slack_col(m, kNone), art_col(m, kNone);
  std::size_t ncols = n;
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != 0) slack_col[i] = ncols++;
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != -1) art_col[i] = ncols++;  // >= and == rows need an artificial

  Tableau tab;
  tab.rows = m;
  tab.cols = ncols;
  tab.t.assign(m, std::vector<double>(ncols + 1, 0.0));
  tab.basis.assign(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = a[i][j];
    tab.t[i][ncols] = b[i];
    if (rel[i] == -1) tab.t[i][slack_col[i]] = 1.0;
    if (rel[i] == 1) tab.t[i][slack_col[i]] = -1.0;
    if (art_col[i] != kNone) tab.t[i][art_col[i]] = 1.0;
    tab.basis[i] = rel[i] == -1 ? slack_col[i] : art_col[i];
  }

  std::vector<char> is_artificial(ncols, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (art_col[i] != kNone) is_artificial[art_col[i]] = 1;

  Solution sol;

  // Phase 1: minimize the artificial total.
  bool any_artificial = false;
  for (std::size_t i = 0; i < m; ++i) any_artificial |= art_col[i] != kNone;
  std::vector<char> allowed(ncols, 1);
  for (std::size_t j = 0; j < ncols; ++j) allowed[j] = !is_artificial[j];
  if (any_artificial) {
    std::vector<double> cost1(ncols, 0.0);
    for (std::size_t j = 0; j < ncols; ++j)
      if (is_artificial[j]) cost1[j] = 1.0;
    tab.price_out(cost1);
    const Status st = tab.iterate(allowed);
    if (st != Status::Optimal) {
      sol.status = st == Status::Unbounded ? Status::Infeasible : st;
      return sol;
    }
    if (-tab.obj[ncols] > 1e-7) {  // leftover artificial mass
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_artificial[tab.basis[i]]) continue;
      for (std::size_t j = 0; j < ncols; ++j)
        if (!is_artificial[j] && std::abs(tab.t[i][j]) > 1e-7) {
          tab.pivot(i, j);
          break;
        }
      // A row that stays artificial is redundant; its rhs is ~0.
    }
    // Scrub rounding dust so later ratio tests see clean right-hand sides.
    for (std::size_t i = 0; i < m; ++i)
      if (tab.t[i][ncols] < 0.0 && tab.t[i][ncols] > -1e-9) tab.t[i][ncols] = 0.0;
  }

  // Phase 2: minimize -c (i.e. maximize c).
  std::vector<double> cost2(ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost2[j] = -p.c[j];
  tab.price_out(cost2);
  sol.status = tab.iterate(allowed);
  if (sol.status != Status::Optimal) return sol;

  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] < n) sol.x[tab.basis[i]] = std::max(0.0, tab.t[i][ncols]);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += p.c[j] * sol.x[j];
  return sol;
}

}  // namespace rsgsim::lp
