#pragma once
// Small dense linear-program solver (two-phase primal simplex). Sized for
// the capacity-region programs this project builds: at most a few
// thousand variables and rows.

#include <cstddef>
#include <vector>

namespace rsgsim::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

// maximize c·x  subject to  A[i]·x (<=|==|>=) b[i],  x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<std::vector<double>> a;  // one row per constraint, length num_vars
  std::vector<double> b;
  std::vector<int> relation;  // -1: <=, 0: ==, +1: >=
  std::vector<double> c;      // length num_vars
};

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

Solution solve(const Problem& p);

}  // namespace rsgsim::lp
