// Benchmark: serial reference loop vs OpenMP fan-out over replications.
// Verifies that both paths produce bit-identical per-replication results
// before reporting the speedup.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include "rsgsim/config_io.hpp"
#include "rsgsim/engine.hpp"
#include "rsgsim/model.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

rsgsim::SimConfig default_config() {
  using namespace rsgsim;
  SimConfig cfg;
  cfg.topology = {TopologyKind::SingleHop, 4, 0, {}};
  cfg.channel = make_channel(std::vector<DiscreteDist>(4, DiscreteDist::constant(1)));
  cfg.arrivals = make_arrivals(std::vector<DiscreteDist>(4, DiscreteDist::bernoulli(0.225)));
  cfg.policy.kind = PolicyKind::Rsg;
  cfg.policy.gamma = 1.0;
  cfg.run = {500'000, 10'000, 7, 16};
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  rsgsim::SimConfig cfg;
  try {
    cfg = argc > 1 ? rsgsim::parse_config_file(argv[1]) : default_config();
    cfg = rsgsim::validate_config(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  std::cout << "replications: " << cfg.run.replications << ", horizon: " << cfg.run.horizon
            << " slots\n";

  auto t0 = std::chrono::steady_clock::now();
  const rsgsim::AggregateStats serial = rsgsim::run_experiment(cfg, 1);
  const double serial_s = seconds_since(t0);
  std::cout << "serial (jobs=1):   " << serial_s << " s\n";

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  t0 = std::chrono::steady_clock::now();
  const rsgsim::AggregateStats parallel = rsgsim::run_experiment(cfg, 0);
  const double parallel_s = seconds_since(t0);
  std::cout << "parallel (" << threads << " threads): " << parallel_s << " s\n";

  if (serial.per_rep.size() != parallel.per_rep.size()) {
    std::cerr << "MISMATCH: replication counts differ\n";
    return 1;
  }
  for (std::size_t r = 0; r < serial.per_rep.size(); ++r)
    if (!(serial.per_rep[r] == parallel.per_rep[r])) {
      std::cerr << "MISMATCH: replication " << r << " differs between paths\n";
      return 1;
    }
  std::cout << "results: bit-identical across paths\n";
  std::cout << "speedup: " << (parallel_s > 0 ? serial_s / parallel_s : 0.0) << "x\n";
  return 0;
}
