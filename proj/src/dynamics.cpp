// Composition of the per-link transition rules into a full slot update.

#include "rsgsim/dynamics.hpp"

#include <stdexcept>

namespace rsgsim {

void advance_slot(SystemState& state, std::span<const std::int64_t> arrivals,
                  std::span<const std::int64_t> channel, const ScheduleVector& schedule,
                  TslsMode mode, SlotOutcome& out) {
  const std::size_t n = state.q.size();
  if (state.t.size() != n || arrivals.size() != n || channel.size() != n ||
      schedule.size() != n || out.departed.size() != n || out.unused.size() != n ||
      out.service_event.size() != n)
    throw std::invalid_argument("advance_slot: dimension mismatch");

  for (std::size_t l = 0; l < n; ++l) {
    const std::int64_t q = state.q[l];
    const std::int64_t a = arrivals[l];
    const std::int64_t c = channel[l];
    const int s = schedule.active[l];
    const auto split = departures_and_unused(q, a, c, s);
    out.departed[l] = split.departed;
    out.unused[l] = split.unused;
    out.service_event[l] = c * s > 0 ? 1 : 0;
    state.q[l] = step_queue(q, a, c, s);
    // The variant freezes the counter when the link is unserved and the
    // begin-of-slot queue is empty (same queue value the scheduler saw).
    state.t[l] = mode == TslsMode::Standard ? step_tsls(state.t[l], c, s)
                                            : step_tsls_variant(state.t[l], q, c, s);
  }
  ++state.slot;
}

}  // namespace rsgsim
