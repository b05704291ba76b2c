#pragma once
// One-slot state transitions: queue evolution, time-since-last-service
// (TSLS) counters in both flavors, and the departed/unused split of the
// service offered to a link.

#include <cstdint>
#include <span>
#include <vector>

#include "rsgsim/types.hpp"

namespace rsgsim {

enum class TslsMode { Standard, Variant };

// Q[t+1] = max(Q[t] + A[t] - C[t] * S[t], 0).
// Arrivals in slot t can be served within slot t.
inline std::int64_t step_queue(std::int64_t q, std::int64_t a, std::int64_t c, int s) {
  const std::int64_t next = q + a - c * s;
  return next > 0 ? next : 0;
}

// T[t+1] = 0 if the link sees a service event (c * s > 0), else T[t] + 1.
// The reset fires whether or not the link had anything to send.
inline std::int64_t step_tsls(std::int64_t t, std::int64_t c, int s) {
  return c * s > 0 ? 0 : t + 1;
}

// Variant counter: freezes when the link is unserved *and* its queue is
// empty. advance_slot passes the begin-of-slot queue length (the value the
// scheduler observed), so a slot's own arrivals do not unfreeze it.
inline std::int64_t step_tsls_variant(std::int64_t t, std::int64_t backlog, std::int64_t c,
                                      int s) {
  if (c * s > 0) return 0;
  return backlog > 0 ? t + 1 : t;
}

struct ServiceSplit {
  std::int64_t departed;
  std::int64_t unused;
};

// departed = min(q + a, c * s); unused is the offered service that found
// no packets to carry. departed + unused == c * s always.
inline ServiceSplit departures_and_unused(std::int64_t q, std::int64_t a, std::int64_t c, int s) {
  const std::int64_t offered = c * s;
  const std::int64_t backlog = q + a;
  const std::int64_t departed = backlog < offered ? backlog : offered;
  return {departed, offered - departed};
}

// Per-slot outcome buffers; sized once and reused across slots.
struct SlotOutcome {
  std::vector<std::int64_t> departed;
  std::vector<std::int64_t> unused;
  std::vector<std::uint8_t> service_event;  // 1{c * s > 0}

  void resize(std::size_t num_links) {
    departed.assign(num_links, 0);
    unused.assign(num_links, 0);
    service_event.assign(num_links, 0);
  }
};

// Applies one slot to every link: queues via step_queue, counters via the
// selected TSLS rule, slot index incremented. Fills `out` with the slot's
// departures, unused service, and service events.
// Throws std::invalid_argument on dimension mismatch.
void advance_slot(SystemState& state, std::span<const std::int64_t> arrivals,
                  std::span<const std::int64_t> channel, const ScheduleVector& schedule,
                  TslsMode mode, SlotOutcome& out);

}  // namespace rsgsim
