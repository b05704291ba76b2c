#pragma once
// Validation and canonicalization of simulator configurations.

#include <vector>

#include "rsgsim/types.hpp"

namespace rsgsim {

// Checks every structural invariant of a configuration and returns a
// canonicalized copy: distributions sorted / deduplicated / normalized,
// empty alpha and beta filled with ones, conflict edges deduplicated with
// endpoints ordered, and a_max / c_max recomputed from the supports.
// Idempotent: validate_config(validate_config(cfg)) == validate_config(cfg).
// Throws ConfigError with a field-naming message on any violation.
SimConfig validate_config(const SimConfig& cfg);

// Structural checks on an explicit schedule set: non-empty, consistent
// dimensions, no duplicate schedules, and every link active in at least
// one schedule. Throws ConfigError.
void validate_schedule_set(const ScheduleSet& set);

// Convenience constructors that fill in the derived max support values.
ChannelModel make_channel(std::vector<DiscreteDist> per_link);
ArrivalModel make_arrivals(std::vector<DiscreteDist> per_link);

}  // namespace rsgsim
