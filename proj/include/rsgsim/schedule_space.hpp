#pragma once
// Enumeration of feasible schedule sets for the supported interference
// topologies. The sets are explicit so that selection and the capacity
// bounds can evaluate maxima exactly; guards keep them small.

#include <utility>
#include <vector>

#include "rsgsim/types.hpp"

namespace rsgsim {

// One schedule per link (exactly one link active at a time).
ScheduleSet single_hop_schedules(std::size_t num_links);

// N x N crossbar: all N! permutation matchings, link l = input*N + output.
// Guard: 1 <= ports <= 6.
ScheduleSet switch_matchings(int ports);

// All maximal independent sets of an undirected conflict graph.
// Guard: 1 <= num_links <= 20; edges must be self-loop free and in range.
ScheduleSet conflict_graph_schedules(std::size_t num_links,
                                     const std::vector<std::pair<LinkId, LinkId>>& edges);

// Dispatch on topology kind.
ScheduleSet build_schedules(const TopologySpec& topology);

}  // namespace rsgsim
