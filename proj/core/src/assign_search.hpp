#pragma once

#include "search_common.hpp"

namespace bucketorder::detail {

// Branch-and-bound over ordered partitions for the structured variants
// (fixed bucket count, equal/prescribed sizes, collapsed tail, fairness):
// buckets are built front to back, so size counters, tail membership and
// cumulative fairness proportions are checkable the moment each bucket
// closes.  Pending pairs contribute their cheapest still-possible state to
// the bound.  Single-threaded; the same two phases as the pair search.
search_outcome run_assign_search(const scaled_matrix& m, const variant_spec& v,
                                 const solve_config& cfg,
                                 const std::vector<std::vector<int>>& hint_assignments,
                                 trace_sink& trace);

}  // namespace bucketorder::detail
