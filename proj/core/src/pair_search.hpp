#pragma once

#include "search_common.hpp"

namespace bucketorder::detail {

// Three-way branch-and-bound over pair relations for the unrestricted
// problem: branch on the most decisive undecided pair into before/tied/after
// with transitive-closure propagation, bound by decided cost plus the
// per-pair utopian minima.  Two phases: prove the optimum, then re-walk the
// tree collecting every order attaining it (up to cfg.optima_cap).
search_outcome run_pair_search(const scaled_matrix& m, const solve_config& cfg,
                               const std::vector<std::vector<int>>& hint_assignments,
                               trace_sink& trace);

}  // namespace bucketorder::detail
