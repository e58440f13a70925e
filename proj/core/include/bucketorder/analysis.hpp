#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bucketorder/bucket_order.hpp"
#include "bucketorder/pair_order_matrix.hpp"
#include "bucketorder/rational.hpp"
#include "bucketorder/solve.hpp"
#include "bucketorder/variant.hpp"

namespace bucketorder {

struct sweep_point {
  int param = 0;
  std::optional<rational> objective;  // the optimum, or the incumbent on a limit stop
  solve_status status = solve_status::limit;
};

struct sweep_result {
  std::string parameter;            // "p" or "k"
  std::vector<sweep_point> values;  // sorted by parameter
  std::vector<int> minima;          // sampled parameters attaining the global minimum
  // collapsed-tail sweeps only: the unrestricted problem reappears at k = n,
  // and collapsing the last bucket of an unrestricted optimum leaves its
  // value unchanged, so the minimum recurs at n - |last bucket|
  std::optional<int> k_full;
  std::optional<int> k_worst_bucket;
};

// Objective per bucket count p (exactly p non-empty buckets).  An empty
// params list means 1..n.  With cfg.jobs > 1 the points are independent
// solves run in parallel; sequentially each point's optima seed the next
// point's candidate list.
sweep_result p_sweep(const pair_order_matrix& c, std::vector<int> params = {},
                     const solve_config& cfg = {});

// Objective per collapsed-tail size parameter k (the n - k worst items tied
// in one final bucket; k = n is the unrestricted problem).
sweep_result tcu_sweep(const pair_order_matrix& c, std::vector<int> params = {},
                       const solve_config& cfg = {});

// One row of a cumulative representation trajectory: of the t items in the
// first `prefix` buckets, s belong to the group; within reports the
// floor/ceil fair-share test at that prefix.
struct trajectory_cell {
  int group = 0;   // 0-based group index
  int prefix = 0;  // 1-based bucket prefix
  int t = 0;
  int s = 0;
  rational proportion;  // s / t
  rational target;      // group size / n
  bool within = true;
};

// Cumulative group proportions of b per prefix, group-major, prefixes
// 1..bucket_count.  Throws when the groups do not partition b's items.
std::vector<trajectory_cell> fairness_trajectory(const bucket_order& b, const fairness_spec& f);

struct bound_summary {
  solve_status status = solve_status::limit;
  std::optional<rational> objective;
  // only for the unrestricted variant; entry-wise rounding relaxes nothing
  // but transitivity, so it bounds no other feasible set
  std::optional<rational> utopian_bound;
  std::optional<rational> gap_to_utopian;  // 100 (objective - utopian) / utopian
};

bound_summary bound_report(const pair_order_matrix& c, const variant_spec& v,
                           const solve_config& cfg = {});

// Best value over weak orders whose last bucket is exactly `tail` (0-based
// items, every other item strictly before it): the head is an unrestricted
// sub-problem and the tail contributes a fixed cost.
struct fixed_tail_result {
  rational objective;
  bucket_order order;
};

fixed_tail_result fixed_tail_best(const pair_order_matrix& c, std::vector<int> tail,
                                  const solve_config& cfg = {});

// param,objective_exact,objective_2dp,status,is_min
void write_sweep_csv(std::ostream& os, const sweep_result& r);
// group,prefix,T,S,proportion_exact,target,within_bounds (1-based group)
void write_trajectory_csv(std::ostream& os, const std::vector<trajectory_cell>& cells);

}  // namespace bucketorder
