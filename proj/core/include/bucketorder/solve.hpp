#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bucketorder/bucket_order.hpp"
#include "bucketorder/pair_order_matrix.hpp"
#include "bucketorder/rational.hpp"
#include "bucketorder/variant.hpp"

namespace bucketorder {

struct solve_config {
  std::optional<double> time_limit_s;
  std::optional<std::uint64_t> node_limit;
  // below this item count the exhaustive oracle is used directly
  int enumeration_threshold = 8;
  int optima_cap = 64;
  int jobs = 1;
  // known-feasible orders whose values seed the incumbent; they are only
  // used as candidate evaluations, never trusted as bounds
  std::vector<bucket_order> hints;
  // line-delimited JSON search events (open/prune/incumbent); debugging aid
  std::ostream* trace = nullptr;

  void validate() const;  // throws std::invalid_argument
};

enum class solve_status { optimal, infeasible, limit };

std::string status_str(solve_status s);

struct solve_result {
  solve_status status = solve_status::limit;
  std::optional<rational> objective;  // incumbent value; the optimum when optimal
  std::optional<rational> bound;      // best proven lower bound
  std::vector<bucket_order> optima;   // canonically sorted, deduplicated
  std::vector<int> bucket_counts;     // bucket count of each listed optimum
  std::uint64_t nodes = 0;
  double elapsed_s = 0.0;
};

// Exact minimization of D(B, C) over the bucket orders admitted by the
// variant.  Small instances go through the exhaustive oracle; the plain
// problem runs a three-way pair branch-and-bound under the utopian bound and
// the structured variants a bucket-by-bucket construction search.  All
// optima up to cfg.optima_cap are enumerated when the search completes.
solve_result solve(const pair_order_matrix& c, const variant_spec& v,
                   const solve_config& cfg = {});

// Independent oracle: enumerate every weak order, filter by the variant's
// condition, return the minimum and all optima.  cap limits n (hard cap 10).
solve_result brute_force_solve(const pair_order_matrix& c, const variant_spec& v, int cap = 8,
                               int jobs = 1);

// All optima of the variant up to cfg.optima_cap (the incumbent when the
// search hit a limit, empty when infeasible).
std::vector<bucket_order> enumerate_optima(const pair_order_matrix& c, const variant_spec& v,
                                           const solve_config& cfg = {});

// reporting convention for alternative-optima counts: 1, 2, 3 or ">3"
std::string optima_count_str(std::size_t count);

// 100 * (incumbent - bound) / bound; absent when the bound is not positive
std::optional<rational> gap_percent(const rational& incumbent, const rational& bound);

}  // namespace bucketorder
