#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "assign_search.hpp"
#include "bucketorder/solve.hpp"
#include "pair_search.hpp"
#include "scaled.hpp"
#include "search_common.hpp"

namespace bucketorder {

void solve_config::validate() const {
  if (time_limit_s && *time_limit_s < 0.0)
    throw std::invalid_argument("time limit must be non-negative");
  if (enumeration_threshold < 1)
    throw std::invalid_argument("enumeration threshold must be positive");
  if (optima_cap < 1) throw std::invalid_argument("optima cap must be at least 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
}

std::string status_str(solve_status s) {
  switch (s) {
    case solve_status::optimal: return "Optimal";
    case solve_status::infeasible: return "Infeasible";
    case solve_status::limit: return "Limit";
  }
  throw std::logic_error("unknown solve status");
}

std::string optima_count_str(std::size_t count) {
  return count > 3 ? ">3" : std::to_string(count);
}

std::optional<rational> gap_percent(const rational& incumbent, const rational& bound) {
  if (!bound.is_negative() && !bound.is_zero())
    return rational(100) * (incumbent - bound) / bound;
  return std::nullopt;
}

namespace {

// engine assignments -> canonically sorted, deduplicated orders with counts
void fill_optima(solve_result& r, const std::vector<std::vector<int>>& assignments,
                 std::size_t cap) {
  std::vector<bucket_order> orders;
  orders.reserve(assignments.size());
  for (const std::vector<int>& asg : assignments) {
    int buckets = 0;
    for (const int u : asg) buckets = std::max(buckets, u + 1);
    orders.push_back(detail::assignment_to_order(asg, buckets));
  }
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  if (orders.size() > cap) orders.resize(cap);
  r.optima = std::move(orders);
  r.bucket_counts.clear();
  r.bucket_counts.reserve(r.optima.size());
  for (const bucket_order& b : r.optima) r.bucket_counts.push_back(b.bucket_count());
}

}  // namespace

solve_result solve(const pair_order_matrix& c, const variant_spec& v, const solve_config& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  c.validate();
  v.validate(c.n);

  // small instances: the exhaustive oracle is both fastest and simplest
  if (c.n < cfg.enumeration_threshold && c.n <= 10) {
    solve_result r = brute_force_solve(c, v, c.n, cfg.jobs);
    if (r.optima.size() > static_cast<std::size_t>(cfg.optima_cap)) {
      r.optima.resize(static_cast<std::size_t>(cfg.optima_cap));
      r.bucket_counts.resize(static_cast<std::size_t>(cfg.optima_cap));
    }
    r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

  const detail::scaled_matrix m(c);
  std::vector<std::vector<int>> hints;
  for (const bucket_order& h : cfg.hints) {
    h.validate(c.n);
    // a hint that misses the variant's condition is just not a candidate
    if (v.satisfies(h, c.n)) hints.push_back(h.assignment());
  }
  detail::trace_sink trace;
  trace.out = cfg.trace;

  const bool unrestricted =
      v.kind == variant_kind::obop || (v.kind == variant_kind::tcu && v.k == c.n);
  const detail::search_outcome out =
      unrestricted ? detail::run_pair_search(m, cfg, hints, trace)
                   : detail::run_assign_search(m, v, cfg, hints, trace);

  solve_result r;
  r.nodes = out.nodes;
  if (out.complete && !out.has_incumbent) {
    r.status = solve_status::infeasible;
  } else if (out.complete) {
    r.status = solve_status::optimal;
    r.objective = detail::to_rational(out.best_num, m.den);
    r.bound = r.objective;
    fill_optima(r, out.optima, static_cast<std::size_t>(cfg.optima_cap));
  } else {
    r.status = solve_status::limit;
    if (out.has_incumbent) {
      r.objective = detail::to_rational(out.best_num, m.den);
      fill_optima(r, out.optima, static_cast<std::size_t>(cfg.optima_cap));
    }
    r.bound = detail::to_rational(out.bound_num, m.den);
  }
  r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<bucket_order> enumerate_optima(const pair_order_matrix& c, const variant_spec& v,
                                           const solve_config& cfg) {
  return solve(c, v, cfg).optima;
}

}  // namespace bucketorder
