#include "bucketorder/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bucketorder {

namespace {

std::vector<int> sweep_params(std::vector<int> params, int n, const char* what) {
  if (params.empty()) {
    params.resize(static_cast<std::size_t>(n));
    std::iota(params.begin(), params.end(), 1);
    return params;
  }
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  if (params.front() < 1 || params.back() > n)
    throw std::invalid_argument(std::string(what) + " sweep values must lie in 1.." +
                                std::to_string(n));
  return params;
}

// run one solve per parameter; sequentially the previous point's optima are
// offered as candidate evaluations for the next (solve drops any that miss
// the variant's condition)
std::vector<solve_result> run_points(const pair_order_matrix& c, const std::vector<int>& params,
                                     const solve_config& cfg,
                                     const std::function<variant_spec(int)>& make_variant) {
  std::vector<solve_result> results(params.size());
  if (cfg.jobs > 1 && params.size() > 1) {
    solve_config point_cfg = cfg;
    point_cfg.jobs = 1;
    std::atomic<std::size_t> next{0};
    const int workers = std::min<int>(cfg.jobs, static_cast<int>(params.size()));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int j = 0; j < workers; ++j)
      threads.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= params.size()) break;
          results[i] = solve(c, make_variant(params[i]), point_cfg);
        }
      });
    for (std::thread& th : threads) th.join();
  } else {
    solve_config point_cfg = cfg;
    for (std::size_t i = 0; i < params.size(); ++i) {
      results[i] = solve(c, make_variant(params[i]), point_cfg);
      point_cfg.hints = results[i].optima;
    }
  }
  return results;
}

sweep_result assemble_sweep(const char* parameter, const std::vector<int>& params,
                            const std::vector<solve_result>& results) {
  sweep_result r;
  r.parameter = parameter;
  std::optional<rational> best;
  for (std::size_t i = 0; i < params.size(); ++i) {
    sweep_point pt;
    pt.param = params[i];
    pt.status = results[i].status;
    pt.objective = results[i].objective;
    if (results[i].status == solve_status::optimal && results[i].objective &&
        (!best || *results[i].objective < *best))
      best = results[i].objective;
    r.values.push_back(std::move(pt));
  }
  if (best)
    for (const sweep_point& pt : r.values)
      if (pt.status == solve_status::optimal && pt.objective && *pt.objective == *best)
        r.minima.push_back(pt.param);
  return r;
}

}  // namespace

sweep_result p_sweep(const pair_order_matrix& c, std::vector<int> params,
                     const solve_config& cfg) {
  cfg.validate();
  c.validate();
  const std::vector<int> ps = sweep_params(std::move(params), c.n, "bucket-count");
  const std::vector<solve_result> results =
      run_points(c, ps, cfg, [](int p) { return variant_spec::fixed_buckets(p); });
  return assemble_sweep("p", ps, results);
}

sweep_result tcu_sweep(const pair_order_matrix& c, std::vector<int> params,
                       const solve_config& cfg) {
  cfg.validate();
  c.validate();
  const std::vector<int> ks = sweep_params(std::move(params), c.n, "tail");
  const std::vector<solve_result> results =
      run_points(c, ks, cfg, [](int k) { return variant_spec::tcu(k); });
  sweep_result r = assemble_sweep("k", ks, results);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] != c.n) continue;
    r.k_full = c.n;
    if (results[i].status == solve_status::optimal && !results[i].optima.empty()) {
      const bucket_order& opt = results[i].optima.front();
      const int tail = static_cast<int>(opt.buckets.back().size());
      if (c.n - tail >= 1) r.k_worst_bucket = c.n - tail;
    }
  }
  return r;
}

std::vector<trajectory_cell> fairness_trajectory(const bucket_order& b, const fairness_spec& f) {
  int n = 0;
  for (const std::vector<int>& bucket : b.buckets) n += static_cast<int>(bucket.size());
  b.validate(n);
  f.validate(n);
  const std::vector<int> owner = f.group_of(n);
  const int g = f.group_count();
  const int prefixes = b.bucket_count();

  // cumulative counts per prefix
  std::vector<int> t(static_cast<std::size_t>(prefixes), 0);
  std::vector<std::vector<int>> s(static_cast<std::size_t>(g),
                                  std::vector<int>(static_cast<std::size_t>(prefixes), 0));
  int running_t = 0;
  std::vector<int> running_s(static_cast<std::size_t>(g), 0);
  for (int l = 0; l < prefixes; ++l) {
    for (const int item : b.buckets[static_cast<std::size_t>(l)]) {
      ++running_t;
      ++running_s[static_cast<std::size_t>(owner[static_cast<std::size_t>(item)])];
    }
    t[static_cast<std::size_t>(l)] = running_t;
    for (int i = 0; i < g; ++i)
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] =
          running_s[static_cast<std::size_t>(i)];
  }

  std::vector<trajectory_cell> out;
  out.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(prefixes));
  for (int i = 0; i < g; ++i) {
    const rational target(static_cast<long long>(f.groups[static_cast<std::size_t>(i)].size()),
                          n);
    for (int l = 1; l <= prefixes; ++l) {
      trajectory_cell cell;
      cell.group = i;
      cell.prefix = l;
      cell.t = t[static_cast<std::size_t>(l - 1)];
      cell.s = s[static_cast<std::size_t>(i)][static_cast<std::size_t>(l - 1)];
      cell.proportion = rational(cell.s, cell.t);
      cell.target = target;
      cell.within = fair_share_ok(f.lambda_at(i, l), f.mu_at(i, l), cell.s, cell.t);
      out.push_back(std::move(cell));
    }
  }
  return out;
}

bound_summary bound_report(const pair_order_matrix& c, const variant_spec& v,
                           const solve_config& cfg) {
  const solve_result r = solve(c, v, cfg);
  bound_summary out;
  out.status = r.status;
  out.objective = r.objective;
  if (v.kind == variant_kind::obop) {
    out.utopian_bound = utopian(c).bound;
    if (out.objective) out.gap_to_utopian = gap_percent(*out.objective, *out.utopian_bound);
  }
  return out;
}

fixed_tail_result fixed_tail_best(const pair_order_matrix& c, std::vector<int> tail,
                                  const solve_config& cfg) {
  c.validate();
  std::sort(tail.begin(), tail.end());
  if (std::unique(tail.begin(), tail.end()) != tail.end())
    throw std::invalid_argument("tail lists an item twice");
  if (!tail.empty() && (tail.front() < 0 || tail.back() >= c.n))
    throw std::invalid_argument("tail item outside 1.." + std::to_string(c.n));

  std::vector<bool> in_tail(static_cast<std::size_t>(c.n), false);
  for (const int r : tail) in_tail[static_cast<std::size_t>(r)] = true;
  std::vector<int> head;
  for (int r = 0; r < c.n; ++r)
    if (!in_tail[static_cast<std::size_t>(r)]) head.push_back(r);

  // fixed part: ties inside the tail plus head-before-tail precedences
  rational constant;
  for (std::size_t i = 0; i < tail.size(); ++i)
    for (std::size_t j = i + 1; j < tail.size(); ++j) {
      const rational d = rational(1) - rational(2) * c.at(tail[i], tail[j]);
      constant += d.is_negative() ? -d : d;
    }
  for (const int h : head)
    for (const int w : tail) constant += rational(2) * (rational(1) - c.at(h, w));

  fixed_tail_result out;
  if (head.empty()) {
    out.objective = constant;
    out.order.buckets.push_back(tail);
    return out;
  }

  pair_order_matrix sub(static_cast<int>(head.size()));
  for (std::size_t r = 0; r < head.size(); ++r)
    for (std::size_t s = 0; s < head.size(); ++s)
      sub.at(static_cast<int>(r), static_cast<int>(s)) = c.at(head[r], head[s]);
  const solve_result r = solve(sub, variant_spec::obop(), cfg);
  if (r.status != solve_status::optimal)
    throw std::runtime_error("head sub-problem stopped " + status_str(r.status));

  out.objective = *r.objective + constant;
  for (const std::vector<int>& bucket : r.optima.front().buckets) {
    std::vector<int> mapped;
    mapped.reserve(bucket.size());
    for (const int x : bucket) mapped.push_back(head[static_cast<std::size_t>(x)]);
    out.order.buckets.push_back(std::move(mapped));
  }
  if (!tail.empty()) out.order.buckets.push_back(std::move(tail));
  return out;
}

void write_sweep_csv(std::ostream& os, const sweep_result& r) {
  os << "param,objective_exact,objective_2dp,status,is_min\n";
  for (const sweep_point& pt : r.values) {
    const bool is_min = std::find(r.minima.begin(), r.minima.end(), pt.param) != r.minima.end();
    os << pt.param << ',';
    if (pt.objective)
      os << pt.objective->str() << ',' << pt.objective->str_2dp();
    else
      os << ',';
    os << ',' << status_str(pt.status) << ',' << (is_min ? 1 : 0) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const std::vector<trajectory_cell>& cells) {
  os << "group,prefix,T,S,proportion_exact,target,within_bounds\n";
  for (const trajectory_cell& cell : cells)
    os << (cell.group + 1) << ',' << cell.prefix << ',' << cell.t << ',' << cell.s << ','
       << cell.proportion.str() << ',' << cell.target.str() << ','
       << (cell.within ? 1 : 0) << '\n';
}

}  // namespace bucketorder
