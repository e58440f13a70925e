#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bucketorder/solve.hpp"
#include "bucketorder/weak_order_enum.hpp"
#include "scaled.hpp"

namespace bucketorder {

namespace {

struct oracle_best {
  bool any = false;
  __int128 value = 0;
  std::vector<bucket_order> optima;

  void take(const bucket_order& b, __int128 val) {
    if (!any || val < value) {
      any = true;
      value = val;
      optima.clear();
      optima.push_back(b);
    } else if (val == value) {
      optima.push_back(b);
    }
  }
};

}  // namespace

solve_result brute_force_solve(const pair_order_matrix& c, const variant_spec& v, int cap,
                               int jobs) {
  const auto t0 = std::chrono::steady_clock::now();
  c.validate();
  v.validate(c.n);
  if (cap < 1) throw std::invalid_argument("oracle cap must be at least 1");
  const int effective_cap = std::min(cap, 10);
  if (c.n > effective_cap)
    throw std::invalid_argument("exhaustive enumeration refused for n = " + std::to_string(c.n) +
                                " (cap " + std::to_string(effective_cap) + ")");

  const detail::scaled_matrix m(c);
  oracle_best best;
  std::uint64_t visited = 0;

  if (jobs > 1 && c.n <= 8) {
    const std::vector<bucket_order> all = enumerate_weak_orders(c.n);
    visited = all.size();
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(all.size())));
    std::vector<oracle_best> local(static_cast<std::size_t>(workers));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int j = 0; j < workers; ++j)
      threads.emplace_back([&, j] {
        const std::size_t lo = all.size() * static_cast<std::size_t>(j) /
                               static_cast<std::size_t>(workers);
        const std::size_t hi = all.size() * static_cast<std::size_t>(j + 1) /
                               static_cast<std::size_t>(workers);
        oracle_best& mine = local[static_cast<std::size_t>(j)];
        for (std::size_t i = lo; i < hi; ++i)
          if (v.satisfies(all[i], c.n)) mine.take(all[i], m.distance_num(all[i].assignment()));
      });
    for (std::thread& th : threads) th.join();
    for (const oracle_best& mine : local) {
      if (!mine.any) continue;
      for (const bucket_order& b : mine.optima) best.take(b, mine.value);
    }
  } else {
    for_each_weak_order(c.n, [&](const bucket_order& b) {
      ++visited;
      if (v.satisfies(b, c.n)) best.take(b, m.distance_num(b.assignment()));
      return true;
    });
  }

  solve_result r;
  r.nodes = visited;
  if (best.any) {
    r.status = solve_status::optimal;
    r.objective = detail::to_rational(best.value, m.den);
    r.bound = r.objective;
    std::sort(best.optima.begin(), best.optima.end());
    best.optima.erase(std::unique(best.optima.begin(), best.optima.end()), best.optima.end());
    r.optima = std::move(best.optima);
    r.bucket_counts.reserve(r.optima.size());
    for (const bucket_order& b : r.optima) r.bucket_counts.push_back(b.bucket_count());
  } else {
    r.status = solve_status::infeasible;
  }
  r.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace bucketorder
