#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "bucketorder/solve.hpp"
#include "scaled.hpp"

namespace bucketorder::detail {

using cost_t = __int128;

// effectively infinite cost; numeric_limits<__int128> is unreliable in
// strict standard mode, so build the sentinel by hand
constexpr cost_t cost_inf() { return cost_t(1) << 120; }

// wall-clock and node budget shared by all workers of one search
struct search_ticker {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::optional<double> time_limit_s;
  std::optional<std::uint64_t> node_limit;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};

  double elapsed_s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  // workers report node batches; returns false once a budget is exhausted
  bool admit(std::uint64_t batch) {
    const std::uint64_t total = nodes.fetch_add(batch, std::memory_order_relaxed) + batch;
    if (stop.load(std::memory_order_relaxed)) return false;
    if (node_limit && total > *node_limit) stop.store(true, std::memory_order_relaxed);
    if (time_limit_s && elapsed_s() > *time_limit_s) stop.store(true, std::memory_order_relaxed);
    return !stop.load(std::memory_order_relaxed);
  }
};

// best incumbent shared across workers; reads may lag behind writes, which
// only weakens pruning, never correctness
struct shared_incumbent {
  std::mutex mu;
  bool has = false;
  cost_t value = cost_inf();
  std::vector<int> assignment;  // item -> bucket index

  bool offer(cost_t v, const std::vector<int>& asg) {
    std::lock_guard<std::mutex> lock(mu);
    if (has && v >= value) return false;
    has = true;
    value = v;
    assignment = asg;
    return true;
  }

  cost_t read() {
    std::lock_guard<std::mutex> lock(mu);
    return has ? value : cost_inf();
  }
};

// serialized line-JSON event sink; null sink compiles away at call sites
struct trace_sink {
  std::ostream* out = nullptr;
  std::mutex mu;

  explicit operator bool() const { return out != nullptr; }

  void event(const char* kind, int depth, cost_t bound_num, std::int64_t den) {
    if (!out) return;
    std::lock_guard<std::mutex> lock(mu);
    *out << "{\"event\":\"" << kind << "\",\"depth\":" << depth << ",\"bound\":\""
         << to_rational(bound_num, den).str() << "\"}\n";
  }

  void incumbent(cost_t value_num, std::int64_t den) {
    if (!out) return;
    std::lock_guard<std::mutex> lock(mu);
    *out << "{\"event\":\"incumbent\",\"value\":\"" << to_rational(value_num, den).str()
         << "\"}\n";
  }
};

// what one engine hands back to the dispatcher
struct search_outcome {
  bool complete = false;  // ran to exhaustion (no limit abort)
  bool has_incumbent = false;
  cost_t best_num = cost_inf();
  cost_t bound_num = 0;                          // valid lower bound on the optimum
  std::vector<std::vector<int>> optima;          // bucket-index assignments, search order
  std::uint64_t nodes = 0;
};

// bucket-index assignment (0-based, contiguous from 0) -> bucket order
inline bucket_order assignment_to_order(const std::vector<int>& asg, int buckets) {
  bucket_order b;
  b.buckets.assign(static_cast<std::size_t>(buckets), {});
  for (int r = 0; r < static_cast<int>(asg.size()); ++r)
    b.buckets[static_cast<std::size_t>(asg[static_cast<std::size_t>(r)])].push_back(r);
  return b;
}

}  // namespace bucketorder::detail
