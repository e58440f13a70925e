#include "pair_search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace bucketorder::detail {

namespace {

constexpr std::int8_t UNK = 0, BEF = 1, TIE = 2, AFT = 3;

std::int8_t mirror8(std::int8_t v) { return v == BEF ? AFT : v == AFT ? BEF : v; }

// rel(r,s) composed with rel(s,t) -> implied rel(r,t), UNK when nothing follows
std::int8_t compose8(std::int8_t a, std::int8_t b) {
  if (a == UNK || b == UNK) return UNK;
  if (a == TIE && b == TIE) return TIE;
  if ((a == BEF || a == TIE) && (b == BEF || b == TIE)) return BEF;
  if ((a == AFT || a == TIE) && (b == AFT || b == TIE)) return AFT;
  return UNK;
}

struct decision {
  int r, s;
  std::int8_t state;
};

class engine {
 public:
  explicit engine(const scaled_matrix& m) : m_(&m), n_(m.n) {
    rel_.assign(static_cast<std::size_t>(n_) * n_, UNK);
    pid_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int r = 0; r < n_; ++r)
      for (int s = r + 1; s < n_; ++s) {
        const int id = static_cast<int>(pairs_.size());
        pid_[static_cast<std::size_t>(r) * n_ + s] = id;
        pid_[static_cast<std::size_t>(s) * n_ + r] = id;
        pairs_.push_back({r, s});
        const cost_t cb = m.cost_before(r, s), ct = m.cost_tied(r, s), ca = m.cost_after(r, s);
        cost_.push_back(cb);
        cost_.push_back(ct);
        cost_.push_back(ca);
        min_.push_back(std::min(cb, std::min(ct, ca)));
        base_bound_ += min_.back();
      }
    order_.resize(pairs_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
    // most decisive pair first: largest |den - 2 c_rs*den|, then lexicographic
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      const auto da = decisiveness(a), db = decisiveness(b);
      if (da != db) return da > db;
      return pairs_[static_cast<std::size_t>(a)] < pairs_[static_cast<std::size_t>(b)];
    });
    bound_ = base_bound_;
  }

  int n() const { return n_; }
  std::int64_t den() const { return m_->den; }
  cost_t bound() const { return bound_; }
  int decided() const { return decided_; }
  int total_pairs() const { return static_cast<int>(pairs_.size()); }
  std::size_t mark() const { return trail_.size(); }
  std::pair<int, int> pair_at(int order_pos) const {
    return pairs_[static_cast<std::size_t>(order_[static_cast<std::size_t>(order_pos)])];
  }

  void reset() {
    for (const auto& [r, s] : trail_) {
      rel_[static_cast<std::size_t>(r) * n_ + s] = UNK;
      rel_[static_cast<std::size_t>(s) * n_ + r] = UNK;
    }
    trail_.clear();
    decided_ = 0;
    bound_ = base_bound_;
  }

  // -1 when every pair is decided
  int next_undecided(int from) const {
    const int total = total_pairs();
    while (from < total) {
      const auto& [r, s] = pairs_[static_cast<std::size_t>(order_[static_cast<std::size_t>(from)])];
      if (rel_[static_cast<std::size_t>(r) * n_ + s] == UNK) return from;
      ++from;
    }
    return -1;
  }

  cost_t slack(int r, int s, std::int8_t v) const {
    const int id = pid_[static_cast<std::size_t>(r) * n_ + s];
    const std::int8_t canon = r < s ? v : mirror8(v);
    return cost_[static_cast<std::size_t>(id) * 3 + (canon - 1)] -
           min_[static_cast<std::size_t>(id)];
  }

  // set pair state and propagate the transitive closure; false on
  // contradiction (caller undoes to its mark either way)
  bool decide(int r, int s, std::int8_t v) {
    queue_.clear();
    if (!set1(r, s, v)) return false;
    for (std::size_t h = 0; h < queue_.size(); ++h) {
      const auto [a, b] = queue_[h];
      const std::int8_t ab = rel_[static_cast<std::size_t>(a) * n_ + b];
      for (int t = 0; t < n_; ++t) {
        if (t == a || t == b) continue;
        const std::int8_t bt = rel_[static_cast<std::size_t>(b) * n_ + t];
        if (bt != UNK) {
          const std::int8_t im = compose8(ab, bt);
          if (im != UNK && !set1(a, t, im)) return false;
        }
        const std::int8_t ta = rel_[static_cast<std::size_t>(t) * n_ + a];
        if (ta != UNK) {
          const std::int8_t im = compose8(ta, ab);
          if (im != UNK && !set1(t, b, im)) return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto [r, s] = trail_.back();
      trail_.pop_back();
      bound_ -= slack(r, s, rel_[static_cast<std::size_t>(r) * n_ + s]);
      rel_[static_cast<std::size_t>(r) * n_ + s] = UNK;
      rel_[static_cast<std::size_t>(s) * n_ + r] = UNK;
      --decided_;
    }
  }

  bool replay(const std::vector<decision>& pre) {
    for (const decision& d : pre)
      if (!decide(d.r, d.s, d.state)) return false;
    return true;
  }

  // complete relation -> bucket-index assignment: an item's bucket rank is
  // the number of items strictly before it, compressed to 0..p-1
  std::vector<int> assignment() const {
    std::vector<int> key(static_cast<std::size_t>(n_), 0);
    for (int r = 0; r < n_; ++r)
      for (int s = 0; s < n_; ++s)
        if (s != r && rel_[static_cast<std::size_t>(s) * n_ + r] == BEF)
          ++key[static_cast<std::size_t>(r)];
    std::vector<int> distinct = key;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int r = 0; r < n_; ++r)
      out[static_cast<std::size_t>(r)] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), key[static_cast<std::size_t>(r)]) -
          distinct.begin());
    return out;
  }

  // the three states of the pair at this position, cheapest first
  std::array<std::int8_t, 3> state_order(int r, int s) const {
    std::array<std::int8_t, 3> sts = {BEF, TIE, AFT};
    std::sort(sts.begin(), sts.end(), [&](std::int8_t a, std::int8_t b) {
      const cost_t sa = slack(r, s, a), sb = slack(r, s, b);
      if (sa != sb) return sa < sb;
      return a < b;
    });
    return sts;
  }

 private:
  cost_t decisiveness(int id) const {
    const auto& [r, s] = pairs_[static_cast<std::size_t>(id)];
    const std::int64_t d = m_->den - 2 * m_->at(r, s);
    return d < 0 ? -d : d;
  }

  bool set1(int r, int s, std::int8_t v) {
    std::int8_t& cur = rel_[static_cast<std::size_t>(r) * n_ + s];
    if (cur == v) return true;
    if (cur != UNK) return false;
    cur = v;
    rel_[static_cast<std::size_t>(s) * n_ + r] = mirror8(v);
    trail_.push_back({r, s});
    ++decided_;
    bound_ += slack(r, s, v);
    queue_.push_back({r, s});
    return true;
  }

  const scaled_matrix* m_;
  int n_;
  std::vector<std::int8_t> rel_;
  std::vector<int> pid_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<cost_t> cost_;  // 3 per pair: before, tied, after (r < s view)
  std::vector<cost_t> min_;
  std::vector<int> order_;
  std::vector<std::pair<int, int>> trail_;
  std::vector<std::pair<int, int>> queue_;
  cost_t base_bound_ = 0;
  cost_t bound_ = 0;
  int decided_ = 0;
};

struct worker {
  engine eng;
  shared_incumbent* shared;
  search_ticker* ticker;
  trace_sink* trace;
  cost_t best = cost_inf();
  cost_t abandoned = cost_inf();
  std::uint64_t batch = 0;
  int sync_in = 512;

  explicit worker(const engine& proto) : eng(proto) {}

  // true while budgets allow; counts one node attempt
  bool tick() {
    ++batch;
    if (--sync_in <= 0) {
      sync_in = 512;
      best = std::min(best, shared->read());
    }
    if (batch >= 256) {
      const bool ok = ticker->admit(batch);
      batch = 0;
      if (!ok) return false;
    }
    return true;
  }

  void flush() {
    if (batch > 0) ticker->admit(batch);
    batch = 0;
  }
};

// phase 1: prove the optimum; false only on a budget abort
bool dfs_best(worker& w, int ptr) {
  engine& e = w.eng;
  const cost_t entry_bound = e.bound();
  ptr = e.next_undecided(ptr);
  if (ptr < 0) {
    const cost_t v = e.bound();
    if (v < w.best) {
      w.best = v;
      if (w.shared->offer(v, e.assignment())) w.trace->incumbent(v, e.den());
    }
    return true;
  }
  const auto [r, s] = e.pair_at(ptr);
  for (const std::int8_t st : e.state_order(r, s)) {
    if (!w.tick()) {
      w.abandoned = std::min(w.abandoned, entry_bound);
      return false;
    }
    if (entry_bound + e.slack(r, s, st) >= w.best) {
      w.trace->event("prune", e.decided(), entry_bound + e.slack(r, s, st), e.den());
      continue;
    }
    const std::size_t mark = e.mark();
    if (e.decide(r, s, st) && e.bound() < w.best) {
      w.trace->event("open", e.decided(), e.bound(), e.den());
      if (!dfs_best(w, ptr + 1)) {
        e.undo(mark);
        w.abandoned = std::min(w.abandoned, entry_bound);
        return false;
      }
    } else {
      w.trace->event("prune", e.decided(), std::max(e.bound(), w.best), e.den());
    }
    e.undo(mark);
  }
  return true;
}

struct collector {
  cost_t target = 0;
  std::size_t cap = 0;
  std::vector<std::vector<int>> found;
  std::uint64_t nodes = 0;
};

// phase 2: every completion with value exactly `target`, up to cap; false
// once the cap is reached
bool dfs_collect(collector& col, engine& e, int ptr) {
  ptr = e.next_undecided(ptr);
  if (ptr < 0) {
    if (e.bound() < col.target)
      throw std::logic_error("enumeration reached a value below the proven optimum");
    if (e.bound() == col.target) {
      col.found.push_back(e.assignment());
      if (col.found.size() >= col.cap) return false;
    }
    return true;
  }
  const auto [r, s] = e.pair_at(ptr);
  for (const std::int8_t st : e.state_order(r, s)) {
    ++col.nodes;
    if (e.bound() + e.slack(r, s, st) > col.target) continue;
    const std::size_t mark = e.mark();
    if (e.decide(r, s, st) && e.bound() <= col.target) {
      if (!dfs_collect(col, e, ptr + 1)) {
        e.undo(mark);
        return false;
      }
    }
    e.undo(mark);
  }
  return true;
}

struct frontier_task {
  std::vector<decision> pre;
  cost_t bound_at = 0;
};

}  // namespace

search_outcome run_pair_search(const scaled_matrix& m, const solve_config& cfg,
                               const std::vector<std::vector<int>>& hint_assignments,
                               trace_sink& trace) {
  search_ticker ticker;
  ticker.time_limit_s = cfg.time_limit_s;
  ticker.node_limit = cfg.node_limit;
  shared_incumbent shared;
  for (const std::vector<int>& asg : hint_assignments)
    shared.offer(cost_t(m.distance_num(asg)), asg);

  const engine proto(m);
  const int jobs = std::max(1, cfg.jobs);
  cost_t abandoned = cost_inf();
  bool aborted = false;

  if (jobs == 1 || proto.total_pairs() < 2) {
    worker w(proto);
    w.shared = &shared;
    w.ticker = &ticker;
    w.trace = &trace;
    w.best = shared.read();
    aborted = !dfs_best(w, 0);
    w.flush();
    abandoned = w.abandoned;
  } else {
    // split the top of the tree into tasks, then let workers race through them
    std::deque<frontier_task> queue;
    queue.push_back({{}, proto.bound()});
    engine scratch(proto);
    const std::size_t want = static_cast<std::size_t>(4 * jobs);
    std::uint64_t expansion_nodes = 0;
    while (!queue.empty() && queue.size() < want && !ticker.stop.load()) {
      frontier_task t = std::move(queue.front());
      queue.pop_front();
      scratch.reset();
      if (!scratch.replay(t.pre)) throw std::logic_error("frontier replay contradicted itself");
      const int ptr = scratch.next_undecided(0);
      if (ptr < 0) {
        shared.offer(scratch.bound(), scratch.assignment());
        continue;
      }
      const auto [r, s] = scratch.pair_at(ptr);
      const cost_t best_now = shared.read();
      for (const std::int8_t st : scratch.state_order(r, s)) {
        ++expansion_nodes;
        if (scratch.bound() + scratch.slack(r, s, st) >= best_now) continue;
        const std::size_t mark = scratch.mark();
        if (scratch.decide(r, s, st) && scratch.bound() < best_now) {
          frontier_task child = t;
          child.pre.push_back({r, s, st});
          child.bound_at = scratch.bound();
          queue.push_back(std::move(child));
        }
        scratch.undo(mark);
      }
      if (expansion_nodes >= 256) {
        ticker.admit(expansion_nodes);
        expansion_nodes = 0;
      }
    }
    if (expansion_nodes > 0) ticker.admit(expansion_nodes);

    std::vector<frontier_task> tasks(queue.begin(), queue.end());
    std::atomic<std::size_t> next{0};
    std::vector<cost_t> worker_abandoned(static_cast<std::size_t>(jobs), cost_inf());
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j)
      threads.emplace_back([&, j] {
        worker w(proto);
        w.shared = &shared;
        w.ticker = &ticker;
        w.trace = &trace;
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) break;
          if (ticker.stop.load()) {
            worker_abandoned[static_cast<std::size_t>(j)] =
                std::min(worker_abandoned[static_cast<std::size_t>(j)], tasks[i].bound_at);
            continue;
          }
          w.eng.reset();
          if (!w.eng.replay(tasks[i].pre)) {
            // cannot happen for tasks built from consistent decisions; keep
            // the bound sound rather than crash the worker if it ever does
            worker_abandoned[static_cast<std::size_t>(j)] =
                std::min(worker_abandoned[static_cast<std::size_t>(j)], tasks[i].bound_at);
            continue;
          }
          w.best = shared.read();
          dfs_best(w, 0);
          w.flush();
        }
        worker_abandoned[static_cast<std::size_t>(j)] =
            std::min(worker_abandoned[static_cast<std::size_t>(j)], w.abandoned);
      });
    for (std::thread& th : threads) th.join();
    for (const cost_t a : worker_abandoned) abandoned = std::min(abandoned, a);
    aborted = ticker.stop.load();
  }

  search_outcome out;
  out.nodes = ticker.nodes.load();
  out.complete = !aborted;
  out.has_incumbent = shared.has;
  out.best_num = shared.value;
  if (out.complete) {
    out.bound_num = out.has_incumbent ? out.best_num : cost_inf();
  } else {
    out.bound_num = std::min(abandoned, out.best_num);
    if (abandoned == cost_inf()) out.bound_num = std::min(out.bound_num, proto.bound());
  }

  if (out.complete && out.has_incumbent) {
    collector col;
    col.target = out.best_num;
    col.cap = static_cast<std::size_t>(std::max(1, cfg.optima_cap));
    engine e(proto);
    dfs_collect(col, e, 0);
    out.optima = std::move(col.found);
    out.nodes += col.nodes;
  } else if (out.has_incumbent) {
    out.optima.push_back(shared.assignment);
  }
  return out;
}

}  // namespace bucketorder::detail
