#include "assign_search.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bucketorder::detail {

namespace {

struct move {
  int kind;  // 0 close, 1 add
  int item;  // for adds
  cost_t delta;
};

class builder {
 public:
  builder(const scaled_matrix& m, const variant_spec& v) : m_(&m), n_(m.n) {
    asg_.assign(static_cast<std::size_t>(n_), -1);
    unplaced_.resize(static_cast<std::size_t>(n_));
    for (int r = 0; r < n_; ++r) unplaced_[static_cast<std::size_t>(r)] = r;
    for (int r = 0; r < n_; ++r)
      for (int s = r + 1; s < n_; ++s) bound_ += m.cost_min(r, s);

    switch (v.kind) {
      case variant_kind::fixed_buckets:
        fixed_p_ = v.p;
        max_b_ = v.p;
        break;
      case variant_kind::equal_sizes:
        fixed_p_ = v.p;
        max_b_ = v.p;
        sizes_.assign(static_cast<std::size_t>(v.p), v.q);
        break;
      case variant_kind::prescribed_sizes:
        fixed_p_ = static_cast<int>(v.sizes.size());
        max_b_ = fixed_p_;
        sizes_ = v.sizes;
        break;
      case variant_kind::tcu:
        tail_ = n_ - v.k;
        max_b_ = n_;
        if (tail_ < 1) throw std::logic_error("collapsed-tail search needs k < n");
        break;
      case variant_kind::fair:
        fair_ = &v.fairness;
        max_b_ = v.fair_bucket_limit(n_);
        if (v.fair_p) fixed_p_ = *v.fair_p;
        if (v.fair_sizes) {
          sizes_ = *v.fair_sizes;
          fixed_p_ = static_cast<int>(sizes_.size());
        }
        min_b_ = v.min_buckets;
        owner_ = v.fairness.group_of(n_);
        closed_s_.assign(v.fairness.groups.size(), 0);
        break;
      default:
        throw std::logic_error("construction search got an unrestricted variant");
    }
  }

  cost_t bound() const { return bound_; }
  int placed() const { return n_ - static_cast<int>(unplaced_.size()); }
  bool done() const { return unplaced_.empty() && open_.empty(); }
  std::int64_t den() const { return m_->den; }
  const std::vector<int>& assignment() const { return asg_; }
  int bucket_count() const { return closed_; }

  // forced completion state for the collapsed tail: exactly tail_ unplaced
  bool at_tail_point() const {
    return tail_ >= 0 && static_cast<int>(unplaced_.size()) == tail_;
  }

  std::vector<move> moves() const {
    std::vector<move> out;
    const int u = static_cast<int>(unplaced_.size());
    if (!open_.empty() && close_allowed()) out.push_back({0, -1, close_delta()});
    if (u > 0 && add_allowed_now()) {
      const int floor_item = open_.empty() ? -1 : open_.back();
      for (const int x : unplaced_)
        if (x > floor_item) out.push_back({1, x, add_delta(x)});
    }
    std::stable_sort(out.begin(), out.end(), [](const move& a, const move& b) {
      if (a.delta != b.delta) return a.delta < b.delta;
      if (a.kind != b.kind) return a.kind < b.kind;
      return a.item < b.item;
    });
    return out;
  }

  void apply_add(int x) {
    bound_ += add_delta(x);
    unplaced_.erase(std::find(unplaced_.begin(), unplaced_.end(), x));
    open_.push_back(x);
    asg_[static_cast<std::size_t>(x)] = closed_;
  }

  void undo_add(int x) {
    asg_[static_cast<std::size_t>(x)] = -1;
    open_.pop_back();
    unplaced_.insert(std::upper_bound(unplaced_.begin(), unplaced_.end(), x), x);
    bound_ -= add_delta(x);
  }

  // closes the open bucket; the returned list feeds undo_close
  std::vector<int> apply_close() {
    bound_ += close_delta();
    if (fair_) {
      closed_t_ += static_cast<int>(open_.size());
      for (const int o : open_) ++closed_s_[static_cast<std::size_t>(owner_[static_cast<std::size_t>(o)])];
    }
    ++closed_;
    std::vector<int> was = std::move(open_);
    open_.clear();
    return was;
  }

  void undo_close(std::vector<int> was) {
    open_ = std::move(was);
    --closed_;
    if (fair_) {
      closed_t_ -= static_cast<int>(open_.size());
      for (const int o : open_) --closed_s_[static_cast<std::size_t>(owner_[static_cast<std::size_t>(o)])];
    }
    bound_ -= close_delta();
  }

  // the fairness / bound filters a just-closed bucket must pass; prefix
  // counts are final once the bucket boundary exists, so this never rejects
  // a state that could still complete into a feasible order
  bool closed_bucket_ok(const std::vector<int>& bucket) const {
    if (!fair_) return true;
    const int l = closed_;  // 1-based prefix index of the bucket just closed
    for (int i = 0; i < fair_->group_count(); ++i)
      if (!fair_share_ok(fair_->lambda_at(i, l), fair_->mu_at(i, l),
                         static_cast<long long>(closed_s_[static_cast<std::size_t>(i)]),
                         static_cast<long long>(closed_t_)))
        return false;
    for (const group_bound& bd : fair_->bucket_bounds) {
      if (bd.at != l) continue;
      int count = 0;
      for (const int x : bucket)
        if (owner_[static_cast<std::size_t>(x)] == bd.group) ++count;
      if (bd.lower && count < *bd.lower) return false;
      if (bd.upper && count > *bd.upper) return false;
    }
    for (const group_bound& bd : fair_->prefix_bounds) {
      if (bd.at != l) continue;
      const int count = closed_s_[static_cast<std::size_t>(bd.group)];
      if (bd.lower && count < *bd.lower) return false;
      if (bd.upper && count > *bd.upper) return false;
    }
    return true;
  }

  // each pair's bound share moves min3 -> pending (counterpart added) ->
  // final (tied on join, before on close); deltas must step from the share
  // the pair currently carries, not from min3 again
  cost_t add_delta(int x) const {
    cost_t d = 0;
    for (const int o : open_) d += m_->cost_tied(x, o) - pending_min(o, x);
    for (const int u : unplaced_)
      if (u != x) d += pending_min(x, u) - m_->cost_min(x, u);
    return d;
  }

  cost_t close_delta() const {
    cost_t d = 0;
    for (const int o : open_)
      for (const int u : unplaced_) d += m_->cost_before(o, u) - pending_min(o, u);
    return d;
  }

  cost_t tail_delta() const {
    cost_t d = close_delta();
    for (std::size_t i = 0; i < unplaced_.size(); ++i)
      for (std::size_t j = i + 1; j < unplaced_.size(); ++j)
        d += m_->cost_tied(unplaced_[i], unplaced_[j]) -
             m_->cost_min(unplaced_[i], unplaced_[j]);
    return d;
  }

  // collapse: close the open bucket (when any) and park every unplaced item
  // in one final bucket
  void apply_tail(std::vector<int>& closed_was, std::vector<int>& tail_was) {
    closed_was.clear();
    if (!open_.empty()) {
      // close_delta of the tail move was already priced inside tail_delta
      closed_was = apply_close();
    }
    bound_ += tail_delta_only();
    tail_was = unplaced_;
    for (const int x : unplaced_) asg_[static_cast<std::size_t>(x)] = closed_;
    ++closed_;
    unplaced_.clear();
  }

  void undo_tail(std::vector<int>& closed_was, std::vector<int>& tail_was) {
    --closed_;
    unplaced_ = std::move(tail_was);
    for (const int x : unplaced_) asg_[static_cast<std::size_t>(x)] = -1;
    bound_ -= tail_delta_only();
    if (!closed_was.empty()) undo_close(std::move(closed_was));
  }

 private:
  // tail ties only; the open-bucket closure is priced by apply_close
  cost_t tail_delta_only() const {
    cost_t d = 0;
    for (std::size_t i = 0; i < unplaced_.size(); ++i)
      for (std::size_t j = i + 1; j < unplaced_.size(); ++j)
        d += m_->cost_tied(unplaced_[i], unplaced_[j]) -
             m_->cost_min(unplaced_[i], unplaced_[j]);
    return d;
  }

  // cheapest state still open for a pair of an open-bucket item and an
  // unplaced one: tie (joins the bucket) or strictly later
  cost_t pending_min(int open_item, int unplaced_item) const {
    return std::min(m_->cost_tied(open_item, unplaced_item),
                    m_->cost_before(open_item, unplaced_item));
  }

  bool add_allowed_now() const {
    if (at_tail_point()) return false;
    if (open_.empty() && closed_ >= max_b_) return false;  // no room for a new bucket
    if (!sizes_.empty()) {
      if (closed_ >= static_cast<int>(sizes_.size())) return false;
      if (static_cast<int>(open_.size()) >= sizes_[static_cast<std::size_t>(closed_)])
        return false;
    }
    return true;
  }

  bool close_allowed() const {
    const int after = closed_ + 1;
    const int u = static_cast<int>(unplaced_.size());
    if (!sizes_.empty() &&
        static_cast<int>(open_.size()) != sizes_[static_cast<std::size_t>(closed_)])
      return false;
    if (tail_ >= 0) return u > tail_;  // the tail itself closes via apply_tail
    if (u == 0) return fixed_p_ >= 0 ? after == fixed_p_ : after >= min_b_;
    if (after >= max_b_) return false;  // at least one more bucket is coming
    if (fixed_p_ >= 0 && u < fixed_p_ - after) return false;
    if (after + u < min_b_) return false;
    return true;
  }

  const scaled_matrix* m_;
  int n_;
  std::vector<int> asg_;
  std::vector<int> open_;      // ascending item ids: each bucket is generated once
  std::vector<int> unplaced_;  // ascending
  int closed_ = 0;
  cost_t bound_ = 0;

  int fixed_p_ = -1;
  std::vector<int> sizes_;
  int max_b_ = 0;
  int min_b_ = 0;
  int tail_ = -1;
  const fairness_spec* fair_ = nullptr;
  std::vector<int> owner_;
  std::vector<int> closed_s_;
  int closed_t_ = 0;
};

struct driver {
  builder b;
  const variant_spec* v;
  int n;
  search_ticker* ticker;
  trace_sink* trace;
  shared_incumbent* shared;
  cost_t best = cost_inf();
  cost_t abandoned = cost_inf();
  std::uint64_t batch = 0;

  // phase 2 state; cap == 0 means phase 1
  cost_t target = 0;
  std::size_t cap = 0;
  std::vector<std::vector<int>> found;
  std::uint64_t collect_nodes = 0;

  driver(const scaled_matrix& m, const variant_spec& variant)
      : b(m, variant), v(&variant), n(m.n) {}

  bool collecting() const { return cap > 0; }

  bool tick() {
    if (collecting()) {
      // enumeration is already fenced by the proven optimum; no budget
      ++collect_nodes;
      return true;
    }
    if (++batch >= 256) {
      const bool ok = ticker->admit(batch);
      batch = 0;
      if (!ok) return false;
      best = std::min(best, shared->read());
    }
    return true;
  }

  void flush() {
    if (batch > 0) ticker->admit(batch);
    batch = 0;
  }

  // prune threshold: phase 1 wants strictly better, phase 2 wants equal
  bool over_limit(cost_t value) const {
    return collecting() ? value > target : value >= best;
  }

  bool complete_here() {
    bucket_order order = assignment_to_order(b.assignment(), b.bucket_count());
    if (!v->satisfies(order, n)) return true;  // dead leaf, keep searching
    const cost_t value = b.bound();
    if (collecting()) {
      if (value < target)
        throw std::logic_error("enumeration reached a value below the proven optimum");
      if (value == target) {
        found.push_back(b.assignment());
        if (found.size() >= cap) return false;
      }
      return true;
    }
    if (value < best) {
      best = value;
      if (shared->offer(value, b.assignment())) trace->incumbent(value, b.den());
    }
    return true;
  }

  bool dive() {
    const cost_t entry_bound = b.bound();
    if (b.done()) return complete_here();
    if (b.at_tail_point()) {
      if (!tick()) {
        abandoned = std::min(abandoned, entry_bound);
        return false;
      }
      if (over_limit(entry_bound + b.tail_delta())) return true;
      std::vector<int> closed_was, tail_was;
      b.apply_tail(closed_was, tail_was);
      trace->event("open", b.placed(), b.bound(), b.den());
      const bool go = dive();
      b.undo_tail(closed_was, tail_was);
      if (!go) {
        abandoned = std::min(abandoned, entry_bound);
        return false;
      }
      return true;
    }
    for (const move& mv : b.moves()) {
      if (!tick()) {
        abandoned = std::min(abandoned, entry_bound);
        return false;
      }
      if (over_limit(entry_bound + mv.delta)) {
        trace->event("prune", b.placed(), entry_bound + mv.delta, b.den());
        continue;
      }
      bool go = true;
      if (mv.kind == 0) {
        std::vector<int> was = b.apply_close();
        if (b.closed_bucket_ok(was)) {
          trace->event("open", b.placed(), b.bound(), b.den());
          go = dive();
        }
        b.undo_close(std::move(was));
      } else {
        b.apply_add(mv.item);
        trace->event("open", b.placed(), b.bound(), b.den());
        go = dive();
        b.undo_add(mv.item);
      }
      if (!go) {
        abandoned = std::min(abandoned, entry_bound);
        return false;
      }
    }
    return true;
  }
};

}  // namespace

search_outcome run_assign_search(const scaled_matrix& m, const variant_spec& v,
                                 const solve_config& cfg,
                                 const std::vector<std::vector<int>>& hint_assignments,
                                 trace_sink& trace) {
  search_ticker ticker;
  ticker.time_limit_s = cfg.time_limit_s;
  ticker.node_limit = cfg.node_limit;
  shared_incumbent shared;
  for (const std::vector<int>& asg : hint_assignments)
    shared.offer(cost_t(m.distance_num(asg)), asg);

  driver d(m, v);
  d.ticker = &ticker;
  d.trace = &trace;
  d.shared = &shared;
  d.best = shared.read();
  const bool complete = d.dive();
  d.flush();

  search_outcome out;
  out.nodes = ticker.nodes.load();
  out.complete = complete;
  out.has_incumbent = shared.has;
  out.best_num = shared.value;
  if (out.complete) {
    out.bound_num = out.has_incumbent ? out.best_num : cost_inf();
  } else {
    out.bound_num = std::min(d.abandoned, out.best_num);
    if (d.abandoned == cost_inf())
      out.bound_num = std::min(out.bound_num, builder(m, v).bound());
  }

  if (out.complete && out.has_incumbent) {
    driver col(m, v);
    trace_sink silent;
    col.ticker = &ticker;
    col.trace = &silent;
    col.shared = &shared;
    col.target = out.best_num;
    col.cap = static_cast<std::size_t>(std::max(1, cfg.optima_cap));
    col.dive();
    out.optima = std::move(col.found);
    out.nodes += col.collect_nodes;
  } else if (out.has_incumbent) {
    out.optima.push_back(shared.assignment);
  }
  return out;
}

}  // namespace bucketorder::detail
