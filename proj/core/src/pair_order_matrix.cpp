#include "bucketorder/pair_order_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "scaled.hpp"

namespace bucketorder {

namespace {

const rational kHalf(1, 2);
const rational kQuarter(1, 4);
const rational kThreeQuarters(3, 4);

std::string cell(int r, int s) {
  return "(" + std::to_string(r + 1) + "," + std::to_string(s + 1) + ")";
}

}  // namespace

pair_order_matrix::pair_order_matrix(int items)
    : n(items), entries(static_cast<std::size_t>(items) * items, rational(0)) {
  if (items <= 0) throw std::invalid_argument("matrix needs at least one item");
  for (int r = 0; r < n; ++r) at(r, r) = kHalf;
}

pair_order_matrix pair_order_matrix::uniform(int items) {
  pair_order_matrix m(items);
  std::fill(m.entries.begin(), m.entries.end(), kHalf);
  return m;
}

void pair_order_matrix::validate() const {
  if (n <= 0) throw std::invalid_argument("matrix needs at least one item");
  if (entries.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("matrix entry count does not match size " + std::to_string(n));
  }
  if (!labels.empty() && labels.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("label count does not match size " + std::to_string(n));
  }
  for (int r = 0; r < n; ++r) {
    if (at(r, r) != kHalf) {
      throw std::invalid_argument("diagonal entry " + cell(r, r) + " must be 1/2");
    }
    for (int s = 0; s < n; ++s) {
      const rational& v = at(r, s);
      if (v.is_negative() || v > rational(1)) {
        throw std::invalid_argument("entry " + cell(r, s) + " = " + v.str() +
                                    " outside [0, 1]");
      }
      if (s > r && at(r, s) + at(s, r) != rational(1)) {
        throw std::invalid_argument("entries " + cell(r, s) + " and " + cell(s, r) +
                                    " do not sum to 1");
      }
    }
  }
}

pair_order_matrix bucket_matrix(const bucket_order& b) {
  int n = b.item_count();
  b.validate(n);
  pair_order_matrix m(n);
  std::vector<int> a = b.assignment();
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      if (r == s) continue;
      if (a[r] < a[s]) {
        m.at(r, s) = rational(1);
      } else if (a[r] == a[s]) {
        m.at(r, s) = kHalf;
      }  // else 0
    }
  }
  return m;
}

std::optional<bucket_order> order_from_bucket_matrix(const pair_order_matrix& m) {
  m.validate();
  for (const rational& v : m.entries) {
    if (!v.is_zero() && v != kHalf && v != rational(1)) return std::nullopt;
  }
  // Items with equal win counts form candidate buckets; verification below
  // rejects anything that is not transitive.
  std::vector<int> wins(m.n, 0);
  for (int r = 0; r < m.n; ++r) {
    for (int s = 0; s < m.n; ++s) {
      if (r != s && m.at(r, s) == rational(1)) ++wins[r];
    }
  }
  std::vector<int> items(m.n);
  std::iota(items.begin(), items.end(), 0);
  std::stable_sort(items.begin(), items.end(),
                   [&](int a, int b) { return wins[a] > wins[b]; });
  bucket_order b;
  for (int i = 0; i < m.n; ++i) {
    if (i == 0 || wins[items[i]] != wins[items[i - 1]]) b.buckets.emplace_back();
    b.buckets.back().push_back(items[i]);
  }
  b.normalize();
  std::vector<int> a = b.assignment();
  for (int r = 0; r < m.n; ++r) {
    for (int s = 0; s < m.n; ++s) {
      if (r == s) continue;
      rational expect = a[r] < a[s] ? rational(1) : a[r] == a[s] ? kHalf : rational(0);
      if (m.at(r, s) != expect) return std::nullopt;
    }
  }
  return b;
}

bool is_bucket_matrix(const pair_order_matrix& m) {
  return order_from_bucket_matrix(m).has_value();
}

rational distance(const bucket_order& b, const pair_order_matrix& c) {
  c.validate();
  if (b.item_count() != c.n) {
    throw std::invalid_argument("order has " + std::to_string(b.item_count()) +
                                " items, matrix has " + std::to_string(c.n));
  }
  b.validate(c.n);
  detail::scaled_matrix sc(c);
  return detail::to_rational(sc.distance_num(b.assignment()), sc.den);
}

utopian_result utopian(const pair_order_matrix& c) {
  c.validate();
  utopian_result out;
  out.matrix = pair_order_matrix(c.n);
  for (int r = 0; r < c.n; ++r) {
    for (int s = 0; s < c.n; ++s) {
      if (r == s) continue;
      const rational& v = c.at(r, s);
      out.matrix.at(r, s) = v > kThreeQuarters ? rational(1) : v < kQuarter ? rational(0) : kHalf;
    }
  }
  // The threshold choice minimizes each pair's contribution independently, so
  // the bound is the sum of per-pair minima; accumulate it scaled.
  detail::scaled_matrix sc(c);
  __int128 total = 0;
  for (int r = 0; r < c.n; ++r) {
    for (int s = r + 1; s < c.n; ++s) total += sc.cost_min(r, s);
  }
  out.bound = detail::to_rational(total, sc.den);
  out.attainable = is_bucket_matrix(out.matrix);
  return out;
}

}  // namespace bucketorder
