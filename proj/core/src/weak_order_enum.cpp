#include "bucketorder/weak_order_enum.hpp"

#include <algorithm>
#include <stdexcept>

namespace bucketorder {

namespace {

constexpr int kEnumCap = 10;
constexpr int kMaterializeCap = 8;
constexpr std::uint64_t kExtensionCap = 10'000'000;

bucket_order from_assignment(const std::vector<int>& assign, int p) {
  bucket_order b;
  b.buckets.assign(p, {});
  for (int r = 0; r < static_cast<int>(assign.size()); ++r) {
    b.buckets[assign[r]].push_back(r);
  }
  return b;  // items pushed in index order, so buckets are already sorted
}

// Enumerates surjective assignment vectors onto 0..p-1 in lexicographic
// order; missing buckets must still fit into the remaining positions.
bool visit_fixed_bucket_count(int n, int p,
                              const std::function<bool(const bucket_order&)>& visit) {
  std::vector<int> assign(n, 0);
  std::vector<int> first_use_count(p, 0);
  int used = 0;
  // Iterative depth-first walk over positions.
  int pos = 0;
  std::vector<int> value(n, -1);
  while (pos >= 0) {
    int v = ++value[pos];
    if (v >= p) {
      value[pos] = -1;
      --pos;
      if (pos >= 0) {
        int old = assign[pos];
        if (--first_use_count[old] == 0) --used;
      }
      continue;
    }
    int new_used = used + (first_use_count[v] == 0 ? 1 : 0);
    if ((p - new_used) > (n - pos - 1)) continue;  // cannot cover remaining buckets
    assign[pos] = v;
    if (++first_use_count[v] == 1) ++used;
    if (pos == n - 1) {
      if (!visit(from_assignment(assign, p))) return false;
      if (--first_use_count[v] == 0) --used;
    } else {
      ++pos;
    }
  }
  return true;
}

}  // namespace

std::uint64_t weak_order_count(int n) {
  if (n < 0) throw std::invalid_argument("negative item count");
  if (n > 16) throw std::overflow_error("weak order count overflows 64 bits beyond n = 16");
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  std::vector<std::vector<std::uint64_t>> choose(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    choose[i][0] = 1;
    for (int j = 1; j <= i; ++j) {
      choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : 0);
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= i; ++k) a[i] += choose[i][k] * a[i - k];
  }
  return a[n];
}

bool for_each_weak_order(int n, const std::function<bool(const bucket_order&)>& visit) {
  if (n < 1) throw std::invalid_argument("need at least one item");
  if (n > kEnumCap) {
    throw std::invalid_argument("refusing to enumerate weak orders for n = " + std::to_string(n) +
                                " (about " + std::to_string(weak_order_count(std::min(n, 16))) +
                                " orders); the cap is n = " + std::to_string(kEnumCap));
  }
  for (int p = 1; p <= n; ++p) {
    if (!visit_fixed_bucket_count(n, p, visit)) return false;
  }
  return true;
}

std::vector<bucket_order> enumerate_weak_orders(int n) {
  if (n > kMaterializeCap) {
    throw std::invalid_argument("refusing to materialize weak orders for n = " +
                                std::to_string(n) + " (about " +
                                std::to_string(weak_order_count(std::min(n, 16))) +
                                " orders); the cap is n = " + std::to_string(kMaterializeCap));
  }
  std::vector<bucket_order> out;
  out.reserve(weak_order_count(n));
  for_each_weak_order(n, [&](const bucket_order& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

std::uint64_t consistent_linear_extension_count(const bucket_order& b) {
  std::uint64_t count = 1;
  for (const auto& bucket : b.buckets) {
    for (std::uint64_t i = 2; i <= bucket.size(); ++i) {
      count *= i;
      if (count > kExtensionCap) return kExtensionCap + 1;
    }
  }
  return count;
}

bool for_each_consistent_linear_extension(
    const bucket_order& b, const std::function<bool(const bucket_order&)>& visit) {
  b.validate(b.item_count());
  if (consistent_linear_extension_count(b) > kExtensionCap) {
    throw std::invalid_argument("refusing to enumerate more than " +
                                std::to_string(kExtensionCap) + " linear extensions");
  }
  std::vector<std::vector<int>> perm(b.buckets.begin(), b.buckets.end());
  while (true) {
    bucket_order linear;
    for (const auto& bucket : perm) {
      for (int r : bucket) linear.buckets.push_back({r});
    }
    if (!visit(linear)) return false;
    // Odometer with the last bucket fastest keeps the item sequence lexicographic.
    int u = static_cast<int>(perm.size()) - 1;
    while (u >= 0 && !std::next_permutation(perm[u].begin(), perm[u].end())) --u;
    if (u < 0) return true;
  }
}

std::vector<bucket_order> consistent_linear_extensions(const bucket_order& b) {
  std::vector<bucket_order> out;
  for_each_consistent_linear_extension(b, [&](const bucket_order& linear) {
    out.push_back(linear);
    return true;
  });
  return out;
}

}  // namespace bucketorder
