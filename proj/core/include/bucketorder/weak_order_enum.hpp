#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bucketorder/bucket_order.hpp"

namespace bucketorder {

// Number of weak orders on n items (ordered Bell numbers): 1, 1, 3, 13, 75,
// 541, ...  Exact for n <= 16, throws beyond.
std::uint64_t weak_order_count(int n);

// Visits every weak order on n items exactly once, in canonical order: bucket
// count ascending, then lexicographic on the assignment vector.  The visitor
// returns false to stop early; the function returns false when stopped.
// Refuses n > 10 (the count estimate is part of the message).
bool for_each_weak_order(int n, const std::function<bool(const bucket_order&)>& visit);

// Materialized variant, refused above n = 8 where the list no longer fits
// comfortably in memory.
std::vector<bucket_order> enumerate_weak_orders(int n);

// Linear orders obtained by permuting items inside each bucket of b, each a
// bucket order of singletons, enumerated in lexicographic order of the item
// sequence.  The count is the product of bucket-size factorials; both
// functions refuse when it exceeds 10^7.
bool for_each_consistent_linear_extension(const bucket_order& b,
                                          const std::function<bool(const bucket_order&)>& visit);
std::vector<bucket_order> consistent_linear_extensions(const bucket_order& b);
std::uint64_t consistent_linear_extension_count(const bucket_order& b);

}  // namespace bucketorder
