#pragma once

#include <string>
#include <vector>

namespace bucketorder {

// Ordered partition of the items 0..n-1 into non-empty buckets.  Bucket 0 is
// the best position; items in one bucket are tied; items in an earlier bucket
// precede every item in a later one.  Items inside a bucket are kept sorted.
// The text form is 1-based: "4 | 1 3 | 2 5".
struct bucket_order {
  std::vector<std::vector<int>> buckets;

  int bucket_count() const { return static_cast<int>(buckets.size()); }
  int item_count() const;
  std::vector<int> sizes() const;

  // bucket index (0-based) per item; the canonical comparison key.
  std::vector<int> assignment() const;

  // Throws std::invalid_argument unless buckets form a partition of 0..n-1
  // with every bucket non-empty and internally sorted.
  void validate(int n) const;
  void normalize();  // sorts items inside each bucket

  std::string str() const;
  // Same text form with "||" before the final bucket, the display used when
  // the tail bucket has special meaning.  Requires at least two buckets.
  std::string str_tail_separated() const;

  // Accepts "|" and "||" as bucket separators.  When n >= 0 the items must be
  // exactly 1..n; otherwise n is inferred from the maximum item and the same
  // completeness requirement applies.
  static bucket_order parse(const std::string& text, int n = -1);

  friend bool operator==(const bucket_order& a, const bucket_order& b) {
    return a.buckets == b.buckets;
  }
  friend bool operator!=(const bucket_order& a, const bucket_order& b) { return !(a == b); }
  // Bucket count first, then lexicographic on the assignment vector: the
  // canonical order used for optima lists and enumeration.
  friend bool operator<(const bucket_order& a, const bucket_order& b);
};

}  // namespace bucketorder
