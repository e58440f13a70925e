#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bucketorder/bucket_order.hpp"
#include "bucketorder/rational.hpp"

namespace bucketorder {

// Pair order matrix: entry (r, s) is the degree to which r precedes s.
// Invariants checked by validate(): entries in [0, 1], diagonal 1/2, and
// complementarity c_rs + c_sr = 1.
struct pair_order_matrix {
  int n = 0;
  std::vector<rational> entries;       // n*n, row major
  std::vector<std::string> labels;     // optional item names, size n or empty

  pair_order_matrix() = default;
  explicit pair_order_matrix(int items);
  static pair_order_matrix uniform(int items);  // every entry 1/2

  rational& at(int r, int s) { return entries[static_cast<std::size_t>(r) * n + s]; }
  const rational& at(int r, int s) const {
    return entries[static_cast<std::size_t>(r) * n + s];
  }

  void validate() const;  // throws std::invalid_argument naming 1-based indices
};

// Matrix of a bucket order: entry 1 when r precedes s, 1/2 when tied (and on
// the diagonal), 0 when s precedes r.  Such matrices are exactly the
// pair order matrices with entries in {0, 1/2, 1} whose preference relation
// is transitive.
pair_order_matrix bucket_matrix(const bucket_order& b);
bool is_bucket_matrix(const pair_order_matrix& m);
std::optional<bucket_order> order_from_bucket_matrix(const pair_order_matrix& m);

// D(B, C): sum of |b_rs - c_rs| over all ordered pairs, computed exactly.
rational distance(const bucket_order& b, const pair_order_matrix& c);

// Entry-wise rounding of C to the nearest of {0, 1/2, 1}, ties kept at 1/2:
// 1 when c > 3/4, 0 when c < 1/4, 1/2 otherwise.  Its distance to C bounds
// the optimal distance of any bucket order from below; the bound is attained
// exactly when the rounded matrix is itself a bucket matrix.
struct utopian_result {
  pair_order_matrix matrix;
  rational bound;
  bool attainable = false;
};
utopian_result utopian(const pair_order_matrix& c);

}  // namespace bucketorder
