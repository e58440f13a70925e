#pragma once

#include <cstdint>
#include <vector>

#include "bucketorder/pair_order_matrix.hpp"
#include "bucketorder/rational.hpp"

namespace bucketorder::detail {

// Integer view of a pair order matrix over one common denominator, the
// representation every exact solver path works in.  For an unordered pair
// r < s the contribution of both ordered entries to D(B, C), multiplied by
// den, is one of three integers depending on the relation chosen for the
// pair; state_cost lists them as [r-before-s, tied, s-before-r].  Totals are
// accumulated in 128 bits; den itself must fit in int64 (the constructor
// throws otherwise) which covers every realistic voter count.
struct scaled_matrix {
  int n = 0;
  std::int64_t den = 1;
  std::vector<std::int64_t> num;  // n*n, c_rs * den

  explicit scaled_matrix(const pair_order_matrix& c);

  std::int64_t at(int r, int s) const { return num[static_cast<std::size_t>(r) * n + s]; }

  // cost, in units of 1/den, of both ordered entries of pair {r, s}
  std::int64_t cost_before(int r, int s) const { return 2 * (den - at(r, s)); }
  std::int64_t cost_tied(int r, int s) const {
    std::int64_t d = den - 2 * at(r, s);
    return d < 0 ? -d : d;
  }
  std::int64_t cost_after(int r, int s) const { return 2 * at(r, s); }
  std::int64_t cost_min(int r, int s) const;

  // D(B, C) * den for the weak order given as a bucket-index assignment.
  __int128 distance_num(const std::vector<int>& assignment) const;
};

rational to_rational(__int128 num, __int128 den);

}  // namespace bucketorder::detail
