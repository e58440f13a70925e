#include "scaled.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bucketorder::detail {

scaled_matrix::scaled_matrix(const pair_order_matrix& c) : n(c.n) {
  std::int64_t l = 1;
  for (const rational& v : c.entries) {
    std::int64_t d = v.den();
    std::int64_t g = std::gcd(l, d);
    __int128 next = static_cast<__int128>(l) * (d / g);
    // Headroom so that per-pair costs (at most 2*den) stay in int64.
    if (next > (INT64_MAX / 4)) {
      throw std::overflow_error("matrix common denominator too large for exact arithmetic");
    }
    l = static_cast<std::int64_t>(next);
  }
  den = l;
  num.resize(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < num.size(); ++i) {
    num[i] = c.entries[i].num() * (den / c.entries[i].den());
  }
}

std::int64_t scaled_matrix::cost_min(int r, int s) const {
  return std::min({cost_before(r, s), cost_tied(r, s), cost_after(r, s)});
}

__int128 scaled_matrix::distance_num(const std::vector<int>& assignment) const {
  __int128 total = 0;
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) {
      if (assignment[r] < assignment[s]) {
        total += cost_before(r, s);
      } else if (assignment[r] == assignment[s]) {
        total += cost_tied(r, s);
      } else {
        total += cost_after(r, s);
      }
    }
  }
  return total;
}

rational to_rational(__int128 num, __int128 den) {
  bool neg = (num < 0) != (den < 0);
  __int128 an = num < 0 ? -num : num;
  __int128 ad = den < 0 ? -den : den;
  __int128 a = an, b = ad;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  an /= a;
  ad /= a;
  if (an > INT64_MAX || ad > INT64_MAX) {
    throw std::overflow_error("exact value does not fit a 64-bit rational");
  }
  return rational(neg ? -static_cast<std::int64_t>(an) : static_cast<std::int64_t>(an),
                  static_cast<std::int64_t>(ad));
}

}  // namespace bucketorder::detail
