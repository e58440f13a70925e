#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bucketorder/bucket_order.hpp"
#include "bucketorder/rational.hpp"

namespace bucketorder {

// Absolute bound on how many items of one group may appear in a single bucket
// or in a prefix of buckets.  `group` is a 0-based group index; `at` is the
// 1-based bucket position (or prefix length).  Unset sides are unbounded.
struct group_bound {
  int group = 0;
  int at = 1;
  std::optional<int> lower;
  std::optional<int> upper;

  bool operator==(const group_bound&) const = default;
};

// Proportional representation requirements: for group i and prefix length l,
// the share of the first l buckets drawn from group i must lie within
// [lambda_il, mu_il] after integer rounding, i.e.
//   floor(lambda_il * T_l) <= S_il <= ceil(mu_il * T_l)
// where T_l counts all items in the first l buckets and S_il those from
// group i.  Grid entries that are not stored default to 0 (lambda) and
// 1 (mu), which impose nothing.
struct fairness_spec {
  std::vector<std::vector<int>> groups;       // 0-based items, partition of 0..n-1
  std::vector<std::vector<rational>> lambda;  // [group][l-1]
  std::vector<std::vector<rational>> mu;      // [group][l-1]
  std::vector<group_bound> bucket_bounds;
  std::vector<group_bound> prefix_bounds;

  int group_count() const { return static_cast<int>(groups.size()); }
  rational lambda_at(int i, int l) const;
  rational mu_at(int i, int l) const;

  // item -> group index; throws unless groups partition 0..n-1
  std::vector<int> group_of(int n) const;
  void validate(int n) const;

  bool operator==(const fairness_spec&) const = default;
};

// Logical-consistency warnings for a fairness parameter grid: bounds that sum
// past 1, final-prefix shares that contradict the group sizes, and the
// prefix-size caps each such bound implies.  Diagnostics only; an unfortunate
// grid still builds a (possibly infeasible) model.
std::vector<std::string> validate_fairness_params(const fairness_spec& f, int n);

// floor(lambda*t) <= s <= ceil(mu*t), evaluated in exact integer arithmetic
bool fair_share_ok(const rational& lambda, const rational& mu, long long s, long long t);

enum class variant_kind { obop, fixed_buckets, equal_sizes, prescribed_sizes, tcu, fair };

// Which bucket orders count as solutions.  `satisfies` is the semantic
// condition each ILP formulation must reproduce, and the filter used by the
// brute-force solver.
struct variant_spec {
  variant_kind kind = variant_kind::obop;
  int p = 0;               // fixed_buckets, equal_sizes
  int q = 0;               // equal_sizes
  std::vector<int> sizes;  // prescribed_sizes, best bucket first
  int k = 0;               // tcu: positions kept out of the collapsed tail
  fairness_spec fairness;
  std::optional<int> fair_p;                   // fair: exact bucket count
  std::optional<std::vector<int>> fair_sizes;  // fair: exact bucket sizes
  int max_buckets = 0;  // fair: cap on the bucket count, 0 = n
  int min_buckets = 0;  // fair: this many leading buckets must be non-empty

  static variant_spec obop();
  static variant_spec fixed_buckets(int p);
  static variant_spec equal_sizes(int p, int q);
  static variant_spec prescribed_sizes(std::vector<int> sizes);
  static variant_spec tcu(int k);
  static variant_spec fair(fairness_spec f);

  // bucket index set of the fair variant: fair_p, else max_buckets, else n
  int fair_bucket_limit(int n) const;

  void validate(int n) const;  // throws std::invalid_argument
  // pre: b valid for n and the spec valid
  bool satisfies(const bucket_order& b, int n) const;

  std::string str() const;
  std::string to_json() const;
  static variant_spec from_json(const std::string& text);

  bool operator==(const variant_spec&) const = default;
};

}  // namespace bucketorder
