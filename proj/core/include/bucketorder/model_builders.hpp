#pragma once

#include <optional>
#include <vector>

#include "bucketorder/ilp_model.hpp"
#include "bucketorder/pair_order_matrix.hpp"
#include "bucketorder/variant.hpp"

namespace bucketorder {

// Objective of the base weak-order model.  The distance objective carries the
// pair order matrix and adds deviation variables; the precedence-count
// objective rewards agreement with the counts (min -sum a_rs x_rs); custom
// supplies raw coefficients for x_rs plus an additive constant.
struct objective_spec {
  enum class form { distance, precedence_counts, custom };
  form type = form::distance;
  pair_order_matrix c;
  std::vector<std::vector<rational>> coeffs;  // n x n, diagonal ignored
  rational constant;

  static objective_spec distance(pair_order_matrix c);
  static objective_spec precedence_counts(std::vector<std::vector<rational>> counts);
  static objective_spec custom_coeffs(std::vector<std::vector<rational>> coeffs,
                                      rational constant = rational());
};

struct base_options {
  bool no_ties = false;  // comparability becomes equality: linear orders only
};

// x_rs binaries with comparability and transitivity; every weak order on n
// items corresponds to exactly one feasible x.
ilp_model build_base_model(int n, const objective_spec& objective,
                           const base_options& opt = {});

// base model with the distance objective: deviation variables d_rs and the
// two linearization rows per pair, objective 2 * sum d_rs
ilp_model build_obop_model(const pair_order_matrix& c);

struct assignment_options {
  // at most one size mode: every bucket size q, or bucket u exactly q_u items
  std::optional<int> equal_size;
  std::optional<std::vector<int>> prescribed;
  // redundant rows that are valid inequalities; together with relax_x these
  // span the documented formulation variants
  bool add_comparability = false;
  bool add_transitivity = false;
  bool add_base_valid_inequalities = false;  // shorthand for both of the above
  bool relax_x = false;                      // x continuous in [0, 1]
};

// item-to-bucket assignment formulation of the fixed-bucket-count problem
ilp_model build_p_assignment_model(const pair_order_matrix& c, int p,
                                   const assignment_options& opt = {});

struct representative_options {
  // mutually exclusive: substitute replaces the two tie-forcing rows with the
  // combined row; add keeps everything and appends it
  bool substitute_9 = false;
  bool add_9 = false;
};

// representative formulation: each bucket is named by its highest-index member
ilp_model build_p_representative_model(const pair_order_matrix& c, int p,
                                       const representative_options& opt = {});

struct tail_bound {
  std::vector<int> items;  // 0-based
  std::optional<int> lower;
  std::optional<int> upper;
};

struct tcu_options {
  // bounds on how many members of each listed set land in the collapsed tail
  std::vector<tail_bound> tail_bounds;
};

// tail-collapsed model: the last bucket has exactly n-k items, all ranked
// strictly after everything else; the top k positions keep full structure
ilp_model build_tcu_model(const pair_order_matrix& c, int k, const tcu_options& opt = {});

struct fair_options {
  std::optional<int> fixed_p;                  // exactly this many buckets
  std::optional<std::vector<int>> capacities;  // exact bucket sizes
  int max_buckets = 0;                         // cap on the bucket count, 0 = n
  int min_buckets = 0;                         // this many leading buckets non-empty
};

// proportional-representation model over up to n buckets with empty buckets
// pushed to the end; fairness rows are the exact linearization of
// floor(lambda*T) <= S <= ceil(mu*T)
ilp_model build_fair_model(const pair_order_matrix& c, const fairness_spec& f,
                           const fair_options& opt = {});

struct build_options {
  bool representative = false;  // fixed-bucket-count variant only
  // size modes always come from the variant; only flags are read from these
  assignment_options assignment;
  representative_options rep;
  tcu_options tcu;
};

// variant dispatcher used by the solver checks and the command line
ilp_model build_model(const pair_order_matrix& c, const variant_spec& v,
                      const build_options& opt = {});

// Maps a bucket order onto the model's variables: x from precedence, y from
// bucket membership, representatives by the highest-index rule, z from the
// tail bucket, d set to |b_rs - c_rs| exactly.  Throws when the order cannot
// index the model's variables (wrong bucket count for a fixed-count model,
// more buckets than the model declares).
std::vector<rational> encode_solution(const bucket_order& b, const ilp_model& m);

// Appends a no-good row over the x variables: at least one of them must
// differ from the given feasible assignment.  Other weak orders stay feasible.
ilp_model add_exclusion_cut(const ilp_model& m, const std::vector<rational>& values);

// Restricts a base model to the linear extensions of b: comparability becomes
// equality and x_rs is fixed to 1 wherever b puts r strictly before s.
ilp_model fix_consistent_permutation(const ilp_model& m, const bucket_order& b);

}  // namespace bucketorder
