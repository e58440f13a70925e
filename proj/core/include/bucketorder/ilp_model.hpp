#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "bucketorder/pair_order_matrix.hpp"
#include "bucketorder/rational.hpp"

namespace bucketorder {

enum class var_kind { binary, continuous };

struct lp_variable {
  std::string name;
  var_kind kind = var_kind::binary;
  rational lb;  // binaries always have bounds {0, 1}
  rational ub;
};

// coefficient * variable, referencing the variable by index
struct lp_term {
  int var = -1;
  rational coeff;
};

enum class row_sense { le, ge, eq };

struct lp_constraint {
  std::string name;
  std::vector<lp_term> terms;
  row_sense sense = row_sense::le;
  rational rhs;
};

// always a minimization
struct lp_objective {
  std::vector<lp_term> terms;
  rational constant;
};

enum class model_family { base, assignment, representative, tcu, fair };

// What a model is, beyond its rows: enough for encode_solution to map a
// bucket order onto the model's variables and for reports to label output.
struct model_info {
  model_family family = model_family::base;
  int n = 0;
  // y columns for assignment/fair, p for representative; 0 when the family
  // has no bucket-indexed variables
  int buckets = 0;
  // encode_solution requires exactly `buckets` buckets (otherwise at most)
  bool fixed_bucket_count = false;
  std::vector<int> sizes;  // exact bucket sizes when prescribed, else empty
  int tail = -1;           // tcu: n - k
  bool no_ties = false;
  bool relaxed_x = false;
  // d variables present; c is kept so encode_solution can set them exactly
  bool has_deviation = false;
  pair_order_matrix c;
  std::string label;
};

class ilp_model {
 public:
  // Building interface, used by the model builders.  A model handed to a
  // caller is immutable by convention; operations that extend a model
  // (exclusion cuts, variable fixings) return a modified copy.
  int add_variable(const std::string& name, var_kind kind, rational lb, rational ub);
  int add_binary(const std::string& name) { return add_variable(name, var_kind::binary, 0, 1); }
  void add_constraint(const std::string& name, std::vector<lp_term> terms, row_sense sense,
                      rational rhs);
  void set_objective(std::vector<lp_term> terms, rational constant = rational());

  const std::vector<lp_variable>& variables() const { return vars_; }
  const std::vector<lp_constraint>& constraints() const { return rows_; }
  const lp_objective& objective() const { return objective_; }

  int variable_index(const std::string& name) const;  // -1 when absent
  const lp_variable& variable(int index) const { return vars_[static_cast<std::size_t>(index)]; }
  int variable_count() const { return static_cast<int>(vars_.size()); }
  int constraint_count() const { return static_cast<int>(rows_.size()); }

  lp_constraint& row(int index) { return rows_[static_cast<std::size_t>(index)]; }
  lp_variable& var(int index) { return vars_[static_cast<std::size_t>(index)]; }

  model_info info;

 private:
  std::vector<lp_variable> vars_;
  std::vector<lp_constraint> rows_;
  lp_objective objective_;
  std::unordered_map<std::string, int> index_;
};

struct check_report {
  bool feasible = true;
  std::vector<std::string> violated;  // names of failed rows / variable domains
  rational objective;
};

// Evaluates every constraint and the variable domains exactly.  `values` must
// assign one value per model variable, in variable order.
check_report check_solution(const ilp_model& m, const std::vector<rational>& values);
// Same, with values given by variable name; throws when a variable is missing.
check_report check_solution(const ilp_model& m, const std::map<std::string, rational>& values);

// 1-based display names shared by builders, export, and reports; arguments
// are 0-based item indices (bucket positions for u stay 1-based already).
std::string x_name(int r, int s);
std::string y_name(int r, int u);
std::string d_name(int r, int s);
std::string alpha_name(int r);
std::string beta_name(int r, int s);
std::string z_name(int r);

}  // namespace bucketorder
