#include "bucketorder/ilp_model.hpp"

#include <stdexcept>

namespace bucketorder {

int ilp_model::add_variable(const std::string& name, var_kind kind, rational lb, rational ub) {
  if (name.empty() || name.size() > 255)
    throw std::invalid_argument("variable name must have 1..255 characters");
  if (index_.count(name)) throw std::invalid_argument("duplicate variable name " + name);
  if (kind == var_kind::binary && (lb != rational(0) || ub != rational(1)))
    throw std::invalid_argument("binary variable " + name + " must have bounds {0,1}");
  if (ub < lb) throw std::invalid_argument("empty bound interval for " + name);
  int id = static_cast<int>(vars_.size());
  vars_.push_back({name, kind, lb, ub});
  index_.emplace(name, id);
  return id;
}

void ilp_model::add_constraint(const std::string& name, std::vector<lp_term> terms,
                               row_sense sense, rational rhs) {
  if (name.empty() || name.size() > 255)
    throw std::invalid_argument("constraint name must have 1..255 characters");
  for (const lp_term& t : terms)
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
      throw std::invalid_argument("constraint " + name + " references an undeclared variable");
  rows_.push_back({name, std::move(terms), sense, rhs});
}

void ilp_model::set_objective(std::vector<lp_term> terms, rational constant) {
  for (const lp_term& t : terms)
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
      throw std::invalid_argument("objective references an undeclared variable");
  objective_ = {std::move(terms), constant};
}

int ilp_model::variable_index(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

check_report check_solution(const ilp_model& m, const std::vector<rational>& values) {
  if (values.size() != m.variables().size())
    throw std::invalid_argument("assignment has " + std::to_string(values.size()) +
                                " values for " + std::to_string(m.variables().size()) +
                                " variables");
  check_report report;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const lp_variable& v = m.variables()[i];
    bool ok = values[i] >= v.lb && values[i] <= v.ub;
    if (ok && v.kind == var_kind::binary) ok = values[i].is_integer();
    if (!ok) report.violated.push_back("domain(" + v.name + ")");
  }
  for (const lp_constraint& row : m.constraints()) {
    rational lhs;
    for (const lp_term& t : row.terms) lhs += t.coeff * values[static_cast<std::size_t>(t.var)];
    bool ok = row.sense == row_sense::le   ? lhs <= row.rhs
              : row.sense == row_sense::ge ? lhs >= row.rhs
                                           : lhs == row.rhs;
    if (!ok) report.violated.push_back(row.name);
  }
  report.feasible = report.violated.empty();
  report.objective = m.objective().constant;
  for (const lp_term& t : m.objective().terms)
    report.objective += t.coeff * values[static_cast<std::size_t>(t.var)];
  return report;
}

check_report check_solution(const ilp_model& m, const std::map<std::string, rational>& values) {
  std::vector<rational> ordered;
  ordered.reserve(m.variables().size());
  for (const lp_variable& v : m.variables()) {
    auto it = values.find(v.name);
    if (it == values.end()) throw std::invalid_argument("missing value for variable " + v.name);
    ordered.push_back(it->second);
  }
  return check_solution(m, ordered);
}

std::string x_name(int r, int s) {
  return "x_" + std::to_string(r + 1) + "_" + std::to_string(s + 1);
}
std::string y_name(int r, int u) { return "y_" + std::to_string(r + 1) + "_" + std::to_string(u); }
std::string d_name(int r, int s) {
  return "d_" + std::to_string(r + 1) + "_" + std::to_string(s + 1);
}
std::string alpha_name(int r) { return "a_" + std::to_string(r + 1); }
std::string beta_name(int r, int s) {
  return "b_" + std::to_string(r + 1) + "_" + std::to_string(s + 1);
}
std::string z_name(int r) { return "z_" + std::to_string(r + 1); }

}  // namespace bucketorder
