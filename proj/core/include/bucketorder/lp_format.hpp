#pragma once

#include <string>

#include "bucketorder/ilp_model.hpp"

namespace bucketorder {

// CPLEX-LP style text: Minimize / Subject To / Bounds / Binaries / End, one
// row per line, deterministic variable names.  Every number is exact: each
// row is scaled to integers by the lcm of its denominators (scaling a row by
// a positive integer keeps the feasible set), and the objective scale is
// recorded in a leading `\ objective-scale:` comment so a reader can undo it.
std::string export_lp(const ilp_model& m);

// Parses the dialect export_lp writes and rebuilds the model: variables in
// order of first appearance, objective divided back by the recorded scale.
// Only structure and numbers survive the round trip (model_info does not),
// so the result is meant for check_solution, not for encode_solution.
ilp_model import_lp(const std::string& text);

}  // namespace bucketorder
