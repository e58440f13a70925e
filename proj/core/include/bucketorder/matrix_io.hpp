#pragma once

#include <string>

#include "bucketorder/pair_order_matrix.hpp"

namespace bucketorder {

// Comma-separated square matrix.  Entries are exact: "p/q", integers, or
// terminating decimals.  An optional first row that fails to parse as numbers
// is taken as item labels.  The loaded matrix is validated (entries in [0,1],
// diagonal 1/2, complementarity) with errors naming 1-based indices.
pair_order_matrix parse_matrix_csv(const std::string& text);
pair_order_matrix load_matrix_csv(const std::string& path);

// Writes labels (when present) and entries in the exact "p/q" form, so a
// save/load round trip is the identity.
std::string matrix_csv(const pair_order_matrix& m);
void save_matrix_csv(const pair_order_matrix& m, const std::string& path);

}  // namespace bucketorder
