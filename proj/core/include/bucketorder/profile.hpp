#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bucketorder/pair_order_matrix.hpp"

namespace bucketorder {

// Strict-order ballot profile in the PrefLib style.  Ballots may be
// incomplete (rank only some items); they may not contain ties.
struct preference_profile {
  int n = 0;
  std::int64_t voters = 0;  // sum of ballot multiplicities
  std::vector<std::string> labels;
  struct ballot {
    std::int64_t multiplicity = 0;
    std::vector<int> items;  // 0-based, best first, distinct
  };
  std::vector<ballot> ballots;
};

struct parse_result {
  preference_profile profile;
  std::vector<std::string> warnings;
};

// Parses the PrefLib text format:
//   # NUMBER ALTERNATIVES: n
//   # NUMBER VOTERS: m
//   # ALTERNATIVE NAME 3: some label
//   5: 3,1,2
// Unknown header keys produce warnings; malformed lines, tied ballots
// (brace groups, as in .toc/.toi files), repeated or out-of-range items all
// raise std::invalid_argument naming the line number.
parse_result parse_profile(const std::string& text);
parse_result load_profile(const std::string& path);

// a_rs: weighted number of ballots ranking r before s.  Pairs that no ballot
// compares stay zero on both sides.
struct preference_counts {
  int n = 0;
  std::int64_t voters = 0;
  std::vector<std::string> labels;
  std::vector<std::int64_t> wins;  // n*n, row major, diagonal zero

  std::int64_t at(int r, int s) const { return wins[static_cast<std::size_t>(r) * n + s]; }
};
preference_counts preference_counts_of(const preference_profile& profile);

// c_rs = a_rs / (a_rs + a_sr), or 1/2 when the pair was never compared.
pair_order_matrix matrix_from_counts(const preference_counts& counts);

}  // namespace bucketorder
