#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "bucketorder/matrix_io.hpp"
#include "bucketorder/profile.hpp"

using namespace bucketorder;

namespace {

const char* kSmallProfile =
    "# NUMBER ALTERNATIVES: 4\n"
    "# NUMBER VOTERS: 7\n"
    "# ALTERNATIVE NAME 1: alpha\n"
    "# ALTERNATIVE NAME 2: beta\n"
    "3: 1,2,3,4\n"
    "2: 4,3,2,1\n"
    "2: 2,1\n";

}  // namespace

TEST_CASE("profile parsing reads headers, multiplicities, and partial ballots") {
  const parse_result pr = parse_profile(kSmallProfile);
  const preference_profile& p = pr.profile;
  CHECK(p.n == 4);
  CHECK(p.voters == 7);
  REQUIRE(p.ballots.size() == 3);
  CHECK(p.ballots[0].multiplicity == 3);
  CHECK(p.ballots[2].items == std::vector<int>{1, 0});
  REQUIRE(p.labels.size() == 4);
  CHECK(p.labels[0] == "alpha");
  CHECK(p.labels[1] == "beta");
}

TEST_CASE("voter total mismatch warns and keeps the actual sum") {
  const parse_result pr =
      parse_profile("# NUMBER ALTERNATIVES: 2\n# NUMBER VOTERS: 5\n1: 1,2\n");
  CHECK(pr.profile.voters == 1);
  REQUIRE(pr.warnings.size() == 1);
  CHECK(pr.warnings[0].find("NUMBER VOTERS says 5") != std::string::npos);
}

TEST_CASE("unknown header keys warn instead of failing") {
  const parse_result pr = parse_profile(
      "# FROBNICATE: x\n# NUMBER ALTERNATIVES: 2\n# NUMBER VOTERS: 1\n1: 2,1\n");
  CHECK(pr.profile.n == 2);
  REQUIRE(pr.warnings.size() == 1);
  CHECK(pr.warnings[0].find("FROBNICATE") != std::string::npos);
  // standard metadata headers stay silent
  CHECK(parse_profile("# FILE NAME: x\n# NUMBER ALTERNATIVES: 1\n# NUMBER VOTERS: 1\n1: 1\n")
            .warnings.empty());
}

TEST_CASE("tied ballot data types are rejected up front") {
  CHECK_THROWS_AS(
      parse_profile("# DATA TYPE: toc\n# NUMBER ALTERNATIVES: 2\n1: 1,2\n"),
      std::invalid_argument);
}

TEST_CASE("malformed ballots are rejected with the line number") {
  const auto expect_throw = [](const std::string& body, const char* needle) {
    const std::string text = "# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 1\n" + body;
    try {
      parse_profile(text);
      FAIL_CHECK("no exception for: " << body);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_throw("1: 1,{2,3}\n", "line 3");   // tied group
  expect_throw("1: 1,4\n", "line 3");       // out of range
  expect_throw("1: 1,1,2\n", "line 3");     // repeated item
  expect_throw("1: \n", "line 3");          // empty ballot
  expect_throw("x: 1,2\n", "line 3");       // bad multiplicity
}

TEST_CASE("pairwise counts weight ballots and skip unranked pairs") {
  const preference_counts counts = preference_counts_of(parse_profile(kSmallProfile).profile);
  CHECK(counts.n == 4);
  CHECK(counts.voters == 7);
  // item 1 vs 2: three full ballots say 1<2, two reversed say 2<1, the
  // partial "2,1" ballots add two more for 2
  CHECK(counts.at(0, 1) == 3);
  CHECK(counts.at(1, 0) == 4);
  // the partial ballot never mentions 3 or 4
  CHECK(counts.at(0, 2) == 3);
  CHECK(counts.at(2, 0) == 2);
  CHECK(counts.at(2, 3) == 3);
  CHECK(counts.at(3, 2) == 2);
  CHECK(counts.at(0, 0) == 0);
}

TEST_CASE("matrix from counts divides and defaults uncompared pairs to a half") {
  preference_counts counts;
  counts.n = 3;
  counts.voters = 5;
  counts.wins.assign(9, 0);
  counts.wins[0 * 3 + 1] = 4;  // 4:1 between items 1 and 2
  counts.wins[1 * 3 + 0] = 1;
  const pair_order_matrix c = matrix_from_counts(counts);
  CHECK_NOTHROW(c.validate());
  CHECK(c.at(0, 1) == rational(4, 5));
  CHECK(c.at(1, 0) == rational(1, 5));
  CHECK(c.at(0, 2) == rational(1, 2));  // never compared
  CHECK(c.at(2, 1) == rational(1, 2));
  CHECK(c.at(1, 1) == rational(1, 2));
}

TEST_CASE("profile to matrix on the worked ballots") {
  const pair_order_matrix c =
      matrix_from_counts(preference_counts_of(parse_profile(kSmallProfile).profile));
  CHECK(c.at(0, 1) == rational(3, 7));
  CHECK(c.at(0, 2) == rational(3, 5));
  CHECK(c.labels.size() == 4);
}

TEST_CASE("matrix csv round trips exactly") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> den(1, 97);
  pair_order_matrix c(5);
  for (int r = 0; r < 5; ++r)
    for (int s = r + 1; s < 5; ++s) {
      const int d = den(rng);
      std::uniform_int_distribution<int> num(0, d);
      const int v = num(rng);
      c.at(r, s) = rational(v, d);
      c.at(s, r) = rational(d - v, d);
    }
  c.labels = {"a", "b", "c", "d", "e"};
  const pair_order_matrix back = parse_matrix_csv(matrix_csv(c));
  CHECK(back.n == c.n);
  CHECK(back.entries == c.entries);
  CHECK(back.labels == c.labels);
}

TEST_CASE("matrix csv accepts decimals, fractions, and a label row") {
  const pair_order_matrix c = parse_matrix_csv(
      "x,y\n"
      "0.5,0.55\n"
      "9/20,1/2\n");
  CHECK(c.n == 2);
  CHECK(c.at(0, 1) == rational(11, 20));
  CHECK(c.at(1, 0) == rational(9, 20));
  CHECK(c.labels == std::vector<std::string>{"x", "y"});
  const pair_order_matrix plain = parse_matrix_csv("1/2,0.7\n0.3,0.5\n");
  CHECK(plain.labels.empty());
  CHECK(plain.at(0, 1) == rational(7, 10));
}

TEST_CASE("matrix csv validation failures name the cell") {
  CHECK_THROWS_AS(parse_matrix_csv("0.5,0.6\n0.6,0.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix_csv("0.4,0.6\n0.4,0.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix_csv("0.5,0.6,0.4\n0.4,0.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_matrix_csv("0.5,1.6\n-0.6,0.5\n"), std::invalid_argument);
}

TEST_CASE("random profiles always produce valid matrices") {
  std::mt19937 rng(6);
  for (int round = 0; round < 30; ++round) {
    std::uniform_int_distribution<int> nd(2, 9), md(1, 20);
    const int n = nd(rng), m = md(rng);
    std::ostringstream text;
    text << "# NUMBER ALTERNATIVES: " << n << "\n# NUMBER VOTERS: " << m << "\n";
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    for (int b = 0; b < m; ++b) {
      std::shuffle(perm.begin(), perm.end(), rng);
      std::uniform_int_distribution<int> keep(1, n);
      const int len = keep(rng);
      text << "1: ";
      for (int i = 0; i < len; ++i) text << (i ? "," : "") << perm[static_cast<std::size_t>(i)];
      text << "\n";
    }
    const parse_result pr = parse_profile(text.str());
    const pair_order_matrix c = matrix_from_counts(preference_counts_of(pr.profile));
    CHECK_NOTHROW(c.validate());
  }
}
