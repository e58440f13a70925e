#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "bucketorder/analysis.hpp"
#include "bucketorder/matrix_io.hpp"
#include "bucketorder/solve.hpp"
#include "bucketorder/weak_order_enum.hpp"

using namespace bucketorder;

namespace {

pair_order_matrix random_matrix(std::mt19937& rng, int n, int max_den = 20) {
  pair_order_matrix c(n);
  std::uniform_int_distribution<int> dd(1, max_den);
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      const int d = dd(rng);
      std::uniform_int_distribution<int> num(0, d);
      const int v = num(rng);
      c.at(r, s) = rational(v, d);
      c.at(s, r) = rational(d - v, d);
    }
  return c;
}

// drawn to cover every variant kind, valid for the given n
variant_spec random_variant(std::mt19937& rng, int n, int round) {
  switch (round % 6) {
    case 0: return variant_spec::obop();
    case 1: {
      std::uniform_int_distribution<int> dp(1, n);
      return variant_spec::fixed_buckets(dp(rng));
    }
    case 2: {
      std::vector<int> divisors;
      for (int p = 1; p <= n; ++p)
        if (n % p == 0) divisors.push_back(p);
      const int p = divisors[std::uniform_int_distribution<std::size_t>(
          0, divisors.size() - 1)(rng)];
      return variant_spec::equal_sizes(p, n / p);
    }
    case 3: {
      std::vector<int> sizes;
      int left = n;
      while (left > 0) {
        std::uniform_int_distribution<int> ds(1, left);
        const int s = ds(rng);
        sizes.push_back(s);
        left -= s;
      }
      return variant_spec::prescribed_sizes(sizes);
    }
    case 4: {
      std::uniform_int_distribution<int> dk(1, n);
      return variant_spec::tcu(dk(rng));
    }
    default: {
      fairness_spec f;
      const int groups = 2 + round % 2;
      f.groups.resize(static_cast<std::size_t>(groups));
      for (int r = 0; r < n; ++r)
        f.groups[static_cast<std::size_t>(r % groups)].push_back(r);
      std::uniform_int_distribution<int> dden(2, 6);
      f.lambda.resize(static_cast<std::size_t>(groups));
      f.mu.resize(static_cast<std::size_t>(groups));
      for (int g = 0; g < groups; ++g) {
        f.lambda[static_cast<std::size_t>(g)].assign(static_cast<std::size_t>(n), rational(0));
        f.mu[static_cast<std::size_t>(g)].assign(static_cast<std::size_t>(n), rational(1));
        const int den = dden(rng);
        std::uniform_int_distribution<int> dnum(0, den / groups);
        for (int l = 0; l < n; ++l) {
          if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
            f.lambda[static_cast<std::size_t>(g)][static_cast<std::size_t>(l)] =
                rational(dnum(rng), den);
          if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
            f.mu[static_cast<std::size_t>(g)][static_cast<std::size_t>(l)] =
                rational(den - dnum(rng), den);
        }
      }
      variant_spec v = variant_spec::fair(std::move(f));
      if (round % 4 == 1) v.fair_p = std::uniform_int_distribution<int>(1, n)(rng);
      if (round % 4 == 2) v.max_buckets = std::uniform_int_distribution<int>(1, n)(rng);
      if (round % 4 == 3) v.min_buckets = std::uniform_int_distribution<int>(1, 2)(rng);
      if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        // random per-group bound; tight uppers make some draws infeasible
        group_bound gb;
        gb.group = std::uniform_int_distribution<int>(0, groups - 1)(rng);
        gb.at = std::uniform_int_distribution<int>(1, v.fair_bucket_limit(n))(rng);
        if (std::uniform_int_distribution<int>(0, 1)(rng))
          gb.lower = std::uniform_int_distribution<int>(0, 2)(rng);
        else
          gb.upper = std::uniform_int_distribution<int>(0, 1)(rng);
        if (std::uniform_int_distribution<int>(0, 1)(rng))
          v.fairness.bucket_bounds.push_back(gb);
        else
          v.fairness.prefix_bounds.push_back(gb);
      }
      return v;
    }
  }
}

void check_same(const solve_result& got, const solve_result& want) {
  REQUIRE(got.status == want.status);
  if (want.status == solve_status::infeasible) {
    CHECK_FALSE(got.objective.has_value());
    CHECK(got.optima.empty());
    return;
  }
  REQUIRE(got.objective.has_value());
  REQUIRE(want.objective.has_value());
  CHECK(*got.objective == *want.objective);
  REQUIRE(got.optima.size() == want.optima.size());
  for (std::size_t i = 0; i < got.optima.size(); ++i)
    CHECK(got.optima[i] == want.optima[i]);
  CHECK(got.bucket_counts == want.bucket_counts);
  REQUIRE(got.bound.has_value());
  CHECK(*got.bound == *got.objective);
}

pair_order_matrix worked_matrix(const char* file) {
  return load_matrix_csv(std::string(BUCKETORDER_DATA_DIR) + "/" + file);
}

}  // namespace

TEST_CASE("search agrees with the exhaustive oracle on every variant") {
  std::mt19937 rng(20260822);
  solve_config cfg;
  cfg.enumeration_threshold = 3;  // force the branch-and-bound paths
  cfg.optima_cap = 1 << 20;
  int rounds = 0, infeasible_rounds = 0;
  for (int round = 0; round < 252; ++round) {
    const int n = 3 + round % 5;  // 3..7
    const pair_order_matrix c = random_matrix(rng, n);
    const variant_spec v = random_variant(rng, n, round);
    CAPTURE(round);
    CAPTURE(n);
    CAPTURE(v.str());
    const solve_result want = brute_force_solve(c, v, 8);
    const solve_result got = solve(c, v, cfg);
    check_same(got, want);
    ++rounds;
    if (want.status == solve_status::infeasible) ++infeasible_rounds;
  }
  CHECK(rounds == 252);
  CHECK(infeasible_rounds > 0);  // the battery exercises the infeasible path
}

TEST_CASE("the rounded-matrix bound never exceeds the optimum") {
  std::mt19937 rng(99);
  for (int round = 0; round < 120; ++round) {
    const int n = 3 + round % 4;
    const pair_order_matrix c = random_matrix(rng, n);
    const utopian_result u = utopian(c);
    const solve_result r = solve(c, variant_spec::obop());
    REQUIRE(r.status == solve_status::optimal);
    CHECK(u.bound <= *r.objective);
    if (u.attainable) CHECK(u.bound == *r.objective);
  }
}

TEST_CASE("minimizing over all bucket counts recovers the plain optimum") {
  std::mt19937 rng(100);
  for (int round = 0; round < 30; ++round) {
    const int n = 3 + round % 4;
    const pair_order_matrix c = random_matrix(rng, n);
    const solve_result plain = solve(c, variant_spec::obop());
    rational best;
    bool first = true;
    for (int p = 1; p <= n; ++p) {
      const solve_result rp = solve(c, variant_spec::fixed_buckets(p));
      REQUIRE(rp.status == solve_status::optimal);
      if (first || *rp.objective < best) best = *rp.objective;
      first = false;
    }
    CHECK(best == *plain.objective);
  }
}

TEST_CASE("an uncollapsed tail is the plain problem") {
  std::mt19937 rng(101);
  for (int round = 0; round < 30; ++round) {
    const int n = 3 + round % 5;
    const pair_order_matrix c = random_matrix(rng, n);
    const solve_result plain = solve(c, variant_spec::obop());
    const solve_result tcu_full = solve(c, variant_spec::tcu(n));
    check_same(tcu_full, plain);
  }
}

TEST_CASE("results are deterministic across repeats and worker counts") {
  std::mt19937 rng(102);
  for (int round = 0; round < 10; ++round) {
    const int n = 5 + round % 3;
    const pair_order_matrix c = random_matrix(rng, n);
    const variant_spec v = random_variant(rng, n, round);
    solve_config cfg;
    cfg.enumeration_threshold = 3;
    const solve_result a = solve(c, v, cfg);
    const solve_result b = solve(c, v, cfg);
    solve_config par = cfg;
    par.jobs = 4;
    const solve_result p = solve(c, v, par);
    CHECK(a.status == b.status);
    CHECK(a.objective == b.objective);
    CHECK(a.optima == b.optima);
    CHECK(a.nodes == b.nodes);
    CHECK(p.status == a.status);
    CHECK(p.objective == a.objective);
    CHECK(p.optima == a.optima);
  }
}

TEST_CASE("hints seed the incumbent and never distort the result") {
  const pair_order_matrix c = worked_matrix("worked8.csv");
  const solve_result plain = solve(c, variant_spec::obop());
  REQUIRE(plain.status == solve_status::optimal);

  solve_config cfg;
  cfg.enumeration_threshold = 3;
  // the known optimum as a hint: same answer, and pruning can only improve
  cfg.hints.push_back(bucket_order::parse("1 3 | 2 4 7 | 8 | 5 6"));
  const solve_result hinted = solve(c, variant_spec::obop(), cfg);
  check_same(hinted, plain);
  CHECK(hinted.nodes <= plain.nodes);

  // a hint that the variant rejects is filtered out, not an error
  solve_config filtered;
  filtered.enumeration_threshold = 3;
  filtered.hints.push_back(bucket_order::parse("1 2 3 4 5 6 7 8"));
  const solve_result one_bucket = solve(c, variant_spec::fixed_buckets(3), filtered);
  REQUIRE(one_bucket.status == solve_status::optimal);
  for (const bucket_order& b : one_bucket.optima)
    CHECK(b.buckets.size() == 3);

  // a hint for the wrong item count is a caller error
  solve_config bad;
  bad.hints.push_back(bucket_order::parse("1 | 2"));
  CHECK_THROWS_AS(solve(c, variant_spec::obop(), bad), std::invalid_argument);
}

TEST_CASE("node limits return a safe incumbent and bound") {
  const pair_order_matrix c = worked_matrix("worked10.csv");
  solve_config cfg;
  cfg.enumeration_threshold = 3;
  cfg.node_limit = 40;
  const solve_result r = solve(c, variant_spec::obop(), cfg);
  REQUIRE(r.status == solve_status::limit);
  REQUIRE(r.bound.has_value());
  const rational optimum(1313, 50);
  CHECK(*r.bound <= optimum);
  if (r.objective.has_value()) {
    CHECK(optimum <= *r.objective);
    CHECK(*r.bound <= *r.objective);
    REQUIRE(!r.optima.empty());
    for (const bucket_order& b : r.optima) CHECK(distance(b, c) == *r.objective);
  }
  CHECK(status_str(r.status) == "Limit");
}

TEST_CASE("trace events carry admissible bounds") {
  const pair_order_matrix c = worked_matrix("worked8.csv");
  std::ostringstream trace;
  solve_config cfg;
  cfg.enumeration_threshold = 3;
  cfg.trace = &trace;
  const solve_result r = solve(c, variant_spec::obop(), cfg);
  REQUIRE(r.status == solve_status::optimal);
  const rational optimum = *r.objective;  // 539/50
  CHECK(optimum == rational(539, 50));
  // an open node's bound covers only its own subtree, so it may exceed the
  // optimum (those nodes get pruned); the subtree holding the optimum keeps
  // its bounds admissible, so the minimum over open events must not
  std::istringstream lines(trace.str());
  std::string line;
  int opens = 0;
  std::optional<rational> min_bound;
  while (std::getline(lines, line)) {
    const auto event_pos = line.find("\"event\":\"open\"");
    if (event_pos == std::string::npos) continue;
    const auto key = line.find("\"bound\":\"");
    REQUIRE(key != std::string::npos);
    const auto start = key + 9;
    const auto end = line.find('"', start);
    const rational bound = rational::parse(line.substr(start, end - start));
    if (!min_bound || bound < *min_bound) min_bound = bound;
    ++opens;
  }
  CHECK(opens > 0);
  REQUIRE(min_bound.has_value());
  CHECK(*min_bound <= optimum);
}

TEST_CASE("the optima cap truncates without changing the optimum") {
  const pair_order_matrix c = worked_matrix("worked10.csv");
  solve_config cfg;
  cfg.optima_cap = 1;
  const solve_result r = solve(c, variant_spec::obop(), cfg);
  REQUIRE(r.status == solve_status::optimal);
  CHECK(*r.objective == rational(1313, 50));
  CHECK(r.optima.size() == 1);
  CHECK(r.bucket_counts.size() == 1);
}

TEST_CASE("enumeration and search routes give identical answers") {
  std::mt19937 rng(103);
  for (int round = 0; round < 40; ++round) {
    const int n = 3 + round % 4;  // all below the default threshold
    const pair_order_matrix c = random_matrix(rng, n);
    const variant_spec v = random_variant(rng, n, round);
    solve_config enumerate;
    enumerate.enumeration_threshold = 8;
    enumerate.optima_cap = 1 << 20;
    solve_config search;
    search.enumeration_threshold = 3;
    search.optima_cap = 1 << 20;
    check_same(solve(c, v, search), solve(c, v, enumerate));
  }
}

TEST_CASE("infeasible variants report infeasible, invalid ones throw") {
  std::mt19937 rng(104);
  const pair_order_matrix c = random_matrix(rng, 5);
  {
    // two groups forced apart harder than five items allow
    fairness_spec f;
    f.groups = {{0, 1, 2, 3, 4}};
    f.lambda.assign(1, std::vector<rational>(5, rational(0)));
    f.mu.assign(1, std::vector<rational>(5, rational(1)));
    group_bound gb;
    gb.group = 0;
    gb.at = 1;
    gb.upper = 0;  // first bucket may hold nothing: impossible
    f.bucket_bounds.push_back(gb);
    const variant_spec v = variant_spec::fair(std::move(f));
    const solve_result r = solve(c, v);
    CHECK(r.status == solve_status::infeasible);
    CHECK_FALSE(r.objective.has_value());
    CHECK_FALSE(r.bound.has_value());
    CHECK(r.optima.empty());
    CHECK(status_str(r.status) == "Infeasible");
    CHECK(enumerate_optima(c, v).empty());
  }
  // structural mistakes are exceptions, not infeasibility
  CHECK_THROWS_AS(solve(c, variant_spec::fixed_buckets(6)), std::invalid_argument);
  CHECK_THROWS_AS(solve(c, variant_spec::prescribed_sizes({3, 3})), std::invalid_argument);
}

TEST_CASE("oracle refuses sizes past its cap") {
  std::mt19937 rng(105);
  const pair_order_matrix big = random_matrix(rng, 9);
  CHECK_THROWS_AS(brute_force_solve(big, variant_spec::obop(), 8), std::invalid_argument);
  const pair_order_matrix huge = random_matrix(rng, 11);
  CHECK_THROWS_AS(brute_force_solve(huge, variant_spec::obop(), 10), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_solve(huge, variant_spec::obop(), 12), std::invalid_argument);
}

TEST_CASE("configuration mistakes are rejected up front") {
  std::mt19937 rng(106);
  const pair_order_matrix c = random_matrix(rng, 4);
  solve_config cfg;
  cfg.optima_cap = 0;
  CHECK_THROWS_AS(solve(c, variant_spec::obop(), cfg), std::invalid_argument);
  cfg = {};
  cfg.jobs = 0;
  CHECK_THROWS_AS(solve(c, variant_spec::obop(), cfg), std::invalid_argument);
  cfg = {};
  cfg.enumeration_threshold = -1;
  CHECK_THROWS_AS(solve(c, variant_spec::obop(), cfg), std::invalid_argument);
  cfg = {};
  cfg.time_limit_s = -2.0;
  CHECK_THROWS_AS(solve(c, variant_spec::obop(), cfg), std::invalid_argument);
}

TEST_CASE("eight-item worked instance") {
  const pair_order_matrix c = worked_matrix("worked8.csv");
  solve_config cfg;
  cfg.enumeration_threshold = 3;

  const solve_result plain = solve(c, variant_spec::obop(), cfg);
  REQUIRE(plain.status == solve_status::optimal);
  CHECK(*plain.objective == rational(539, 50));
  REQUIRE(plain.optima.size() == 1);
  CHECK(plain.optima[0].str() == "1 3 | 2 4 7 | 8 | 5 6");
  CHECK(optima_count_str(plain.optima.size()) == "1");
  CHECK(utopian(c).bound == rational(361, 50));

  CHECK(*solve(c, variant_spec::fixed_buckets(2), cfg).objective == rational(607, 50));
  CHECK(*solve(c, variant_spec::fixed_buckets(5), cfg).objective == rational(567, 50));
  CHECK(*solve(c, variant_spec::fixed_buckets(4), cfg).objective == rational(539, 50));
  CHECK(*solve(c, variant_spec::equal_sizes(2, 4), cfg).objective == rational(657, 50));
  CHECK(*solve(c, variant_spec::equal_sizes(4, 2), cfg).objective == rational(573, 50));
  CHECK(*solve(c, variant_spec::prescribed_sizes({1, 3, 4}), cfg).objective ==
        rational(683, 50));
  CHECK(*solve(c, variant_spec::prescribed_sizes({1, 2, 2, 3}), cfg).objective ==
        rational(689, 50));
  CHECK(*solve(c, variant_spec::prescribed_sizes({2, 3, 1, 2}), cfg).objective ==
        rational(539, 50));

  const solve_result tail4 = solve(c, variant_spec::tcu(4), cfg);
  CHECK(*tail4.objective == rational(633, 50));
  REQUIRE(tail4.optima.size() == 1);
  CHECK(tail4.optima[0].str_tail_separated() == "1 3 | 4 7 || 2 5 6 8");
  CHECK(*solve(c, variant_spec::tcu(7), cfg).objective == rational(579, 50));
  CHECK(*solve(c, variant_spec::tcu(6), cfg).objective == rational(539, 50));

  fairness_spec f;
  f.groups = {{0, 2, 3, 7}, {1, 4, 5, 6}};
  f.lambda.assign(2, std::vector<rational>(8, rational(1, 2)));
  f.mu.assign(2, std::vector<rational>(8, rational(1, 2)));
  const variant_spec fair = variant_spec::fair(std::move(f));
  const solve_result fr = solve(c, fair, cfg);
  REQUIRE(fr.status == solve_status::optimal);
  CHECK(*fr.objective == rational(593, 50));
  REQUIRE(!fr.optima.empty());
  CHECK(fr.optima[0].str() == "3 | 1 2 4 7 | 5 8 | 6");
  // the unconstrained optimum violates the shares
  CHECK_FALSE(fair.satisfies(plain.optima[0], 8));
}

TEST_CASE("ten-item worked instance") {
  const pair_order_matrix c = worked_matrix("worked10.csv");
  solve_config cfg;
  cfg.enumeration_threshold = 3;

  const solve_result plain = solve(c, variant_spec::obop(), cfg);
  REQUIRE(plain.status == solve_status::optimal);
  CHECK(*plain.objective == rational(1313, 50));
  REQUIRE(plain.optima.size() == 2);
  CHECK(plain.optima[0].str() == "6 | 9 | 5 | 3 7 | 1 | 4 | 2 | 10 | 8");
  CHECK(plain.optima[1].str() == "6 | 9 | 5 | 3 | 7 | 1 | 4 | 2 | 10 | 8");
  CHECK(optima_count_str(plain.optima.size()) == "2");
  const utopian_result u = utopian(c);
  CHECK(u.bound == rational(707, 50));
  CHECK_FALSE(u.attainable);

  const solve_result t6 = solve(c, variant_spec::tcu(6), cfg);
  CHECK(*t6.objective == rational(289, 10));
  REQUIRE(!t6.optima.empty());
  CHECK(t6.optima[0].str_tail_separated() == "9 | 3 | 1 6 7 | 4 || 2 5 8 10");

  CHECK(*solve(c, variant_spec::tcu(3), cfg).objective == rational(301, 10));
  CHECK(*solve(c, variant_spec::prescribed_sizes({3, 7}), cfg).objective ==
        rational(1569, 50));
  CHECK(distance(bucket_order::parse("5 6 9 | 1 2 3 4 7 8 10"), c) ==
        rational(1603, 50));
  // best rankings whose tail matches the plain optimum's four worst items
  const fixed_tail_result tail_match = fixed_tail_best(c, {1, 3, 7, 9});
  CHECK(tail_match.objective == rational(291, 10));
}

TEST_CASE("gap arithmetic") {
  CHECK(*gap_percent(rational(11), rational(10)) == rational(10));
  CHECK(*gap_percent(rational(3, 2), rational(1)) == rational(50));
  CHECK_FALSE(gap_percent(rational(1), rational(0)).has_value());
  CHECK_FALSE(gap_percent(rational(1), rational(-1)).has_value());
  CHECK(optima_count_str(3) == "3");
  CHECK(optima_count_str(4) == ">3");
  CHECK(optima_count_str(64) == ">3");
}
