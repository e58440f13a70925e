#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "bucketorder/analysis.hpp"
#include "bucketorder/matrix_io.hpp"
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

pair_order_matrix worked_matrix(const char* file) {
  return load_matrix_csv(std::string(BUCKETORDER_DATA_DIR) + "/" + file);
}

}  // namespace

TEST_CASE("bucket-count sweep on the four-item instance") {
  const pair_order_matrix c = worked_matrix("worked4.csv");
  const sweep_result r = p_sweep(c);
  CHECK(r.parameter == "p");
  REQUIRE(r.values.size() == 4);
  CHECK(r.values[0].param == 1);
  CHECK(*r.values[0].objective == rational(17, 5));
  CHECK(*r.values[1].objective == rational(13, 5));
  CHECK(*r.values[2].objective == rational(14, 5));
  CHECK(*r.values[3].objective == rational(13, 5));
  CHECK(r.minima == std::vector<int>{2, 4});
  CHECK_FALSE(r.k_full.has_value());
  // the sampled values are not unimodal in p: p = 3 sits above both minima
  CHECK(*r.values[2].objective > *r.values[1].objective);
  CHECK(*r.values[2].objective > *r.values[3].objective);
}

TEST_CASE("sweeps agree with independent per-point solves") {
  std::mt19937 rng(201);
  for (int round = 0; round < 12; ++round) {
    const int n = 3 + round % 4;
    const pair_order_matrix c = random_matrix(rng, n);
    const sweep_result ps = p_sweep(c);
    REQUIRE(static_cast<int>(ps.values.size()) == n);
    rational best;
    bool first = true;
    for (const sweep_point& pt : ps.values) {
      const solve_result want = brute_force_solve(c, variant_spec::fixed_buckets(pt.param), 8);
      REQUIRE(pt.status == want.status);
      CHECK(*pt.objective == *want.objective);
      if (first || *pt.objective < best) best = *pt.objective;
      first = false;
    }
    for (const int p : ps.minima) {
      const sweep_point& pt = ps.values[static_cast<std::size_t>(p - 1)];
      CHECK(*pt.objective == best);
    }

    const sweep_result ks = tcu_sweep(c);
    for (const sweep_point& pt : ks.values) {
      const solve_result want = brute_force_solve(c, variant_spec::tcu(pt.param), 8);
      CHECK(*pt.objective == *want.objective);
    }
  }
}

TEST_CASE("parallel sweeps match sequential ones") {
  std::mt19937 rng(202);
  const pair_order_matrix c = random_matrix(rng, 6);
  solve_config par;
  par.jobs = 4;
  const sweep_result seq_p = p_sweep(c);
  const sweep_result par_p = p_sweep(c, {}, par);
  REQUIRE(seq_p.values.size() == par_p.values.size());
  for (std::size_t i = 0; i < seq_p.values.size(); ++i) {
    CHECK(seq_p.values[i].param == par_p.values[i].param);
    CHECK(*seq_p.values[i].objective == *par_p.values[i].objective);
  }
  CHECK(seq_p.minima == par_p.minima);
  const sweep_result seq_k = tcu_sweep(c);
  const sweep_result par_k = tcu_sweep(c, {}, par);
  for (std::size_t i = 0; i < seq_k.values.size(); ++i)
    CHECK(*seq_k.values[i].objective == *par_k.values[i].objective);
}

TEST_CASE("collapsed-tail sweep annotations") {
  const pair_order_matrix c = worked_matrix("worked8.csv");
  const sweep_result r = tcu_sweep(c);
  CHECK(r.parameter == "k");
  REQUIRE(r.values.size() == 8);
  // frozen per-k values for the eight-item instance
  const rational want[] = {rational(651, 50), rational(657, 50), rational(671, 50),
                           rational(633, 50), rational(599, 50), rational(539, 50),
                           rational(579, 50), rational(539, 50)};
  for (int k = 1; k <= 8; ++k) {
    CHECK(r.values[static_cast<std::size_t>(k - 1)].param == k);
    CHECK(*r.values[static_cast<std::size_t>(k - 1)].objective == want[k - 1]);
  }
  CHECK(r.minima == std::vector<int>{6, 8});
  REQUIRE(r.k_full.has_value());
  CHECK(*r.k_full == 8);
  // the plain optimum 1 3 | 2 4 7 | 8 | 5 6 has a two-item last bucket
  REQUIRE(r.k_worst_bucket.has_value());
  CHECK(*r.k_worst_bucket == 6);
  // both annotated parameters sit among the minima
  CHECK(std::count(r.minima.begin(), r.minima.end(), *r.k_full) == 1);
  CHECK(std::count(r.minima.begin(), r.minima.end(), *r.k_worst_bucket) == 1);
}

TEST_CASE("single-item sweep is the trivial problem") {
  pair_order_matrix c(1);
  const sweep_result r = p_sweep(c);
  REQUIRE(r.values.size() == 1);
  CHECK(r.values[0].param == 1);
  CHECK(*r.values[0].objective == rational(0));
  CHECK(r.minima == std::vector<int>{1});
}

TEST_CASE("explicit parameter lists are respected") {
  const pair_order_matrix c = worked_matrix("worked8.csv");
  const sweep_result r = p_sweep(c, {2, 5});
  REQUIRE(r.values.size() == 2);
  CHECK(r.values[0].param == 2);
  CHECK(*r.values[0].objective == rational(607, 50));
  CHECK(r.values[1].param == 5);
  CHECK(*r.values[1].objective == rational(567, 50));
  CHECK(r.minima == std::vector<int>{5});
  CHECK_THROWS_AS(p_sweep(c, {0}), std::invalid_argument);
  CHECK_THROWS_AS(tcu_sweep(c, {9}), std::invalid_argument);
}

TEST_CASE("trajectories conserve prefix totals and end at the group share") {
  std::mt19937 rng(203);
  for (int round = 0; round < 25; ++round) {
    const int n = 4 + round % 5;
    const int groups = 2 + round % 2;
    fairness_spec f;
    f.groups.resize(static_cast<std::size_t>(groups));
    std::vector<int> items(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) items[static_cast<std::size_t>(r)] = r;
    std::shuffle(items.begin(), items.end(), rng);
    for (int r = 0; r < n; ++r)
      f.groups[static_cast<std::size_t>(r % groups)].push_back(items[static_cast<std::size_t>(r)]);
    f.lambda.assign(static_cast<std::size_t>(groups),
                    std::vector<rational>(static_cast<std::size_t>(n), rational(0)));
    f.mu.assign(static_cast<std::size_t>(groups),
                std::vector<rational>(static_cast<std::size_t>(n), rational(1)));

    const std::vector<bucket_order> all = enumerate_weak_orders(n);
    const bucket_order& b = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    const std::vector<trajectory_cell> cells = fairness_trajectory(b, f);
    const int prefixes = static_cast<int>(b.buckets.size());
    REQUIRE(static_cast<int>(cells.size()) == groups * prefixes);
    for (int l = 1; l <= prefixes; ++l) {
      int t_expected = 0;
      for (int u = 0; u < l; ++u) t_expected += static_cast<int>(b.buckets[static_cast<std::size_t>(u)].size());
      int s_total = 0;
      for (int g = 0; g < groups; ++g) {
        const trajectory_cell& cell = cells[static_cast<std::size_t>(g * prefixes + (l - 1))];
        CHECK(cell.group == g);
        CHECK(cell.prefix == l);
        CHECK(cell.t == t_expected);
        s_total += cell.s;
        CHECK(cell.proportion == rational(cell.s, cell.t));
        CHECK(cell.target ==
              rational(static_cast<long long>(f.groups[static_cast<std::size_t>(g)].size()), n));
      }
      CHECK(s_total == t_expected);  // groups partition every prefix
    }
    // the full prefix holds everyone: the proportion is exactly the share
    for (int g = 0; g < groups; ++g) {
      const trajectory_cell& last = cells[static_cast<std::size_t>(g * prefixes + prefixes - 1)];
      CHECK(last.proportion == last.target);
      CHECK(last.within);  // lambda = 0, mu = 1 never excludes
    }
  }
}

TEST_CASE("trajectory flags prefixes outside the shares") {
  // 1 2 3 | 4 5 6 with the first three items in one group: the first prefix
  // is all group one, flagged against equal shares with the floor/ceil test
  fairness_spec f;
  f.groups = {{0, 1, 2}, {3, 4, 5}};
  f.lambda.assign(2, std::vector<rational>(6, rational(1, 2)));
  f.mu.assign(2, std::vector<rational>(6, rational(1, 2)));
  const bucket_order b = bucket_order::parse("1 2 3 | 4 5 6");
  const std::vector<trajectory_cell> cells = fairness_trajectory(b, f);
  REQUIRE(cells.size() == 4);
  int outside = 0;
  for (const trajectory_cell& cell : cells)
    if (!cell.within) ++outside;
  CHECK(outside == 2);  // prefix one of both groups: 3/3 and 0/3
  CHECK_FALSE(cells[0].within);
  CHECK(cells[1].within);

  fairness_spec wrong = f;
  wrong.groups[0] = {0, 1};  // item 2 unassigned
  CHECK_THROWS_AS(fairness_trajectory(b, wrong), std::invalid_argument);
}

TEST_CASE("sweep csv layout") {
  const pair_order_matrix c = worked_matrix("worked4.csv");
  std::ostringstream os;
  write_sweep_csv(os, p_sweep(c));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "param,objective_exact,objective_2dp,status,is_min");
  std::getline(in, line);
  CHECK(line == "1,17/5,3.40,Optimal,0");
  std::getline(in, line);
  CHECK(line == "2,13/5,2.60,Optimal,1");
  std::getline(in, line);
  CHECK(line == "3,14/5,2.80,Optimal,0");
  std::getline(in, line);
  CHECK(line == "4,13/5,2.60,Optimal,1");
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("trajectory csv layout") {
  fairness_spec f;
  f.groups = {{0, 1, 2}, {3, 4, 5}};
  f.lambda.assign(2, std::vector<rational>(6, rational(1, 2)));
  f.mu.assign(2, std::vector<rational>(6, rational(1, 2)));
  std::ostringstream os;
  write_trajectory_csv(os, fairness_trajectory(bucket_order::parse("1 2 3 | 4 5 6"), f));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "group,prefix,T,S,proportion_exact,target,within_bounds");
  std::getline(in, line);
  CHECK(line == "1,1,3,3,1,1/2,0");
  std::getline(in, line);
  CHECK(line == "1,2,6,3,1/2,1/2,1");
  std::getline(in, line);
  CHECK(line == "2,1,3,0,0,1/2,0");
  std::getline(in, line);
  CHECK(line == "2,2,6,3,1/2,1/2,1");
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("bound summaries") {
  const pair_order_matrix c = worked_matrix("worked8.csv");
  const bound_summary plain = bound_report(c, variant_spec::obop());
  CHECK(plain.status == solve_status::optimal);
  CHECK(*plain.objective == rational(539, 50));
  REQUIRE(plain.utopian_bound.has_value());
  CHECK(*plain.utopian_bound == rational(361, 50));
  REQUIRE(plain.gap_to_utopian.has_value());
  // 100 (539 - 361) / 361
  CHECK(*plain.gap_to_utopian == rational(17800, 361));

  // the rounded bound relaxes only the unrestricted problem, so restricted
  // variants carry no utopian column
  const bound_summary tied = bound_report(c, variant_spec::fixed_buckets(2));
  CHECK(*tied.objective == rational(607, 50));
  CHECK_FALSE(tied.utopian_bound.has_value());
  CHECK_FALSE(tied.gap_to_utopian.has_value());
}

TEST_CASE("best completion under an exact tail") {
  std::mt19937 rng(204);
  for (int round = 0; round < 20; ++round) {
    const int n = 4 + round % 3;
    const pair_order_matrix c = random_matrix(rng, n);
    std::vector<int> tail;
    for (int r = 0; r < n; ++r)
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) tail.push_back(r);
    if (tail.empty() || static_cast<int>(tail.size()) == n) tail = {n - 1};
    std::optional<rational> want;
    for_each_weak_order(n, [&](const bucket_order& b) {
      if (b.buckets.size() < 2) return true;
      std::vector<int> last = b.buckets.back();
      std::sort(last.begin(), last.end());
      if (last != tail) return true;
      const rational v = distance(b, c);
      if (!want || v < *want) want = v;
      return true;
    });
    REQUIRE(want.has_value());
    const fixed_tail_result got = fixed_tail_best(c, tail);
    CHECK(got.objective == *want);
    CHECK(got.objective == distance(got.order, c));
    std::vector<int> got_tail = got.order.buckets.back();
    std::sort(got_tail.begin(), got_tail.end());
    CHECK(got_tail == tail);
  }
}

TEST_CASE("degenerate tails collapse to the unrestricted and one-bucket cases") {
  const pair_order_matrix c = worked_matrix("worked4.csv");
  const fixed_tail_result empty_tail = fixed_tail_best(c, {});
  CHECK(empty_tail.objective ==
        *brute_force_solve(c, variant_spec::obop(), 8).objective);
  const fixed_tail_result full_tail = fixed_tail_best(c, {0, 1, 2, 3});
  CHECK(full_tail.order.buckets.size() == 1);
  CHECK(full_tail.objective ==
        distance(bucket_order::parse("1 2 3 4"), c));
  CHECK_THROWS_AS(fixed_tail_best(c, {4}), std::invalid_argument);
  CHECK_THROWS_AS(fixed_tail_best(c, {1, 1}), std::invalid_argument);
}
