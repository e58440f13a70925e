#include "bucketorder/variant.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bucketorder {

rational fairness_spec::lambda_at(int i, int l) const {
  if (i < static_cast<int>(lambda.size()) && l - 1 < static_cast<int>(lambda[i].size()))
    return lambda[i][static_cast<std::size_t>(l - 1)];
  return rational(0);
}

rational fairness_spec::mu_at(int i, int l) const {
  if (i < static_cast<int>(mu.size()) && l - 1 < static_cast<int>(mu[i].size()))
    return mu[i][static_cast<std::size_t>(l - 1)];
  return rational(1);
}

std::vector<int> fairness_spec::group_of(int n) const {
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (int item : groups[i]) {
      if (item < 0 || item >= n)
        throw std::invalid_argument("group " + std::to_string(i + 1) + " names item " +
                                    std::to_string(item + 1) + " outside 1.." + std::to_string(n));
      if (owner[static_cast<std::size_t>(item)] != -1)
        throw std::invalid_argument("item " + std::to_string(item + 1) +
                                    " appears in two groups");
      owner[static_cast<std::size_t>(item)] = static_cast<int>(i);
    }
  }
  for (int r = 0; r < n; ++r)
    if (owner[static_cast<std::size_t>(r)] == -1)
      throw std::invalid_argument("item " + std::to_string(r + 1) + " belongs to no group");
  return owner;
}

void fairness_spec::validate(int n) const {
  if (groups.empty()) throw std::invalid_argument("fairness spec has no groups");
  for (std::size_t i = 0; i < groups.size(); ++i)
    if (groups[i].empty())
      throw std::invalid_argument("group " + std::to_string(i + 1) + " is empty");
  group_of(n);  // partition check
  const int g = group_count();
  auto check_grid = [&](const std::vector<std::vector<rational>>& grid, const char* which) {
    if (static_cast<int>(grid.size()) > g)
      throw std::invalid_argument(std::string(which) + " grid has more rows than groups");
    for (const auto& row : grid) {
      if (static_cast<int>(row.size()) > n)
        throw std::invalid_argument(std::string(which) + " row longer than n");
      for (const rational& v : row)
        if (v.is_negative() || v > rational(1))
          throw std::invalid_argument(std::string(which) + " entry " + v.str() +
                                      " outside [0, 1]");
    }
  };
  check_grid(lambda, "lambda");
  check_grid(mu, "mu");
  for (int i = 0; i < g; ++i)
    for (int l = 1; l <= n; ++l)
      if (lambda_at(i, l) > mu_at(i, l))
        throw std::invalid_argument("lambda > mu for group " + std::to_string(i + 1) +
                                    " at prefix " + std::to_string(l));
  auto check_bounds = [&](const std::vector<group_bound>& bounds, const char* which) {
    for (const group_bound& bd : bounds) {
      if (bd.group < 0 || bd.group >= g)
        throw std::invalid_argument(std::string(which) + " bound names group " +
                                    std::to_string(bd.group + 1));
      if (bd.at < 1 || bd.at > n)
        throw std::invalid_argument(std::string(which) + " bound position " +
                                    std::to_string(bd.at) + " outside 1.." + std::to_string(n));
      if (bd.lower && *bd.lower < 0)
        throw std::invalid_argument(std::string(which) + " bound has negative lower side");
      if (bd.lower && bd.upper && *bd.lower > *bd.upper)
        throw std::invalid_argument(std::string(which) + " bound has lower > upper");
    }
  };
  check_bounds(bucket_bounds, "bucket");
  check_bounds(prefix_bounds, "prefix");
}

bool fair_share_ok(const rational& lambda, const rational& mu, long long s, long long t) {
  // floor(lambda*t) and ceil(mu*t) in integer arithmetic; both fractions are
  // non-negative and t >= 0, so truncation is floor
  __int128 lo = static_cast<__int128>(lambda.num()) * t / lambda.den();
  if (static_cast<__int128>(s) < lo) return false;
  __int128 up = (static_cast<__int128>(mu.num()) * t + mu.den() - 1) / mu.den();
  return static_cast<__int128>(s) <= up;
}

std::vector<std::string> validate_fairness_params(const fairness_spec& f, int n) {
  f.validate(n);
  std::vector<std::string> out;
  const int g = f.group_count();
  for (int l = 1; l <= n; ++l) {
    rational sum_lambda, sum_mu;
    for (int i = 0; i < g; ++i) {
      sum_lambda += f.lambda_at(i, l);
      sum_mu += f.mu_at(i, l);
    }
    if (sum_lambda > rational(1))
      out.push_back("prefix " + std::to_string(l) + ": lambda bounds sum to " +
                    sum_lambda.str() + " > 1");
    if (sum_mu < rational(1))
      out.push_back("prefix " + std::to_string(l) + ": mu bounds sum to " + sum_mu.str() +
                    " < 1");
  }
  for (int i = 0; i < g; ++i) {
    const long long size = static_cast<long long>(f.groups[static_cast<std::size_t>(i)].size());
    const rational share(size, n);
    if (f.lambda_at(i, n) > share)
      out.push_back("group " + std::to_string(i + 1) + ": lambda " + f.lambda_at(i, n).str() +
                    " at prefix " + std::to_string(n) + " exceeds group share " + share.str());
    if (f.mu_at(i, n) < share)
      out.push_back("group " + std::to_string(i + 1) + ": mu " + f.mu_at(i, n).str() +
                    " at prefix " + std::to_string(n) + " is below group share " + share.str());
    for (int l = 1; l <= n; ++l) {
      const rational lam = f.lambda_at(i, l);
      if (lam > share) {
        __int128 cap = static_cast<__int128>(size) * lam.den() / lam.num();
        out.push_back("group " + std::to_string(i + 1) + ": lambda " + lam.str() +
                      " at prefix " + std::to_string(l) + " caps the first " +
                      std::to_string(l) + " buckets at " +
                      std::to_string(static_cast<long long>(cap)) + " items");
      }
      const rational m = f.mu_at(i, l);
      if (!m.is_zero() && m < share) {
        __int128 cap = static_cast<__int128>(n - size) * m.den() / m.num();
        if (cap <= static_cast<__int128>(n))
          out.push_back("group " + std::to_string(i + 1) + ": mu " + m.str() + " at prefix " +
                        std::to_string(l) + " caps the first " + std::to_string(l) +
                        " buckets at " + std::to_string(static_cast<long long>(cap)) + " items");
      }
    }
  }
  return out;
}

variant_spec variant_spec::obop() { return {}; }

variant_spec variant_spec::fixed_buckets(int p) {
  variant_spec v;
  v.kind = variant_kind::fixed_buckets;
  v.p = p;
  return v;
}

variant_spec variant_spec::equal_sizes(int p, int q) {
  variant_spec v;
  v.kind = variant_kind::equal_sizes;
  v.p = p;
  v.q = q;
  return v;
}

variant_spec variant_spec::prescribed_sizes(std::vector<int> sizes) {
  variant_spec v;
  v.kind = variant_kind::prescribed_sizes;
  v.sizes = std::move(sizes);
  return v;
}

variant_spec variant_spec::tcu(int k) {
  variant_spec v;
  v.kind = variant_kind::tcu;
  v.k = k;
  return v;
}

variant_spec variant_spec::fair(fairness_spec f) {
  variant_spec v;
  v.kind = variant_kind::fair;
  v.fairness = std::move(f);
  return v;
}

int variant_spec::fair_bucket_limit(int n) const {
  if (fair_p) return *fair_p;
  if (fair_sizes) return static_cast<int>(fair_sizes->size());
  return max_buckets > 0 ? max_buckets : n;
}

void variant_spec::validate(int n) const {
  if (n < 1) throw std::invalid_argument("item count must be positive");
  switch (kind) {
    case variant_kind::obop:
      return;
    case variant_kind::fixed_buckets:
      if (p < 1 || p > n)
        throw std::invalid_argument("bucket count " + std::to_string(p) + " outside 1.." +
                                    std::to_string(n));
      return;
    case variant_kind::equal_sizes:
      if (p < 1 || q < 1 || p > n)
        throw std::invalid_argument("equal-size parameters must be positive");
      if (static_cast<long long>(p) * q != n)
        throw std::invalid_argument("p*q = " + std::to_string(static_cast<long long>(p) * q) +
                                    " does not equal n = " + std::to_string(n));
      return;
    case variant_kind::prescribed_sizes: {
      if (sizes.empty()) throw std::invalid_argument("no bucket sizes given");
      long long total = 0;
      for (int s : sizes) {
        if (s < 1) throw std::invalid_argument("bucket sizes must be positive");
        total += s;
      }
      if (total != n)
        throw std::invalid_argument("bucket sizes sum to " + std::to_string(total) +
                                    ", not n = " + std::to_string(n));
      return;
    }
    case variant_kind::tcu:
      if (k < 1 || k > n)
        throw std::invalid_argument("kept-position count " + std::to_string(k) +
                                    " outside 1.." + std::to_string(n));
      return;
    case variant_kind::fair: {
      fairness.validate(n);
      if (fair_p && (*fair_p < 1 || *fair_p > n))
        throw std::invalid_argument("fixed bucket count outside 1..n");
      if (fair_sizes) {
        long long total = 0;
        for (int s : *fair_sizes) {
          if (s < 1) throw std::invalid_argument("bucket capacities must be positive");
          total += s;
        }
        if (total != n) throw std::invalid_argument("bucket capacities must sum to n");
        if (fair_p && *fair_p != static_cast<int>(fair_sizes->size()))
          throw std::invalid_argument("fixed bucket count disagrees with capacity count");
      }
      if (max_buckets < 0 || max_buckets > n)
        throw std::invalid_argument("bucket-count cap outside 0..n");
      const int limit = fair_bucket_limit(n);
      if (max_buckets > 0 && limit > max_buckets)
        throw std::invalid_argument("fixed bucket count exceeds the bucket-count cap");
      if (min_buckets < 0 || min_buckets > limit)
        throw std::invalid_argument("required leading buckets exceed the bucket limit");
      for (const group_bound& bd : fairness.bucket_bounds)
        if (bd.at > limit)
          throw std::invalid_argument("bucket bound at position " + std::to_string(bd.at) +
                                      " beyond the bucket limit " + std::to_string(limit));
      for (const group_bound& bd : fairness.prefix_bounds)
        if (bd.at > limit)
          throw std::invalid_argument("prefix bound at position " + std::to_string(bd.at) +
                                      " beyond the bucket limit " + std::to_string(limit));
      return;
    }
  }
  throw std::invalid_argument("unknown variant kind");
}

bool variant_spec::satisfies(const bucket_order& b, int n) const {
  switch (kind) {
    case variant_kind::obop:
      return true;
    case variant_kind::fixed_buckets:
      return b.bucket_count() == p;
    case variant_kind::equal_sizes: {
      if (b.bucket_count() != p) return false;
      for (const auto& bucket : b.buckets)
        if (static_cast<int>(bucket.size()) != q) return false;
      return true;
    }
    case variant_kind::prescribed_sizes:
      return b.sizes() == sizes;
    case variant_kind::tcu:
      // an empty tail keeps every weak order; otherwise the final bucket is
      // the collapsed tail and must have exactly n-k items
      return k == n || static_cast<int>(b.buckets.back().size()) == n - k;
    case variant_kind::fair:
      break;
  }

  const int limit = fair_bucket_limit(n);
  const int count = b.bucket_count();
  if (fair_sizes) {
    if (b.sizes() != *fair_sizes) return false;
  } else if (fair_p && count != *fair_p) {
    return false;
  }
  if (count > limit || count < min_buckets) return false;

  const std::vector<int> owner = fairness.group_of(n);
  const int g = fairness.group_count();
  std::vector<std::vector<long long>> per_bucket(
      static_cast<std::size_t>(count), std::vector<long long>(static_cast<std::size_t>(g), 0));
  for (int u = 0; u < count; ++u)
    for (int item : b.buckets[static_cast<std::size_t>(u)])
      ++per_bucket[static_cast<std::size_t>(u)][static_cast<std::size_t>(owner[static_cast<std::size_t>(item)])];

  std::vector<long long> in_prefix(static_cast<std::size_t>(g), 0);
  long long total = 0;
  for (int l = 1; l <= limit; ++l) {
    if (l <= count) {
      total += static_cast<long long>(b.buckets[static_cast<std::size_t>(l - 1)].size());
      for (int i = 0; i < g; ++i)
        in_prefix[static_cast<std::size_t>(i)] += per_bucket[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < g; ++i)
      if (!fair_share_ok(fairness.lambda_at(i, l), fairness.mu_at(i, l),
                         in_prefix[static_cast<std::size_t>(i)], total))
        return false;
  }

  for (const group_bound& bd : fairness.bucket_bounds) {
    long long cnt = bd.at <= count
                        ? per_bucket[static_cast<std::size_t>(bd.at - 1)][static_cast<std::size_t>(bd.group)]
                        : 0;
    if (bd.lower && cnt < *bd.lower) return false;
    if (bd.upper && cnt > *bd.upper) return false;
  }
  for (const group_bound& bd : fairness.prefix_bounds) {
    long long cnt = 0;
    for (int u = 0; u < std::min(bd.at, count); ++u)
      cnt += per_bucket[static_cast<std::size_t>(u)][static_cast<std::size_t>(bd.group)];
    if (bd.lower && cnt < *bd.lower) return false;
    if (bd.upper && cnt > *bd.upper) return false;
  }
  return true;
}

std::string variant_spec::str() const {
  std::ostringstream os;
  switch (kind) {
    case variant_kind::obop:
      return "obop";
    case variant_kind::fixed_buckets:
      os << "fixed-buckets p=" << p;
      return os.str();
    case variant_kind::equal_sizes:
      os << "equal-sizes p=" << p << " q=" << q;
      return os.str();
    case variant_kind::prescribed_sizes: {
      os << "prescribed-sizes (";
      for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
      os << ")";
      return os.str();
    }
    case variant_kind::tcu:
      os << "tcu k=" << k;
      return os.str();
    case variant_kind::fair:
      break;
  }
  os << "fair groups=" << fairness.group_count();
  if (fair_p) os << " p=" << *fair_p;
  if (fair_sizes) {
    os << " sizes=(";
    for (std::size_t i = 0; i < fair_sizes->size(); ++i)
      os << (i ? "," : "") << (*fair_sizes)[i];
    os << ")";
  }
  if (max_buckets > 0) os << " max-buckets=" << max_buckets;
  if (min_buckets > 0) os << " min-buckets=" << min_buckets;
  return os.str();
}

namespace {

using nlohmann::ordered_json;

const char* kind_tag(variant_kind k) {
  switch (k) {
    case variant_kind::obop: return "obop";
    case variant_kind::fixed_buckets: return "fixed_buckets";
    case variant_kind::equal_sizes: return "equal_sizes";
    case variant_kind::prescribed_sizes: return "prescribed_sizes";
    case variant_kind::tcu: return "tcu";
    case variant_kind::fair: return "fair";
  }
  return "obop";
}

ordered_json bounds_to_json(const std::vector<group_bound>& bounds) {
  ordered_json arr = ordered_json::array();
  for (const group_bound& bd : bounds) {
    ordered_json j;
    j["group"] = bd.group + 1;
    j["at"] = bd.at;
    if (bd.lower) j["lower"] = *bd.lower;
    if (bd.upper) j["upper"] = *bd.upper;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<group_bound> bounds_from_json(const ordered_json& arr, const char* which) {
  std::vector<group_bound> out;
  for (const auto& j : arr) {
    group_bound bd;
    for (const auto& [key, value] : j.items()) {
      if (key == "group") bd.group = value.get<int>() - 1;
      else if (key == "at") bd.at = value.get<int>();
      else if (key == "lower") bd.lower = value.get<int>();
      else if (key == "upper") bd.upper = value.get<int>();
      else throw std::invalid_argument(std::string("unknown key \"") + key + "\" in " + which +
                                       " bound");
    }
    out.push_back(bd);
  }
  return out;
}

rational fraction_from_json(const ordered_json& j) {
  if (j.is_string()) return rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return rational(j.get<std::int64_t>());
  throw std::invalid_argument("fairness fractions must be \"p/q\" strings");
}

std::vector<std::vector<rational>> grid_from_json(const ordered_json& arr) {
  std::vector<std::vector<rational>> grid;
  for (const auto& row : arr) {
    std::vector<rational> r;
    for (const auto& cell : row) r.push_back(fraction_from_json(cell));
    grid.push_back(std::move(r));
  }
  return grid;
}

}  // namespace

std::string variant_spec::to_json() const {
  ordered_json j;
  j["kind"] = kind_tag(kind);
  switch (kind) {
    case variant_kind::obop:
      break;
    case variant_kind::fixed_buckets:
      j["p"] = p;
      break;
    case variant_kind::equal_sizes:
      j["p"] = p;
      j["q"] = q;
      break;
    case variant_kind::prescribed_sizes:
      j["sizes"] = sizes;
      break;
    case variant_kind::tcu:
      j["k"] = k;
      break;
    case variant_kind::fair: {
      ordered_json groups = ordered_json::array();
      for (const auto& grp : fairness.groups) {
        ordered_json one = ordered_json::array();
        for (int item : grp) one.push_back(item + 1);
        groups.push_back(std::move(one));
      }
      j["groups"] = std::move(groups);
      auto grid_out = [](const std::vector<std::vector<rational>>& grid) {
        ordered_json arr = ordered_json::array();
        for (const auto& row : grid) {
          ordered_json r = ordered_json::array();
          for (const rational& v : row) r.push_back(v.str());
          arr.push_back(std::move(r));
        }
        return arr;
      };
      if (!fairness.lambda.empty()) j["lambda"] = grid_out(fairness.lambda);
      if (!fairness.mu.empty()) j["mu"] = grid_out(fairness.mu);
      if (fair_p) j["fixed_p"] = *fair_p;
      if (fair_sizes) j["capacities"] = *fair_sizes;
      if (max_buckets > 0) j["max_buckets"] = max_buckets;
      if (min_buckets > 0) j["min_buckets"] = min_buckets;
      if (!fairness.bucket_bounds.empty())
        j["bucket_bounds"] = bounds_to_json(fairness.bucket_bounds);
      if (!fairness.prefix_bounds.empty())
        j["prefix_bounds"] = bounds_to_json(fairness.prefix_bounds);
      break;
    }
  }
  return j.dump();
}

variant_spec variant_spec::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("variant JSON does not parse: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("variant JSON must be an object with a \"kind\" tag");
  const std::string tag = j["kind"].get<std::string>();

  auto expect_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
      (void)value;
      bool ok = key == "kind";
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok)
        throw std::invalid_argument("unknown key \"" + key + "\" for variant kind \"" + tag +
                                    "\"");
    }
  };

  variant_spec v;
  if (tag == "obop") {
    expect_keys({});
    return v;
  }
  if (tag == "fixed_buckets") {
    expect_keys({"p"});
    if (!j.contains("p")) throw std::invalid_argument("fixed_buckets requires \"p\"");
    return fixed_buckets(j["p"].get<int>());
  }
  if (tag == "equal_sizes") {
    expect_keys({"p", "q"});
    if (!j.contains("p") || !j.contains("q"))
      throw std::invalid_argument("equal_sizes requires \"p\" and \"q\"");
    return equal_sizes(j["p"].get<int>(), j["q"].get<int>());
  }
  if (tag == "prescribed_sizes") {
    expect_keys({"sizes"});
    if (!j.contains("sizes")) throw std::invalid_argument("prescribed_sizes requires \"sizes\"");
    return prescribed_sizes(j["sizes"].get<std::vector<int>>());
  }
  if (tag == "tcu") {
    expect_keys({"k"});
    if (!j.contains("k")) throw std::invalid_argument("tcu requires \"k\"");
    return tcu(j["k"].get<int>());
  }
  if (tag != "fair") throw std::invalid_argument("unknown variant kind \"" + tag + "\"");

  expect_keys({"groups", "lambda", "mu", "fixed_p", "capacities", "max_buckets", "min_buckets",
               "bucket_bounds", "prefix_bounds"});
  if (!j.contains("groups")) throw std::invalid_argument("fair requires \"groups\"");
  fairness_spec f;
  for (const auto& grp : j["groups"]) {
    std::vector<int> items;
    for (const auto& item : grp) items.push_back(item.get<int>() - 1);
    f.groups.push_back(std::move(items));
  }
  if (j.contains("lambda")) f.lambda = grid_from_json(j["lambda"]);
  if (j.contains("mu")) f.mu = grid_from_json(j["mu"]);
  if (j.contains("bucket_bounds"))
    f.bucket_bounds = bounds_from_json(j["bucket_bounds"], "bucket");
  if (j.contains("prefix_bounds"))
    f.prefix_bounds = bounds_from_json(j["prefix_bounds"], "prefix");
  v = fair(std::move(f));
  if (j.contains("fixed_p")) v.fair_p = j["fixed_p"].get<int>();
  if (j.contains("capacities")) v.fair_sizes = j["capacities"].get<std::vector<int>>();
  if (j.contains("max_buckets")) v.max_buckets = j["max_buckets"].get<int>();
  if (j.contains("min_buckets")) v.min_buckets = j["min_buckets"].get<int>();
  return v;
}

}  // namespace bucketorder
