// bucketorder: exact bucket-order aggregation from the command line.
// Every subcommand is a thin shell over the library; anything it prints can
// be reproduced by the corresponding calls in bucketorder/*.hpp.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bucketorder/analysis.hpp"
#include "bucketorder/lp_format.hpp"
#include "bucketorder/matrix_io.hpp"
#include "bucketorder/model_builders.hpp"
#include "bucketorder/profile.hpp"
#include "bucketorder/solve.hpp"

namespace {

using nlohmann::json;
using namespace bucketorder;

constexpr int exit_ok = 0;
constexpr int exit_input_error = 1;
constexpr int exit_limit = 2;
constexpr int exit_infeasible = 3;

int exit_code_for(solve_status s) {
  switch (s) {
    case solve_status::optimal: return exit_ok;
    case solve_status::limit: return exit_limit;
    case solve_status::infeasible: return exit_infeasible;
  }
  return exit_input_error;
}

// ---------------------------------------------------------------- options --

struct global_opts {
  double time_limit = 0.0;  // seconds, 0 = none
  int jobs = 1;
  std::string format = "text";
  unsigned seed = 12345;
};

struct input_opts {
  std::string matrix_path;
  std::string profile_path;
};

struct variant_opts {
  std::string variant;  // empty = obop unless --variant-json given
  int p = 0;
  int q = 0;
  int k = 0;
  std::string sizes;
  std::string capacities;
  std::string groups;
  std::string lambda;
  std::string mu;
  int max_buckets = 0;
  int min_buckets = 0;
  std::vector<std::string> bucket_bounds;
  std::vector<std::string> prefix_bounds;
  std::string variant_json_path;
};

struct solver_opts {
  std::uint64_t node_limit = 0;
  int optima_cap = 64;
  int threshold = 8;
  std::vector<std::string> hints;
  std::string trace_path;
};

struct output_opts {
  std::string path;  // empty = stdout
};

void add_global_flags(CLI::App* cmd, global_opts& g) {
  cmd->add_option("--time-limit", g.time_limit, "Wall-clock limit in seconds (0 = none)");
  cmd->add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--seed", g.seed, "Seed for randomized generation");
}

void add_input_flags(CLI::App* cmd, input_opts& in) {
  auto* m = cmd->add_option("--matrix", in.matrix_path,
                            "Pair order matrix CSV (entries p/q, integers, or decimals)");
  auto* p = cmd->add_option("--profile", in.profile_path,
                            "Ranking profile in the PrefLib text format");
  m->excludes(p);
}

void add_variant_flags(CLI::App* cmd, variant_opts& vo) {
  cmd->add_option("--variant", vo.variant, "Problem variant")
      ->check(CLI::IsMember({"obop", "fixed-p", "equal", "prescribed", "tcu", "fair"}));
  cmd->add_option("--p", vo.p, "Bucket count (fixed-p, equal, fair)");
  cmd->add_option("--q", vo.q, "Items per bucket (equal)");
  cmd->add_option("--k", vo.k, "Positions kept out of the collapsed tail (tcu)");
  cmd->add_option("--sizes", vo.sizes, "Bucket sizes best first, e.g. 1,3,4 (prescribed)");
  cmd->add_option("--capacities", vo.capacities, "Exact bucket sizes, e.g. 1,2,2,3 (fair)");
  cmd->add_option("--groups", vo.groups,
                  "Item groups, 1-based, ';' between groups, e.g. 1,3,4;2,5 (fair)");
  cmd->add_option("--lambda", vo.lambda,
                  "Lower fair-share fraction: one value for all groups, or ';'-separated "
                  "per-group values, e.g. 1/2 or 1/2;1/3");
  cmd->add_option("--mu", vo.mu, "Upper fair-share fraction, same shape as --lambda");
  cmd->add_option("--max-buckets", vo.max_buckets, "Cap on the bucket count (fair)");
  cmd->add_option("--min-buckets", vo.min_buckets,
                  "This many leading buckets must be non-empty (fair)");
  cmd->add_option("--bucket-bound", vo.bucket_bounds,
                  "group:bucket:lo:hi absolute count bound, '-' leaves a side open (fair)");
  cmd->add_option("--prefix-bound", vo.prefix_bounds,
                  "group:prefix:lo:hi absolute count bound on a bucket prefix (fair)");
  cmd->add_option("--variant-json", vo.variant_json_path,
                  "Load the full variant from a JSON file instead of flags");
}

void add_solver_flags(CLI::App* cmd, solver_opts& so) {
  cmd->add_option("--node-limit", so.node_limit, "Search node limit (0 = none)");
  cmd->add_option("--optima-cap", so.optima_cap, "Most alternative optima to report")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--enumeration-threshold", so.threshold,
                  "Below this item count the exhaustive oracle is used directly");
  cmd->add_option("--hint", so.hints,
                  "Known-feasible order seeding the incumbent, e.g. '1 3 | 2'");
  cmd->add_option("--trace", so.trace_path, "Write line-delimited search events to this file");
}

void add_output_flag(CLI::App* cmd, output_opts& out) {
  cmd->add_option("--output,-o", out.path, "Write the report here instead of stdout");
}

// ----------------------------------------------------------------- parsing --

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (const std::string& tok : split(s, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad " + what + " entry '" + tok + "' in '" + s + "'");
    }
  }
  return out;
}

// "1,3,4;2,5" with 1-based items
std::vector<std::vector<int>> parse_groups(const std::string& s) {
  std::vector<std::vector<int>> out;
  for (const std::string& part : split(s, ';')) {
    std::vector<int> g = parse_int_list(part, "group");
    for (int& v : g) {
      if (v < 1) throw std::invalid_argument("group items are numbered from 1");
      --v;
    }
    out.push_back(std::move(g));
  }
  return out;
}

// one value for every group, or one value per group; each uniform over prefixes
std::vector<std::vector<rational>> parse_share_grid(const std::string& s, int groups, int n,
                                                    const std::string& what) {
  const std::vector<std::string> parts = split(s, ';');
  if (parts.size() != 1 && static_cast<int>(parts.size()) != groups)
    throw std::invalid_argument("--" + what + " needs one value or one per group (" +
                                std::to_string(groups) + ")");
  std::vector<std::vector<rational>> grid;
  for (int i = 0; i < groups; ++i) {
    const std::string& tok = parts.size() == 1 ? parts[0] : parts[static_cast<std::size_t>(i)];
    grid.emplace_back(static_cast<std::size_t>(n), rational::parse(tok));
  }
  return grid;
}

// "group:at:lo:hi", 1-based group, '-' leaves a side open
group_bound parse_group_bound(const std::string& s) {
  const std::vector<std::string> parts = split(s, ':');
  if (parts.size() != 4)
    throw std::invalid_argument("bound '" + s + "' is not group:at:lo:hi");
  group_bound b;
  b.group = std::stoi(parts[0]) - 1;
  b.at = std::stoi(parts[1]);
  if (parts[2] != "-") b.lower = std::stoi(parts[2]);
  if (parts[3] != "-") b.upper = std::stoi(parts[3]);
  return b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------------- input --

struct loaded_input {
  pair_order_matrix c;
  std::int64_t voters = -1;  // known only for profiles
  std::string source;
};

loaded_input load_input(const input_opts& in) {
  if (in.matrix_path.empty() == in.profile_path.empty())
    throw std::invalid_argument("exactly one of --matrix / --profile is required");
  loaded_input out;
  if (!in.matrix_path.empty()) {
    out.c = load_matrix_csv(in.matrix_path);
    out.source = in.matrix_path;
  } else {
    parse_result pr = load_profile(in.profile_path);
    for (const std::string& w : pr.warnings) std::cerr << in.profile_path << ": " << w << "\n";
    out.c = matrix_from_counts(preference_counts_of(pr.profile));
    out.voters = pr.profile.voters;
    out.source = in.profile_path;
  }
  return out;
}

// --------------------------------------------------------------- variants --

void reject_flag(bool set, const std::string& flag, const std::string& variant) {
  if (set)
    throw std::invalid_argument("--" + flag + " does not apply to variant " + variant);
}

variant_spec make_variant(const variant_opts& vo, int n) {
  if (!vo.variant_json_path.empty()) {
    const bool other = !vo.variant.empty() || vo.p || vo.q || vo.k || !vo.sizes.empty() ||
                       !vo.capacities.empty() || !vo.groups.empty() || !vo.lambda.empty() ||
                       !vo.mu.empty() || vo.max_buckets || vo.min_buckets ||
                       !vo.bucket_bounds.empty() || !vo.prefix_bounds.empty();
    if (other)
      throw std::invalid_argument("--variant-json excludes the other variant flags");
    variant_spec v = variant_spec::from_json(read_file(vo.variant_json_path));
    v.validate(n);
    return v;
  }
  const std::string name = vo.variant.empty() ? "obop" : vo.variant;
  const bool fair = name == "fair";
  if (!fair) {
    reject_flag(!vo.capacities.empty(), "capacities", name);
    reject_flag(!vo.groups.empty(), "groups", name);
    reject_flag(!vo.lambda.empty(), "lambda", name);
    reject_flag(!vo.mu.empty(), "mu", name);
    reject_flag(vo.max_buckets != 0, "max-buckets", name);
    reject_flag(vo.min_buckets != 0, "min-buckets", name);
    reject_flag(!vo.bucket_bounds.empty(), "bucket-bound", name);
    reject_flag(!vo.prefix_bounds.empty(), "prefix-bound", name);
  }
  if (name != "fixed-p" && name != "equal" && !fair) reject_flag(vo.p != 0, "p", name);
  if (name != "equal") reject_flag(vo.q != 0, "q", name);
  if (name != "tcu") reject_flag(vo.k != 0, "k", name);
  if (name != "prescribed") reject_flag(!vo.sizes.empty(), "sizes", name);

  variant_spec v;
  if (name == "obop") {
    v = variant_spec::obop();
  } else if (name == "fixed-p") {
    if (vo.p < 1) throw std::invalid_argument("variant fixed-p needs --p");
    v = variant_spec::fixed_buckets(vo.p);
  } else if (name == "equal") {
    if (vo.p < 1 || vo.q < 1) throw std::invalid_argument("variant equal needs --p and --q");
    v = variant_spec::equal_sizes(vo.p, vo.q);
  } else if (name == "prescribed") {
    if (vo.sizes.empty()) throw std::invalid_argument("variant prescribed needs --sizes");
    v = variant_spec::prescribed_sizes(parse_int_list(vo.sizes, "size"));
  } else if (name == "tcu") {
    if (vo.k < 1) throw std::invalid_argument("variant tcu needs --k");
    v = variant_spec::tcu(vo.k);
  } else {
    if (vo.groups.empty()) throw std::invalid_argument("variant fair needs --groups");
    fairness_spec f;
    f.groups = parse_groups(vo.groups);
    const int groups = f.group_count();
    if (!vo.lambda.empty()) f.lambda = parse_share_grid(vo.lambda, groups, n, "lambda");
    if (!vo.mu.empty()) f.mu = parse_share_grid(vo.mu, groups, n, "mu");
    for (const std::string& s : vo.bucket_bounds) f.bucket_bounds.push_back(parse_group_bound(s));
    for (const std::string& s : vo.prefix_bounds) f.prefix_bounds.push_back(parse_group_bound(s));
    v = variant_spec::fair(f);
    if (vo.p > 0) v.fair_p = vo.p;
    if (!vo.capacities.empty()) v.fair_sizes = parse_int_list(vo.capacities, "capacity");
    v.max_buckets = vo.max_buckets;
    v.min_buckets = vo.min_buckets;
  }
  v.validate(n);
  return v;
}

// ----------------------------------------------------------------- output --

struct report_sink {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit report_sink(const output_opts& out) {
    if (!out.path.empty()) {
      file.open(out.path, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot write '" + out.path + "'");
      os = &file;
    }
  }
  std::ostream& stream() { return *os; }
};

std::string order_str(const bucket_order& b, const variant_spec& v, int n) {
  if (v.kind == variant_kind::tcu && v.k < n) return b.str_tail_separated();
  return b.str();
}

json rational_json(const rational& r) {
  return json{{"exact", r.str()}, {"display", r.str_2dp()}};
}

json optional_rational_json(const std::optional<rational>& r) {
  return r ? rational_json(*r) : json(nullptr);
}

std::string fixed3(double x) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(3);
  ss << x;
  return ss.str();
}

json solve_report_json(const loaded_input& in, const variant_spec& v, const solve_result& r) {
  json doc{
      {"schema", "bucketorder/solve-report/1"},
      {"input", in.source},
      {"n", in.c.n},
      {"voters", in.voters >= 0 ? json(in.voters) : json(nullptr)},
      {"variant", v.str()},
      {"status", status_str(r.status)},
      {"objective", optional_rational_json(r.objective)},
      {"bound", optional_rational_json(r.bound)},
      {"optima", json::array()},
      {"bucket_counts", r.bucket_counts},
      {"optima_count", optima_count_str(r.optima.size())},
      {"nodes", r.nodes},
      {"elapsed_s", r.elapsed_s},
  };
  for (const bucket_order& b : r.optima) doc["optima"].push_back(order_str(b, v, in.c.n));
  if (r.status == solve_status::limit && r.objective && r.bound)
    doc["gap_percent"] = optional_rational_json(gap_percent(*r.objective, *r.bound));
  return doc;
}

void solve_report_text(std::ostream& os, const loaded_input& in, const variant_spec& v,
                       const solve_result& r) {
  os << "input: " << in.source << "  (n = " << in.c.n;
  if (in.voters >= 0) os << ", voters = " << in.voters;
  os << ")\n";
  os << "variant: " << v.str() << "\n";
  os << "status: " << status_str(r.status) << "\n";
  if (r.objective)
    os << "objective: " << r.objective->str_2dp() << " = " << r.objective->str() << "\n";
  if (r.bound) os << "bound: " << r.bound->str_2dp() << " = " << r.bound->str() << "\n";
  if (r.status == solve_status::limit && r.objective && r.bound) {
    if (auto g = gap_percent(*r.objective, *r.bound))
      os << "gap: " << g->str_2dp() << "%\n";
  }
  if (!r.optima.empty()) {
    os << "optima (" << optima_count_str(r.optima.size()) << "):\n";
    for (const bucket_order& b : r.optima) os << "  " << order_str(b, v, in.c.n) << "\n";
  }
  os << "nodes: " << r.nodes << "\n";
  os << "time: " << fixed3(r.elapsed_s) << " s\n";
}

void solve_report_csv(std::ostream& os, const solve_result& r) {
  os << "status,objective_exact,objective_2dp,bound_exact,bound_2dp,optima,nodes,elapsed_s\n";
  os << status_str(r.status) << ",";
  os << (r.objective ? r.objective->str() : "") << ",";
  os << (r.objective ? r.objective->str_2dp() : "") << ",";
  os << (r.bound ? r.bound->str() : "") << ",";
  os << (r.bound ? r.bound->str_2dp() : "") << ",";
  os << optima_count_str(r.optima.size()) << "," << r.nodes << "," << fixed3(r.elapsed_s)
     << "\n";
}

solve_config make_config(const global_opts& g, const solver_opts& so, std::ofstream& trace_file,
                         int n) {
  solve_config cfg;
  if (g.time_limit > 0) cfg.time_limit_s = g.time_limit;
  if (so.node_limit > 0) cfg.node_limit = so.node_limit;
  cfg.jobs = g.jobs;
  cfg.optima_cap = so.optima_cap;
  cfg.enumeration_threshold = so.threshold;
  for (const std::string& h : so.hints) cfg.hints.push_back(bucket_order::parse(h, n));
  if (!so.trace_path.empty()) {
    trace_file.open(so.trace_path, std::ios::binary);
    if (!trace_file) throw std::invalid_argument("cannot write '" + so.trace_path + "'");
    cfg.trace = &trace_file;
  }
  return cfg;
}

// ------------------------------------------------------------ subcommands --

struct solve_cmd_opts {
  global_opts g;
  input_opts in;
  variant_opts vo;
  solver_opts so;
  output_opts out;
  bool orders_only = false;  // optima subcommand
  int oracle_cap = 0;        // oracle subcommand: refuse larger n
};

int run_solve_like(const solve_cmd_opts& o, bool oracle) {
  const loaded_input in = load_input(o.in);
  const variant_spec v = make_variant(o.vo, in.c.n);
  std::ofstream trace_file;
  const solve_config cfg = make_config(o.g, o.so, trace_file, in.c.n);
  solve_result r;
  if (oracle) {
    r = brute_force_solve(in.c, v, o.oracle_cap, o.g.jobs);
    if (static_cast<int>(r.optima.size()) > cfg.optima_cap) {
      r.optima.resize(static_cast<std::size_t>(cfg.optima_cap));
      r.bucket_counts.resize(r.optima.size());
    }
  } else {
    r = solve(in.c, v, cfg);
  }
  report_sink sink(o.out);
  std::ostream& os = sink.stream();
  if (o.orders_only) {
    if (o.g.format == "json") {
      json doc{{"schema", "bucketorder/optima-report/1"},
               {"status", status_str(r.status)},
               {"objective", optional_rational_json(r.objective)},
               {"optima_count", optima_count_str(r.optima.size())},
               {"orders", json::array()}};
      for (const bucket_order& b : r.optima) doc["orders"].push_back(order_str(b, v, in.c.n));
      os << doc.dump(2) << "\n";
    } else if (o.g.format == "csv") {
      os << "index,order,buckets\n";
      for (std::size_t i = 0; i < r.optima.size(); ++i)
        os << i + 1 << ",\"" << order_str(r.optima[i], v, in.c.n) << "\","
           << r.optima[i].bucket_count() << "\n";
    } else {
      for (const bucket_order& b : r.optima) os << order_str(b, v, in.c.n) << "\n";
    }
  } else if (o.g.format == "json") {
    os << solve_report_json(in, v, r).dump(2) << "\n";
  } else if (o.g.format == "csv") {
    solve_report_csv(os, r);
  } else {
    solve_report_text(os, in, v, r);
  }
  return exit_code_for(r.status);
}

struct sweep_cmd_opts {
  global_opts g;
  input_opts in;
  solver_opts so;
  output_opts out;
  std::string parameter;  // "p" or "k"
  std::string values;     // explicit list, else 1..n
};

int run_sweep(const sweep_cmd_opts& o) {
  const loaded_input in = load_input(o.in);
  std::ofstream trace_file;
  const solve_config cfg = make_config(o.g, o.so, trace_file, in.c.n);
  std::vector<int> params;
  if (!o.values.empty()) params = parse_int_list(o.values, "sweep value");
  const sweep_result r = o.parameter == "p" ? p_sweep(in.c, params, cfg)
                                            : tcu_sweep(in.c, params, cfg);
  report_sink sink(o.out);
  std::ostream& os = sink.stream();
  const auto is_min = [&r](int param) {
    return std::find(r.minima.begin(), r.minima.end(), param) != r.minima.end();
  };
  if (o.g.format == "json") {
    json doc{{"schema", "bucketorder/sweep-report/1"},
             {"input", in.source},
             {"parameter", r.parameter},
             {"points", json::array()},
             {"minima", r.minima}};
    for (const sweep_point& pt : r.values)
      doc["points"].push_back(json{{"param", pt.param},
                                   {"objective", optional_rational_json(pt.objective)},
                                   {"status", status_str(pt.status)},
                                   {"is_min", is_min(pt.param)}});
    if (r.k_full) doc["k_full"] = *r.k_full;
    if (r.k_worst_bucket) doc["k_worst_bucket"] = *r.k_worst_bucket;
    os << doc.dump(2) << "\n";
  } else if (o.g.format == "csv") {
    write_sweep_csv(os, r);
  } else {
    os << "sweep over " << r.parameter << " (" << r.values.size() << " points)\n";
    for (const sweep_point& pt : r.values) {
      os << "  " << r.parameter << " = " << pt.param << ": ";
      if (pt.objective)
        os << pt.objective->str_2dp();
      else
        os << "-";
      os << "  " << status_str(pt.status) << (is_min(pt.param) ? "  <- min" : "") << "\n";
    }
    os << "minima:";
    for (int m : r.minima) os << " " << m;
    os << "\n";
    if (r.k_full) os << "unrestricted at k = " << *r.k_full << "\n";
    if (r.k_worst_bucket)
      os << "optimum recurs at k = " << *r.k_worst_bucket << " (n minus the last bucket)\n";
  }
  bool limited = false;
  for (const sweep_point& pt : r.values) limited |= pt.status == solve_status::limit;
  return limited ? exit_limit : exit_ok;
}

struct fairness_cmd_opts {
  global_opts g;
  variant_opts vo;
  output_opts out;
  std::string order;
};

int run_fairness(const fairness_cmd_opts& o) {
  if (o.order.empty()) throw std::invalid_argument("--order is required");
  const bucket_order b = bucket_order::parse(o.order);
  int n = 0;
  for (const auto& bucket : b.buckets) n += static_cast<int>(bucket.size());
  fairness_spec f;
  if (!o.vo.variant_json_path.empty()) {
    const variant_spec v = make_variant(o.vo, n);
    if (v.kind != variant_kind::fair)
      throw std::invalid_argument("--variant-json must hold a fair variant");
    f = v.fairness;
  } else {
    variant_opts vo = o.vo;
    vo.variant = "fair";
    f = make_variant(vo, n).fairness;
  }
  const std::vector<trajectory_cell> cells = fairness_trajectory(b, f);
  int outside = 0;
  for (const trajectory_cell& c : cells) outside += c.within ? 0 : 1;
  report_sink sink(o.out);
  std::ostream& os = sink.stream();
  if (o.g.format == "json") {
    json doc{{"schema", "bucketorder/fairness-report/1"},
             {"order", b.str()},
             {"cells", json::array()},
             {"outside_bounds", outside}};
    for (const trajectory_cell& c : cells)
      doc["cells"].push_back(json{{"group", c.group + 1},
                                  {"prefix", c.prefix},
                                  {"t", c.t},
                                  {"s", c.s},
                                  {"proportion", rational_json(c.proportion)},
                                  {"target", rational_json(c.target)},
                                  {"within", c.within}});
    os << doc.dump(2) << "\n";
  } else if (o.g.format == "csv") {
    write_trajectory_csv(os, cells);
  } else {
    os << "order: " << b.str() << "\n";
    for (const trajectory_cell& c : cells) {
      os << "group " << c.group + 1 << " prefix " << c.prefix << ": " << c.s << "/" << c.t
         << " = " << c.proportion.str_2dp() << " (target " << c.target.str() << ")"
         << (c.within ? "" : "  OUTSIDE") << "\n";
    }
    if (outside == 0)
      os << "all prefixes within bounds\n";
    else
      os << outside << " prefix shares outside bounds\n";
  }
  return exit_ok;
}

struct export_cmd_opts {
  global_opts g;
  input_opts in;
  variant_opts vo;
  output_opts out;
  std::string formulation = "assignment";
  bool add_comparability = false;
  bool add_transitivity = false;
  bool add_base_cuts = false;
  bool relax_x = false;
  bool substitute_9 = false;
  bool add_ineq_9 = false;
  std::vector<std::string> tail_bounds;
  std::string check_order;
};

int run_export(const export_cmd_opts& o) {
  const loaded_input in = load_input(o.in);
  const variant_spec v = make_variant(o.vo, in.c.n);
  const std::string vname = v.str();

  build_options opt;
  opt.representative = o.formulation == "representative";
  if (opt.representative && v.kind != variant_kind::fixed_buckets)
    throw std::invalid_argument("--formulation representative needs --variant fixed-p");
  const bool assignment_family = v.kind == variant_kind::fixed_buckets ||
                                 v.kind == variant_kind::equal_sizes ||
                                 v.kind == variant_kind::prescribed_sizes;
  const bool assignment_flags =
      o.add_comparability || o.add_transitivity || o.add_base_cuts || o.relax_x;
  if (assignment_flags && (!assignment_family || opt.representative))
    throw std::invalid_argument(
        "--add-comparability/--add-transitivity/--add-base-cuts/--relax-x apply only to the "
        "assignment formulation of fixed-p, equal, or prescribed");
  if ((o.substitute_9 || o.add_ineq_9) && !opt.representative)
    throw std::invalid_argument("--substitute-9/--add-ineq-9 need --formulation representative");
  if (o.substitute_9 && o.add_ineq_9)
    throw std::invalid_argument("--substitute-9 and --add-ineq-9 are mutually exclusive");
  if (!o.tail_bounds.empty() && v.kind != variant_kind::tcu)
    throw std::invalid_argument("--tail-bound applies only to variant tcu");
  opt.assignment.add_comparability = o.add_comparability;
  opt.assignment.add_transitivity = o.add_transitivity;
  opt.assignment.add_base_valid_inequalities = o.add_base_cuts;
  opt.assignment.relax_x = o.relax_x;
  opt.rep.substitute_9 = o.substitute_9;
  opt.rep.add_9 = o.add_ineq_9;
  for (const std::string& s : o.tail_bounds) {
    // items:lo:hi with 1-based comma-separated items
    const std::vector<std::string> parts = split(s, ':');
    if (parts.size() != 3)
      throw std::invalid_argument("tail bound '" + s + "' is not items:lo:hi");
    tail_bound tb;
    tb.items = parse_int_list(parts[0], "tail bound item");
    for (int& it : tb.items) --it;
    if (parts[1] != "-") tb.lower = std::stoi(parts[1]);
    if (parts[2] != "-") tb.upper = std::stoi(parts[2]);
    opt.tcu.tail_bounds.push_back(tb);
  }

  const ilp_model m = build_model(in.c, v, opt);
  report_sink sink(o.out);
  sink.stream() << export_lp(m);

  if (o.check_order.empty()) return exit_ok;
  const bucket_order b = bucket_order::parse(o.check_order, in.c.n);
  try {
    const check_report cr = check_solution(m, encode_solution(b, m));
    if (cr.feasible) {
      std::cerr << "check: feasible, objective " << cr.objective.str_2dp() << " = "
                << cr.objective.str() << "\n";
      return exit_ok;
    }
    std::cerr << "check: infeasible, " << cr.violated.size() << " rows violated:";
    for (std::size_t i = 0; i < cr.violated.size() && i < 5; ++i)
      std::cerr << " " << cr.violated[i];
    std::cerr << "\n";
  } catch (const std::exception& e) {
    // the order cannot even index the model's variables
    std::cerr << "check: infeasible, " << e.what() << "\n";
  }
  return exit_infeasible;
}

// --------------------------------------------------------------- benchmark --

struct bench_cmd_opts {
  global_opts g;
  output_opts out;
  std::string manifest_path;
  int optima_cap = 64;
};

struct bench_row {
  std::string name;
  std::string path;
  std::string variant;
  std::string params;
  double time_limit = 0;
};

std::vector<bench_row> parse_manifest(const std::string& text) {
  std::vector<bench_row> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    bench_row row;
    if (!(ls >> row.name)) continue;  // blank or comment
    std::string limit;
    if (!(ls >> row.path >> row.variant >> row.params >> limit))
      throw std::invalid_argument("manifest line " + std::to_string(lineno) +
                                  ": expected 'name path variant params timelimit'");
    std::string extra;
    if (ls >> extra)
      throw std::invalid_argument("manifest line " + std::to_string(lineno) +
                                  ": trailing token '" + extra + "'");
    row.time_limit = limit == "-" ? 0.0 : std::stod(limit);
    rows.push_back(std::move(row));
  }
  return rows;
}

// manifest params column: '-', or comma-separated key=value pairs
// (p=, q=, k=, sizes=a:b:c, json=path)
variant_spec manifest_variant(const bench_row& row, int n) {
  variant_opts vo;
  if (row.variant == "fixed-p")
    vo.variant = "fixed-p";
  else if (row.variant == "obop" || row.variant == "equal" || row.variant == "prescribed" ||
           row.variant == "tcu" || row.variant == "fair")
    vo.variant = row.variant;
  else
    throw std::invalid_argument("unknown variant '" + row.variant + "'");
  if (row.params != "-") {
    for (const std::string& kv : split(row.params, ',')) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("bad params token '" + kv + "'");
      const std::string key = kv.substr(0, eq);
      const std::string val = kv.substr(eq + 1);
      if (key == "p")
        vo.p = std::stoi(val);
      else if (key == "q")
        vo.q = std::stoi(val);
      else if (key == "k")
        vo.k = std::stoi(val);
      else if (key == "sizes") {
        std::string sizes = val;
        std::replace(sizes.begin(), sizes.end(), ':', ',');
        vo.sizes = sizes;
      } else if (key == "json") {
        vo.variant = "";
        vo.variant_json_path = val;
      } else {
        throw std::invalid_argument("bad params key '" + key + "'");
      }
    }
  }
  return make_variant(vo, n);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string bench_csv_line(const bench_row& row, const std::string& err,
                           const loaded_input* in, const solve_result* r) {
  std::ostringstream os;
  os << csv_quote(row.name) << ",";
  if (in) os << in->c.n;
  os << ",";
  if (in && in->voters >= 0) os << in->voters;
  os << "," << csv_quote(row.variant) << ",";
  if (!err.empty()) {
    os << ",,,," << "Error" << ",,";
    std::string e = err;
    std::replace(e.begin(), e.end(), '\n', ' ');
    os << "," << csv_quote(e);
    return os.str();
  }
  // objective columns are filled only when the optimum is proven
  const bool opt = r->status == solve_status::optimal;
  os << (opt ? r->objective->str_2dp() : "") << ",";
  os << (opt ? r->objective->str() : "") << ",";
  os << utopian(in->c).bound.str_2dp() << ",";
  os << fixed3(r->elapsed_s) << ",";
  os << status_str(r->status) << ",";
  os << (opt ? optima_count_str(r->optima.size()) : "") << ",";
  std::string buckets;
  if (opt) {
    std::vector<int> counts = r->bucket_counts;
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
    for (std::size_t i = 0; i < counts.size(); ++i)
      buckets += (i ? "/" : "") + std::to_string(counts[i]);
  }
  os << buckets << ",";
  return os.str();
}

int run_bench(const bench_cmd_opts& o) {
  const std::vector<bench_row> rows = parse_manifest(read_file(o.manifest_path));
  report_sink sink(o.out);
  std::ostream& os = sink.stream();
  os << "name,n,m,variant,objective_2dp,objective_exact,utopian_2dp,time_s,status,optima,"
        "buckets,error\n";
  os.flush();

  std::vector<std::optional<std::string>> done(rows.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  const auto work = [&](std::size_t i) {
    const bench_row& row = rows[i];
    std::string line;
    try {
      input_opts in_opts;
      // matrices come as .csv, everything else is read as a profile
      const bool is_matrix =
          row.path.size() >= 4 && row.path.compare(row.path.size() - 4, 4, ".csv") == 0;
      (is_matrix ? in_opts.matrix_path : in_opts.profile_path) = row.path;
      const loaded_input in = load_input(in_opts);
      const variant_spec v = manifest_variant(row, in.c.n);
      solve_config cfg;
      if (row.time_limit > 0)
        cfg.time_limit_s = row.time_limit;
      else if (o.g.time_limit > 0)
        cfg.time_limit_s = o.g.time_limit;
      cfg.optima_cap = o.optima_cap;
      const solve_result r = solve(in.c, v, cfg);
      line = bench_csv_line(row, "", &in, &r);
    } catch (const std::exception& e) {
      std::cerr << row.name << ": " << e.what() << "\n";
      line = bench_csv_line(row, e.what(), nullptr, nullptr);
    }
    std::lock_guard<std::mutex> lock(mu);
    done[i] = std::move(line);
    cv.notify_all();
  };

  const int workers = std::max(1, std::min<int>(o.g.jobs, static_cast<int>(rows.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= rows.size()) return;
        work(i);
      }
    });

  // flush rows in manifest order as they complete
  std::size_t flushed = 0;
  {
    std::unique_lock<std::mutex> lock(mu);
    while (flushed < rows.size()) {
      cv.wait(lock, [&] { return done[flushed].has_value(); });
      while (flushed < rows.size() && done[flushed]) {
        os << *done[flushed] << "\n";
        os.flush();
        ++flushed;
      }
    }
  }
  for (std::thread& t : pool) t.join();
  return exit_ok;
}

// -------------------------------------------------------------- generation --

struct gen_cmd_opts {
  global_opts g;
  output_opts out;
  std::string kind = "matrix";
  int n = 0;
  int den = 100;
  std::int64_t voters = 100;
  int truncate = 0;  // profile: keep only the top entries of each ballot
};

int run_gen(const gen_cmd_opts& o) {
  if (o.n < 1) throw std::invalid_argument("--n is required");
  std::mt19937 rng(o.g.seed);
  report_sink sink(o.out);
  std::ostream& os = sink.stream();
  if (o.kind == "matrix") {
    if (o.den < 1) throw std::invalid_argument("--den must be positive");
    pair_order_matrix c(o.n);
    std::uniform_int_distribution<int> d(0, o.den);
    for (int r = 0; r < o.n; ++r)
      for (int s = r + 1; s < o.n; ++s) {
        const int v = d(rng);
        c.at(r, s) = rational(v, o.den);
        c.at(s, r) = rational(o.den - v, o.den);
      }
    os << matrix_csv(c);
  } else {
    if (o.voters < 1) throw std::invalid_argument("--voters must be positive");
    os << "# NUMBER ALTERNATIVES: " << o.n << "\n";
    os << "# NUMBER VOTERS: " << o.voters << "\n";
    std::vector<int> perm(static_cast<std::size_t>(o.n));
    for (int i = 0; i < o.n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    for (std::int64_t b = 0; b < o.voters; ++b) {
      std::shuffle(perm.begin(), perm.end(), rng);
      const int keep = o.truncate > 0 ? std::min(o.truncate, o.n) : o.n;
      os << "1: ";
      for (int i = 0; i < keep; ++i) os << (i ? "," : "") << perm[static_cast<std::size_t>(i)];
      os << "\n";
    }
  }
  return exit_ok;
}

}  // namespace

// ------------------------------------------------------------------- main --

int main(int argc, char** argv) {
  CLI::App app{"Exact minimum-distance bucket orders from pair order matrices"};
  app.require_subcommand(1);

  solve_cmd_opts solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance exactly");
  solve_cmd->fallthrough();
  add_global_flags(solve_cmd, solve_opts.g);
  add_input_flags(solve_cmd, solve_opts.in);
  add_variant_flags(solve_cmd, solve_opts.vo);
  add_solver_flags(solve_cmd, solve_opts.so);
  add_output_flag(solve_cmd, solve_opts.out);

  solve_cmd_opts optima_opts;
  optima_opts.orders_only = true;
  auto* optima_cmd = app.add_subcommand("optima", "List the alternative optima");
  optima_cmd->fallthrough();
  add_global_flags(optima_cmd, optima_opts.g);
  add_input_flags(optima_cmd, optima_opts.in);
  add_variant_flags(optima_cmd, optima_opts.vo);
  add_solver_flags(optima_cmd, optima_opts.so);
  add_output_flag(optima_cmd, optima_opts.out);

  solve_cmd_opts oracle_opts;
  oracle_opts.oracle_cap = 8;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Solve by exhaustive enumeration (small n only)");
  oracle_cmd->fallthrough();
  add_global_flags(oracle_cmd, oracle_opts.g);
  add_input_flags(oracle_cmd, oracle_opts.in);
  add_variant_flags(oracle_cmd, oracle_opts.vo);
  add_solver_flags(oracle_cmd, oracle_opts.so);
  add_output_flag(oracle_cmd, oracle_opts.out);
  oracle_cmd->add_option("--cap", oracle_opts.oracle_cap,
                         "Refuse instances above this item count (hard cap 10)");

  sweep_cmd_opts sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Objective across a parameter range");
  sweep_cmd->fallthrough();
  add_global_flags(sweep_cmd, sweep_opts.g);
  add_input_flags(sweep_cmd, sweep_opts.in);
  add_solver_flags(sweep_cmd, sweep_opts.so);
  add_output_flag(sweep_cmd, sweep_opts.out);
  sweep_cmd->add_option("--sweep", sweep_opts.parameter, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"p", "k"}));
  sweep_cmd->add_option("--values", sweep_opts.values,
                        "Parameter values, e.g. 2,4,6 (default 1..n)");

  fairness_cmd_opts fairness_opts;
  auto* fairness_cmd =
      app.add_subcommand("fairness", "Group representation trajectory of an order");
  fairness_cmd->fallthrough();
  add_global_flags(fairness_cmd, fairness_opts.g);
  add_variant_flags(fairness_cmd, fairness_opts.vo);
  add_output_flag(fairness_cmd, fairness_opts.out);
  fairness_cmd->add_option("--order", fairness_opts.order, "Bucket order, e.g. '1 3 | 2 4'")
      ->required();

  export_cmd_opts export_opts;
  auto* export_cmd = app.add_subcommand("export", "Write the ILP model as an LP file");
  export_cmd->fallthrough();
  add_global_flags(export_cmd, export_opts.g);
  add_input_flags(export_cmd, export_opts.in);
  add_variant_flags(export_cmd, export_opts.vo);
  add_output_flag(export_cmd, export_opts.out);
  export_cmd->add_option("--formulation", export_opts.formulation, "Model family for fixed-p")
      ->check(CLI::IsMember({"assignment", "representative"}));
  export_cmd->add_flag("--add-comparability", export_opts.add_comparability,
                       "Add the redundant comparability rows");
  export_cmd->add_flag("--add-transitivity", export_opts.add_transitivity,
                       "Add the redundant transitivity rows");
  export_cmd->add_flag("--add-base-cuts", export_opts.add_base_cuts,
                       "Add both redundant row families");
  export_cmd->add_flag("--relax-x", export_opts.relax_x, "Make the x variables continuous");
  export_cmd->add_flag("--substitute-9", export_opts.substitute_9,
                       "Replace the two tie-forcing row families with the combined rows");
  export_cmd->add_flag("--add-ineq-9", export_opts.add_ineq_9, "Append the combined tie rows");
  export_cmd->add_option("--tail-bound", export_opts.tail_bounds,
                         "items:lo:hi tail membership bound, items 1-based (tcu)");
  export_cmd->add_option("--check", export_opts.check_order,
                         "Encode this order against the model and report the verdict");

  bench_cmd_opts bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Run a manifest of instances to a CSV table");
  bench_cmd->fallthrough();
  add_global_flags(bench_cmd, bench_opts.g);
  add_output_flag(bench_cmd, bench_opts.out);
  bench_cmd->add_option("--manifest", bench_opts.manifest_path,
                        "Lines of: name path variant params timelimit")
      ->required();
  bench_cmd->add_option("--optima-cap", bench_opts.optima_cap,
                        "Most alternative optima to count per instance");

  gen_cmd_opts gen_opts;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic matrix or profile");
  gen_cmd->fallthrough();
  add_global_flags(gen_cmd, gen_opts.g);
  add_output_flag(gen_cmd, gen_opts.out);
  gen_cmd->add_option("--kind", gen_opts.kind, "What to generate")
      ->check(CLI::IsMember({"matrix", "profile"}));
  gen_cmd->add_option("--n", gen_opts.n, "Item count")->required();
  gen_cmd->add_option("--den", gen_opts.den, "Matrix entries are multiples of 1/den");
  gen_cmd->add_option("--voters", gen_opts.voters, "Ballot count (profile)");
  gen_cmd->add_option("--truncate", gen_opts.truncate,
                      "Keep only the top entries of each ballot (profile, 0 = full)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input_error;
  }

  try {
    if (solve_cmd->parsed()) return run_solve_like(solve_opts, false);
    if (optima_cmd->parsed()) return run_solve_like(optima_opts, false);
    if (oracle_cmd->parsed()) return run_solve_like(oracle_opts, true);
    if (sweep_cmd->parsed()) return run_sweep(sweep_opts);
    if (fairness_cmd->parsed()) return run_fairness(fairness_opts);
    if (export_cmd->parsed()) return run_export(export_opts);
    if (bench_cmd->parsed()) return run_bench(bench_opts);
    if (gen_cmd->parsed()) return run_gen(gen_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input_error;
  }
  return exit_input_error;
}
