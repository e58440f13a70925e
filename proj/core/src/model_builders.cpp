#include "bucketorder/model_builders.hpp"

#include <algorithm>
#include <stdexcept>

namespace bucketorder {

namespace {

std::string nm(const char* stem, int a) { return std::string(stem) + "_" + std::to_string(a); }
std::string nm(const char* stem, int a, int b) {
  return std::string(stem) + "_" + std::to_string(a) + "_" + std::to_string(b);
}
std::string nm(const char* stem, int a, int b, int c) {
  return std::string(stem) + "_" + std::to_string(a) + "_" + std::to_string(b) + "_" +
         std::to_string(c);
}

// shared scaffolding: x variables plus the row families every formulation
// draws from
struct model_frame {
  ilp_model m;
  int n = 0;
  std::vector<int> xid;  // n*n, -1 on the diagonal

  explicit model_frame(int items) : n(items), xid(static_cast<std::size_t>(items) * items, -1) {
    if (items < 1) throw std::invalid_argument("item count must be positive");
  }

  int x(int r, int s) const { return xid[static_cast<std::size_t>(r) * n + s]; }

  void add_x(bool relaxed) {
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s)
        if (r != s)
          xid[static_cast<std::size_t>(r) * n + s] =
              relaxed ? m.add_variable(x_name(r, s), var_kind::continuous, 0, 1)
                      : m.add_binary(x_name(r, s));
  }

  // x_rs + x_sr >= 1 for r < s, or = 1 when ties are forbidden
  void comparability(bool equality) {
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s)
        m.add_constraint(nm("comp", r + 1, s + 1),
                         {{x(r, s), rational(1)}, {x(s, r), rational(1)}},
                         equality ? row_sense::eq : row_sense::ge, rational(1));
  }

  // x_rs + x_st <= 1 + x_rt for all ordered triples of distinct items
  void transitivity() {
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        if (s == r) continue;
        for (int t = 0; t < n; ++t) {
          if (t == r || t == s) continue;
          m.add_constraint(
              nm("trans", r + 1, s + 1, t + 1),
              {{x(r, s), rational(1)}, {x(s, t), rational(1)}, {x(r, t), rational(-1)}},
              row_sense::le, rational(1));
        }
      }
  }

  // deviation variables with their two defining rows and the distance
  // objective min 2 * sum d_rs; keeps the factor two so the objective equals
  // the distance over ordered pairs
  void deviation(const pair_order_matrix& c) {
    const rational half(1, 2);
    std::vector<int> did(static_cast<std::size_t>(n) * n, -1);
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s)
        did[static_cast<std::size_t>(r) * n + s] =
            m.add_variable(d_name(r, s), var_kind::continuous, 0, 1);
    std::vector<lp_term> objective;
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s) {
        const int d = did[static_cast<std::size_t>(r) * n + s];
        // d_rs >= (x_rs - x_sr + 1)/2 - c_rs and d_rs >= c_rs - (x_rs - x_sr + 1)/2
        m.add_constraint(nm("dev_lo", r + 1, s + 1),
                         {{d, rational(1)}, {x(r, s), -half}, {x(s, r), half}}, row_sense::ge,
                         half - c.at(r, s));
        m.add_constraint(nm("dev_up", r + 1, s + 1),
                         {{d, rational(1)}, {x(r, s), half}, {x(s, r), -half}}, row_sense::ge,
                         c.at(r, s) - half);
        objective.push_back({d, rational(2)});
      }
    m.set_objective(std::move(objective));
    m.info.has_deviation = true;
    m.info.c = c;
  }
};

void check_coeff_matrix(const std::vector<std::vector<rational>>& coeffs, int n,
                        const char* what) {
  if (static_cast<int>(coeffs.size()) != n)
    throw std::invalid_argument(std::string(what) + " matrix must have n rows");
  for (const auto& row : coeffs)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument(std::string(what) + " matrix must have n columns per row");
}

}  // namespace

objective_spec objective_spec::distance(pair_order_matrix c) {
  objective_spec o;
  o.type = form::distance;
  o.c = std::move(c);
  return o;
}

objective_spec objective_spec::precedence_counts(std::vector<std::vector<rational>> counts) {
  objective_spec o;
  o.type = form::precedence_counts;
  o.coeffs = std::move(counts);
  return o;
}

objective_spec objective_spec::custom_coeffs(std::vector<std::vector<rational>> coeffs,
                                             rational constant) {
  objective_spec o;
  o.type = form::custom;
  o.coeffs = std::move(coeffs);
  o.constant = constant;
  return o;
}

ilp_model build_base_model(int n, const objective_spec& objective, const base_options& opt) {
  model_frame f(n);
  f.add_x(false);
  f.comparability(opt.no_ties);
  f.transitivity();
  switch (objective.type) {
    case objective_spec::form::distance: {
      objective.c.validate();
      if (objective.c.n != n)
        throw std::invalid_argument("pair order matrix is " + std::to_string(objective.c.n) +
                                    "x" + std::to_string(objective.c.n) + ", expected n = " +
                                    std::to_string(n));
      f.deviation(objective.c);
      break;
    }
    case objective_spec::form::precedence_counts: {
      check_coeff_matrix(objective.coeffs, n, "precedence count");
      std::vector<lp_term> terms;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          if (r != s && !objective.coeffs[r][s].is_zero())
            terms.push_back({f.x(r, s), -objective.coeffs[r][s]});
      f.m.set_objective(std::move(terms));
      break;
    }
    case objective_spec::form::custom: {
      check_coeff_matrix(objective.coeffs, n, "coefficient");
      std::vector<lp_term> terms;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          if (r != s && !objective.coeffs[r][s].is_zero())
            terms.push_back({f.x(r, s), objective.coeffs[r][s]});
      f.m.set_objective(std::move(terms), objective.constant);
      break;
    }
  }
  f.m.info.family = model_family::base;
  f.m.info.n = n;
  f.m.info.no_ties = opt.no_ties;
  f.m.info.label = f.m.info.has_deviation ? "obop" : "base";
  if (opt.no_ties) f.m.info.label += " no-ties";
  return std::move(f.m);
}

ilp_model build_obop_model(const pair_order_matrix& c) {
  return build_base_model(c.n, objective_spec::distance(c));
}

ilp_model build_p_assignment_model(const pair_order_matrix& c, int p,
                                   const assignment_options& opt) {
  c.validate();
  const int n = c.n;
  if (p < 1 || p > n)
    throw std::invalid_argument("bucket count " + std::to_string(p) + " outside 1.." +
                                std::to_string(n));
  if (opt.equal_size && opt.prescribed)
    throw std::invalid_argument("at most one size mode may be given");
  std::vector<int> sizes;
  if (opt.equal_size) {
    const int q = *opt.equal_size;
    if (q < 1 || static_cast<long long>(p) * q != n)
      throw std::invalid_argument("p*q = " + std::to_string(static_cast<long long>(p) * q) +
                                  " does not equal n = " + std::to_string(n));
    sizes.assign(static_cast<std::size_t>(p), q);
  }
  if (opt.prescribed) {
    if (static_cast<int>(opt.prescribed->size()) != p)
      throw std::invalid_argument("got " + std::to_string(opt.prescribed->size()) +
                                  " bucket sizes for p = " + std::to_string(p));
    long long total = 0;
    for (int s : *opt.prescribed) {
      if (s < 1) throw std::invalid_argument("bucket sizes must be positive");
      total += s;
    }
    if (total != n)
      throw std::invalid_argument("bucket sizes sum to " + std::to_string(total) +
                                  ", not n = " + std::to_string(n));
    sizes = *opt.prescribed;
  }

  model_frame f(n);
  f.add_x(opt.relax_x);
  std::vector<int> yid(static_cast<std::size_t>(n) * p);
  for (int r = 0; r < n; ++r)
    for (int u = 1; u <= p; ++u)
      yid[static_cast<std::size_t>(r) * p + (u - 1)] = f.m.add_binary(y_name(r, u));
  auto y = [&](int r, int u) { return yid[static_cast<std::size_t>(r) * p + (u - 1)]; };

  // every item sits in exactly one bucket
  for (int r = 0; r < n; ++r) {
    std::vector<lp_term> terms;
    for (int u = 1; u <= p; ++u) terms.push_back({y(r, u), rational(1)});
    f.m.add_constraint(nm("asg", r + 1), std::move(terms), row_sense::eq, rational(1));
  }
  // bucket occupancy: non-empty, or the exact prescribed size
  for (int u = 1; u <= p; ++u) {
    std::vector<lp_term> terms;
    for (int r = 0; r < n; ++r) terms.push_back({y(r, u), rational(1)});
    if (sizes.empty())
      f.m.add_constraint(nm("nonempty", u), std::move(terms), row_sense::ge, rational(1));
    else
      f.m.add_constraint(nm("size", u), std::move(terms), row_sense::eq,
                         rational(sizes[static_cast<std::size_t>(u - 1)]));
  }
  // same bucket forces the tie; at the bucket of r this also forces
  // comparability of every pair
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      for (int u = 1; u <= p; ++u)
        f.m.add_constraint(nm("tie", r + 1, s + 1, u),
                           {{y(r, u), rational(1)},
                            {y(s, u), rational(1)},
                            {f.x(r, s), rational(-1)},
                            {f.x(s, r), rational(-1)}},
                           row_sense::le, rational(0));
  // nobody may be ranked weakly before an item seated in a later bucket
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      if (s == r) continue;
      for (int u = 1; u <= p - 1; ++u) {
        std::vector<lp_term> terms{{f.x(s, r), rational(1)}};
        for (int v = 1; v <= u; ++v) terms.push_back({y(r, v), rational(1)});
        for (int v = u + 1; v <= p; ++v) terms.push_back({y(s, v), rational(1)});
        f.m.add_constraint(nm("order", r + 1, s + 1, u), std::move(terms), row_sense::le,
                           rational(2));
      }
    }
  if (opt.add_comparability || opt.add_base_valid_inequalities) f.comparability(false);
  if (opt.add_transitivity || opt.add_base_valid_inequalities) f.transitivity();
  f.deviation(c);

  f.m.info.family = model_family::assignment;
  f.m.info.n = n;
  f.m.info.buckets = p;
  f.m.info.fixed_bucket_count = true;
  f.m.info.sizes = sizes;
  f.m.info.relaxed_x = opt.relax_x;
  std::string label = "assignment p=" + std::to_string(p);
  if (opt.equal_size) label += " equal q=" + std::to_string(*opt.equal_size);
  if (opt.prescribed) {
    label += " sizes=(";
    for (std::size_t i = 0; i < sizes.size(); ++i)
      label += (i ? "," : "") + std::to_string(sizes[i]);
    label += ")";
  }
  if (opt.add_comparability || opt.add_base_valid_inequalities) label += " +comparability";
  if (opt.add_transitivity || opt.add_base_valid_inequalities) label += " +transitivity";
  if (opt.relax_x) label += " relaxed-x";
  f.m.info.label = label;
  return std::move(f.m);
}

ilp_model build_p_representative_model(const pair_order_matrix& c, int p,
                                       const representative_options& opt) {
  c.validate();
  const int n = c.n;
  if (p < 1 || p > n)
    throw std::invalid_argument("bucket count " + std::to_string(p) + " outside 1.." +
                                std::to_string(n));
  if (opt.substitute_9 && opt.add_9)
    throw std::invalid_argument("substitute_9 and add_9 are mutually exclusive");

  model_frame f(n);
  f.add_x(false);
  f.comparability(false);
  f.transitivity();
  std::vector<int> aid(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) aid[static_cast<std::size_t>(r)] = f.m.add_binary(alpha_name(r));
  std::vector<int> bid(static_cast<std::size_t>(n) * n, -1);
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      bid[static_cast<std::size_t>(r) * n + s] = f.m.add_binary(beta_name(r, s));
  auto beta = [&](int r, int s) { return bid[static_cast<std::size_t>(r) * n + s]; };

  // exactly p buckets, each named by a selected representative
  {
    std::vector<lp_term> terms;
    for (int r = 0; r < n; ++r) terms.push_back({aid[static_cast<std::size_t>(r)], rational(1)});
    f.m.add_constraint("rep_count", std::move(terms), row_sense::eq, rational(p));
  }
  // assignment only to a selected representative with a higher index
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      f.m.add_constraint(
          nm("rep_sel", r + 1, s + 1),
          {{beta(r, s), rational(1)}, {aid[static_cast<std::size_t>(s)], rational(-1)}},
          row_sense::le, rational(0));
  // every item is a representative or assigned to exactly one
  for (int r = 0; r < n; ++r) {
    std::vector<lp_term> terms{{aid[static_cast<std::size_t>(r)], rational(1)}};
    for (int s = r + 1; s < n; ++s) terms.push_back({beta(r, s), rational(1)});
    f.m.add_constraint(nm("rep_asg", r + 1), std::move(terms), row_sense::eq, rational(1));
  }
  // sharing a bucket with a representative means being tied with it
  if (!opt.substitute_9)
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s) {
        f.m.add_constraint(nm("tie_before", r + 1, s + 1),
                           {{beta(r, s), rational(1)}, {f.x(r, s), rational(-1)}},
                           row_sense::le, rational(0));
        f.m.add_constraint(nm("tie_after", r + 1, s + 1),
                           {{beta(r, s), rational(1)}, {f.x(s, r), rational(-1)}},
                           row_sense::le, rational(0));
      }
  // a representative is the highest index of its bucket: no ties with later
  // items
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      f.m.add_constraint(nm("rep_notie", r + 1, s + 1),
                         {{f.x(r, s), rational(1)},
                          {f.x(s, r), rational(1)},
                          {aid[static_cast<std::size_t>(r)], rational(1)}},
                         row_sense::le, rational(2));
  // combined row: assignment to a selected representative forces the tie
  if (opt.substitute_9 || opt.add_9)
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s)
        f.m.add_constraint(nm("rep_tie", r + 1, s + 1),
                           {{beta(r, s), rational(1)},
                            {aid[static_cast<std::size_t>(s)], rational(1)},
                            {f.x(r, s), rational(-1)},
                            {f.x(s, r), rational(-1)}},
                           row_sense::le, rational(0));
  f.deviation(c);

  f.m.info.family = model_family::representative;
  f.m.info.n = n;
  f.m.info.buckets = p;
  f.m.info.fixed_bucket_count = true;
  std::string label = "representative p=" + std::to_string(p);
  if (opt.substitute_9) label += " tie-row-substituted";
  if (opt.add_9) label += " +tie-row";
  f.m.info.label = label;
  return std::move(f.m);
}

ilp_model build_tcu_model(const pair_order_matrix& c, int k, const tcu_options& opt) {
  c.validate();
  const int n = c.n;
  if (k < 1 || k > n)
    throw std::invalid_argument("kept-position count " + std::to_string(k) + " outside 1.." +
                                std::to_string(n));

  model_frame f(n);
  f.add_x(false);
  f.comparability(false);
  f.transitivity();
  std::vector<int> zid(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) zid[static_cast<std::size_t>(r)] = f.m.add_binary(z_name(r));

  {
    std::vector<lp_term> terms;
    for (int r = 0; r < n; ++r) terms.push_back({zid[static_cast<std::size_t>(r)], rational(1)});
    f.m.add_constraint("tail_count", std::move(terms), row_sense::eq, rational(n - k));
  }
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      if (s == r) continue;
      // a tail item precedes nobody outside the tail ...
      f.m.add_constraint(nm("tail_order", r + 1, s + 1),
                         {{f.x(r, s), rational(1)},
                          {zid[static_cast<std::size_t>(r)], rational(1)},
                          {zid[static_cast<std::size_t>(s)], rational(-1)}},
                         row_sense::le, rational(1));
      // ... and everything weakly precedes a tail item
      f.m.add_constraint(
          nm("tail_after", r + 1, s + 1),
          {{zid[static_cast<std::size_t>(s)], rational(1)}, {f.x(r, s), rational(-1)}},
          row_sense::le, rational(0));
    }
  for (std::size_t j = 0; j < opt.tail_bounds.size(); ++j) {
    const tail_bound& bd = opt.tail_bounds[j];
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<lp_term> terms;
    for (int item : bd.items) {
      if (item < 0 || item >= n)
        throw std::invalid_argument("tail bound names item " + std::to_string(item + 1) +
                                    " outside 1.." + std::to_string(n));
      if (seen[static_cast<std::size_t>(item)])
        throw std::invalid_argument("tail bound repeats item " + std::to_string(item + 1));
      seen[static_cast<std::size_t>(item)] = true;
      terms.push_back({zid[static_cast<std::size_t>(item)], rational(1)});
    }
    if (bd.lower && bd.upper && *bd.lower > *bd.upper)
      throw std::invalid_argument("tail bound has lower > upper");
    if (bd.lower)
      f.m.add_constraint(nm("tail_set_lo", static_cast<int>(j) + 1), terms, row_sense::ge,
                         rational(*bd.lower));
    if (bd.upper)
      f.m.add_constraint(nm("tail_set_up", static_cast<int>(j) + 1), std::move(terms),
                         row_sense::le, rational(*bd.upper));
  }
  f.deviation(c);

  f.m.info.family = model_family::tcu;
  f.m.info.n = n;
  f.m.info.tail = n - k;
  f.m.info.label = "tcu k=" + std::to_string(k);
  return std::move(f.m);
}

ilp_model build_fair_model(const pair_order_matrix& c, const fairness_spec& f,
                           const fair_options& opt) {
  c.validate();
  const int n = c.n;
  // reuse the variant-level validation so builder and semantic oracle agree
  variant_spec v = variant_spec::fair(f);
  v.fair_p = opt.fixed_p;
  if (opt.capacities) v.fair_sizes = opt.capacities;
  v.max_buckets = opt.max_buckets;
  v.min_buckets = opt.min_buckets;
  v.validate(n);
  const int buckets = v.fair_bucket_limit(n);
  const bool fixed = opt.fixed_p.has_value() || opt.capacities.has_value();

  model_frame frame(n);
  frame.add_x(false);
  std::vector<int> yid(static_cast<std::size_t>(n) * buckets);
  for (int r = 0; r < n; ++r)
    for (int u = 1; u <= buckets; ++u)
      yid[static_cast<std::size_t>(r) * buckets + (u - 1)] = frame.m.add_binary(y_name(r, u));
  auto y = [&](int r, int u) { return yid[static_cast<std::size_t>(r) * buckets + (u - 1)]; };

  for (int r = 0; r < n; ++r) {
    std::vector<lp_term> terms;
    for (int u = 1; u <= buckets; ++u) terms.push_back({y(r, u), rational(1)});
    frame.m.add_constraint(nm("asg", r + 1), std::move(terms), row_sense::eq, rational(1));
  }
  if (opt.capacities) {
    for (int u = 1; u <= buckets; ++u) {
      std::vector<lp_term> terms;
      for (int r = 0; r < n; ++r) terms.push_back({y(r, u), rational(1)});
      frame.m.add_constraint(nm("size", u), std::move(terms), row_sense::eq,
                             rational((*opt.capacities)[static_cast<std::size_t>(u - 1)]));
    }
  } else if (opt.fixed_p) {
    for (int u = 1; u <= buckets; ++u) {
      std::vector<lp_term> terms;
      for (int r = 0; r < n; ++r) terms.push_back({y(r, u), rational(1)});
      frame.m.add_constraint(nm("nonempty", u), std::move(terms), row_sense::ge, rational(1));
    }
  } else {
    // an item behind bucket u certifies that bucket u is occupied: empty
    // buckets gather at the end
    for (int r = 0; r < n; ++r)
      for (int u = 1; u <= buckets - 1; ++u) {
        std::vector<lp_term> terms;
        for (int s = 0; s < n; ++s) terms.push_back({y(s, u), rational(1)});
        for (int vtx = u + 1; vtx <= buckets; ++vtx) terms.push_back({y(r, vtx), rational(-1)});
        frame.m.add_constraint(nm("fill", r + 1, u), std::move(terms), row_sense::ge,
                               rational(0));
      }
    for (int u = 1; u <= opt.min_buckets; ++u) {
      std::vector<lp_term> terms;
      for (int r = 0; r < n; ++r) terms.push_back({y(r, u), rational(1)});
      frame.m.add_constraint(nm("nonempty", u), std::move(terms), row_sense::ge, rational(1));
    }
  }
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      for (int u = 1; u <= buckets; ++u)
        frame.m.add_constraint(nm("tie", r + 1, s + 1, u),
                               {{y(r, u), rational(1)},
                                {y(s, u), rational(1)},
                                {frame.x(r, s), rational(-1)},
                                {frame.x(s, r), rational(-1)}},
                               row_sense::le, rational(0));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      if (s == r) continue;
      for (int u = 1; u <= buckets - 1; ++u) {
        std::vector<lp_term> terms{{frame.x(s, r), rational(1)}};
        for (int vtx = 1; vtx <= u; ++vtx) terms.push_back({y(r, vtx), rational(1)});
        for (int vtx = u + 1; vtx <= buckets; ++vtx) terms.push_back({y(s, vtx), rational(1)});
        frame.m.add_constraint(nm("order", r + 1, s + 1, u), std::move(terms), row_sense::le,
                               rational(2));
      }
    }

  // exact linearization of floor(lambda*T) <= S <= ceil(mu*T) per group and
  // prefix; vacuous bounds produce no rows
  const std::vector<int> owner = f.group_of(n);
  for (int i = 0; i < f.group_count(); ++i)
    for (int l = 1; l <= buckets; ++l) {
      const rational lambda = f.lambda_at(i, l);
      if (!lambda.is_zero()) {
        std::vector<lp_term> terms;
        for (int r = 0; r < n; ++r) {
          const rational coeff = owner[static_cast<std::size_t>(r)] == i
                                     ? rational(lambda.num() - lambda.den())
                                     : rational(lambda.num());
          if (coeff.is_zero()) continue;
          for (int u = 1; u <= l; ++u) terms.push_back({y(r, u), coeff});
        }
        frame.m.add_constraint(nm("fair_lo", i + 1, l), std::move(terms), row_sense::le,
                               rational(lambda.den() - 1));
      }
      const rational mu = f.mu_at(i, l);
      if (mu != rational(1)) {
        std::vector<lp_term> terms;
        for (int r = 0; r < n; ++r) {
          const rational coeff = owner[static_cast<std::size_t>(r)] == i
                                     ? rational(mu.den() - mu.num())
                                     : rational(-mu.num());
          if (coeff.is_zero()) continue;
          for (int u = 1; u <= l; ++u) terms.push_back({y(r, u), coeff});
        }
        frame.m.add_constraint(nm("fair_up", i + 1, l), std::move(terms), row_sense::le,
                               rational(mu.den() - 1));
      }
    }
  for (const group_bound& bd : f.bucket_bounds) {
    std::vector<lp_term> terms;
    for (int item : f.groups[static_cast<std::size_t>(bd.group)])
      terms.push_back({y(item, bd.at), rational(1)});
    if (bd.lower)
      frame.m.add_constraint(nm("grp_lo", bd.group + 1, bd.at), terms, row_sense::ge,
                             rational(*bd.lower));
    if (bd.upper)
      frame.m.add_constraint(nm("grp_up", bd.group + 1, bd.at), std::move(terms), row_sense::le,
                             rational(*bd.upper));
  }
  for (const group_bound& bd : f.prefix_bounds) {
    std::vector<lp_term> terms;
    for (int item : f.groups[static_cast<std::size_t>(bd.group)])
      for (int u = 1; u <= bd.at; ++u) terms.push_back({y(item, u), rational(1)});
    if (bd.lower)
      frame.m.add_constraint(nm("pre_lo", bd.group + 1, bd.at), terms, row_sense::ge,
                             rational(*bd.lower));
    if (bd.upper)
      frame.m.add_constraint(nm("pre_up", bd.group + 1, bd.at), std::move(terms), row_sense::le,
                             rational(*bd.upper));
  }
  frame.deviation(c);

  frame.m.info.family = model_family::fair;
  frame.m.info.n = n;
  frame.m.info.buckets = buckets;
  frame.m.info.fixed_bucket_count = fixed;
  if (opt.capacities) frame.m.info.sizes = *opt.capacities;
  frame.m.info.label = v.str();
  return std::move(frame.m);
}

ilp_model build_model(const pair_order_matrix& c, const variant_spec& v,
                      const build_options& opt) {
  v.validate(c.n);
  if (opt.representative && v.kind != variant_kind::fixed_buckets)
    throw std::invalid_argument(
        "the representative formulation covers only the fixed-bucket-count variant");
  switch (v.kind) {
    case variant_kind::obop:
      return build_obop_model(c);
    case variant_kind::fixed_buckets: {
      if (opt.representative) return build_p_representative_model(c, v.p, opt.rep);
      assignment_options a = opt.assignment;
      a.equal_size.reset();
      a.prescribed.reset();
      return build_p_assignment_model(c, v.p, a);
    }
    case variant_kind::equal_sizes: {
      assignment_options a = opt.assignment;
      a.equal_size = v.q;
      a.prescribed.reset();
      return build_p_assignment_model(c, v.p, a);
    }
    case variant_kind::prescribed_sizes: {
      assignment_options a = opt.assignment;
      a.equal_size.reset();
      a.prescribed = v.sizes;
      return build_p_assignment_model(c, static_cast<int>(v.sizes.size()), a);
    }
    case variant_kind::tcu:
      return build_tcu_model(c, v.k, opt.tcu);
    case variant_kind::fair: {
      fair_options fo;
      fo.fixed_p = v.fair_p;
      fo.capacities = v.fair_sizes;
      fo.max_buckets = v.max_buckets;
      fo.min_buckets = v.min_buckets;
      return build_fair_model(c, v.fairness, fo);
    }
  }
  throw std::invalid_argument("unknown variant kind");
}

std::vector<rational> encode_solution(const bucket_order& b, const ilp_model& m) {
  const model_info& info = m.info;
  b.validate(info.n);
  const int n = info.n;
  const int count = b.bucket_count();
  if (info.family == model_family::assignment || info.family == model_family::representative) {
    if (count != info.buckets)
      throw std::invalid_argument("order has " + std::to_string(count) +
                                  " buckets, model fixes " + std::to_string(info.buckets));
  } else if (info.family == model_family::fair) {
    if (info.fixed_bucket_count && count != info.buckets)
      throw std::invalid_argument("order has " + std::to_string(count) +
                                  " buckets, model fixes " + std::to_string(info.buckets));
    if (count > info.buckets)
      throw std::invalid_argument("order has " + std::to_string(count) +
                                  " buckets, model declares at most " +
                                  std::to_string(info.buckets));
  }

  std::vector<rational> values(static_cast<std::size_t>(m.variable_count()));
  auto set = [&](const std::string& name, const rational& value) {
    const int id = m.variable_index(name);
    if (id < 0) throw std::logic_error("model is missing variable " + name);
    values[static_cast<std::size_t>(id)] = value;
  };

  const std::vector<int> pos = b.assignment();
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      if (r != s) set(x_name(r, s), rational(pos[r] <= pos[s] ? 1 : 0));

  switch (info.family) {
    case model_family::base:
      break;
    case model_family::assignment:
    case model_family::fair:
      for (int r = 0; r < n; ++r) set(y_name(r, pos[r] + 1), rational(1));
      break;
    case model_family::representative: {
      for (int u = 0; u < count; ++u) {
        const std::vector<int>& bucket = b.buckets[static_cast<std::size_t>(u)];
        const int rep = *std::max_element(bucket.begin(), bucket.end());
        set(alpha_name(rep), rational(1));
        for (int r : bucket)
          if (r != rep) set(beta_name(r, rep), rational(1));
      }
      break;
    }
    case model_family::tcu:
      if (info.tail > 0)
        for (int r : b.buckets.back()) set(z_name(r), rational(1));
      break;
  }

  if (info.has_deviation) {
    const rational half(1, 2);
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s) {
        const rational b_rs = pos[r] == pos[s] ? half : rational(pos[r] < pos[s] ? 1 : 0);
        set(d_name(r, s), abs(b_rs - info.c.at(r, s)));
      }
  }
  return values;
}

ilp_model add_exclusion_cut(const ilp_model& m, const std::vector<rational>& values) {
  if (values.size() != m.variables().size())
    throw std::invalid_argument("assignment has " + std::to_string(values.size()) +
                                " values for " + std::to_string(m.variables().size()) +
                                " variables");
  ilp_model out = m;
  std::vector<lp_term> terms;
  long long ones = 0;
  for (int i = 0; i < m.variable_count(); ++i) {
    const lp_variable& v = m.variables()[static_cast<std::size_t>(i)];
    if (v.name.rfind("x_", 0) != 0) continue;
    const rational& value = values[static_cast<std::size_t>(i)];
    if (value == rational(1)) {
      terms.push_back({i, rational(-1)});
      ++ones;
    } else if (value == rational(0)) {
      terms.push_back({i, rational(1)});
    } else {
      throw std::invalid_argument("exclusion cut needs 0/1 values on " + v.name);
    }
  }
  int next = 1;
  for (const lp_constraint& row : m.constraints())
    if (row.name.rfind("excl_", 0) == 0) ++next;
  // sum over x with value 0 plus sum of (1 - x) over value 1 must reach 1
  out.add_constraint(nm("excl", next), std::move(terms), row_sense::ge, rational(1 - ones));
  return out;
}

ilp_model fix_consistent_permutation(const ilp_model& m, const bucket_order& b) {
  if (m.info.family != model_family::base)
    throw std::invalid_argument("variable fixing applies to the base weak-order model");
  b.validate(m.info.n);
  ilp_model out = m;
  for (int i = 0; i < out.constraint_count(); ++i)
    if (out.row(i).name.rfind("comp_", 0) == 0) out.row(i).sense = row_sense::eq;
  const std::vector<int> pos = b.assignment();
  const int n = m.info.n;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      if (r != s && pos[r] < pos[s]) {
        const int id = out.variable_index(x_name(r, s));
        out.var(id).lb = rational(1);
      }
  out.info.no_ties = true;
  out.info.label += " fixed-order";
  return out;
}

}  // namespace bucketorder
