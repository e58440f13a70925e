#include "bucketorder/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace bucketorder {

namespace {

using i128 = __int128;

i128 iabs(i128 v) { return v < 0 ? -v : v; }

i128 igcd(i128 a, i128 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string i128_str(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  i128 a = iabs(v);
  std::string digits;
  while (a != 0) {
    digits += static_cast<char>('0' + static_cast<int>(a % 10));
    a /= 10;
  }
  if (neg) digits += '-';
  std::reverse(digits.begin(), digits.end());
  return digits;
}

// keeps scaled coefficients far away from the __int128 edge
constexpr i128 scale_cap() { return i128(1) << 110; }

i128 fold_den(i128 l, std::int64_t den) {
  const i128 g = igcd(l, den);
  l = l / g * den;
  if (l > scale_cap()) throw std::overflow_error("row scale does not fit");
  return l;
}

i128 row_scale(const std::vector<lp_term>& terms, const rational& rhs) {
  i128 l = 1;
  for (const lp_term& t : terms) l = fold_den(l, t.coeff.den());
  return fold_den(l, rhs.den());
}

i128 scaled(const rational& r, i128 scale) { return i128(r.num()) * (scale / r.den()); }

// appends "+ 2 x_1_2" style terms; returns whether anything was written
bool append_terms(std::string& out, const ilp_model& m, const std::vector<lp_term>& terms,
                  i128 scale) {
  bool any = false;
  for (const lp_term& t : terms) {
    if (t.coeff.is_zero()) continue;
    const i128 k = scaled(t.coeff, scale);
    if (any)
      out += k < 0 ? " - " : " + ";
    else if (k < 0)
      out += "- ";
    const i128 a = iabs(k);
    if (a != 1) {
      out += i128_str(a);
      out += ' ';
    }
    out += m.variables()[static_cast<std::size_t>(t.var)].name;
    any = true;
  }
  return any;
}

// exact finite decimal; bounds in these models are small dyadic numbers
std::string decimal_str(const rational& r) {
  if (r.den() == 1) return i128_str(r.num());
  std::int64_t den = r.den();
  int twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1)
    throw std::runtime_error("bound " + r.str() + " has no finite decimal form");
  const int digits = std::max(twos, fives);
  i128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const i128 units = scaled(r, scale);
  std::string body = i128_str(iabs(units));
  while (static_cast<int>(body.size()) <= digits) body.insert(body.begin(), '0');
  body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  return (r.is_negative() ? "-" : "") + body;
}

const char* sense_str(row_sense s) {
  switch (s) {
    case row_sense::le: return " <= ";
    case row_sense::ge: return " >= ";
    case row_sense::eq: return " = ";
  }
  return " = ";
}

bool is_number_start(char c) {
  return (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+';
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_sense(const std::string& t) { return t == "<=" || t == ">=" || t == "="; }

struct linear_expr {
  std::vector<std::pair<std::string, rational>> terms;
  rational constant;
};

// parses "[+-] [coeff] name" terms plus bare signed constants until a sense
// token or the end of the token list
linear_expr parse_linear(const std::vector<std::string>& toks, std::size_t& i) {
  linear_expr out;
  int sign = 1;
  while (i < toks.size() && !is_sense(toks[i])) {
    const std::string& t = toks[i];
    if (t == "+") {
      sign = 1;
      ++i;
    } else if (t == "-") {
      sign = -1;
      ++i;
    } else if (is_number_start(t[0])) {
      const rational v = rational::parse(t) * rational(sign);
      ++i;
      if (i < toks.size() && !is_sense(toks[i]) && !is_number_start(toks[i][0]) &&
          toks[i] != "+" && toks[i] != "-") {
        out.terms.emplace_back(toks[i], v);
        ++i;
      } else {
        out.constant += v;
      }
      sign = 1;
    } else {
      out.terms.emplace_back(t, rational(sign));
      sign = 1;
      ++i;
    }
  }
  return out;
}

std::string trimmed(const std::string& line) {
  std::size_t a = 0, b = line.size();
  while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
  return line.substr(a, b - a);
}

}  // namespace

std::string export_lp(const ilp_model& m) {
  std::string out;
  out.reserve(4096 + 64 * static_cast<std::size_t>(m.constraint_count()));
  if (!m.info.label.empty()) out += "\\ " + m.info.label + "\n";

  i128 obj_scale = 1;
  for (const lp_term& t : m.objective().terms) obj_scale = fold_den(obj_scale, t.coeff.den());
  obj_scale = fold_den(obj_scale, m.objective().constant.den());
  if (obj_scale != 1) out += "\\ objective-scale: " + i128_str(obj_scale) + "\n";

  out += "Minimize\n obj: ";
  bool any = append_terms(out, m, m.objective().terms, obj_scale);
  const i128 c0 = scaled(m.objective().constant, obj_scale);
  if (c0 != 0) {
    if (any) out += c0 < 0 ? " - " : " + ";
    else if (c0 < 0) out += "- ";
    out += i128_str(iabs(c0));
    any = true;
  }
  if (!any) out += "0";
  out += "\n";

  out += "Subject To\n";
  for (const lp_constraint& row : m.constraints()) {
    const i128 scale = row_scale(row.terms, row.rhs);
    out += " " + row.name + ": ";
    if (!append_terms(out, m, row.terms, scale)) {
      if (m.variable_count() == 0)
        throw std::logic_error("constraint " + row.name + " in a model without variables");
      out += "0 " + m.variables()[0].name;
    }
    out += sense_str(row.sense);
    out += i128_str(scaled(row.rhs, scale));
    out += "\n";
  }

  std::string bounds;
  for (const lp_variable& v : m.variables()) {
    if (v.kind == var_kind::binary && v.lb == rational(0) && v.ub == rational(1)) continue;
    if (v.lb == v.ub)
      bounds += " " + v.name + " = " + decimal_str(v.lb) + "\n";
    else
      bounds += " " + decimal_str(v.lb) + " <= " + v.name + " <= " + decimal_str(v.ub) + "\n";
  }
  if (!bounds.empty()) out += "Bounds\n" + bounds;

  std::string binaries;
  for (const lp_variable& v : m.variables())
    if (v.kind == var_kind::binary) binaries += " " + v.name + "\n";
  if (!binaries.empty()) out += "Binaries\n" + binaries;

  out += "End\n";
  return out;
}

ilp_model import_lp(const std::string& text) {
  enum class section { none, objective, rows, bounds, binaries };
  section where = section::none;
  std::int64_t obj_scale = 1;
  std::string obj_body;
  std::vector<std::pair<std::string, std::string>> row_lines;  // name, body
  std::vector<std::string> bound_lines;
  std::vector<std::string> binary_names;
  std::string label;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = trimmed(text.substr(start, end - start));
    start = end + 1;
    if (line.empty()) continue;
    if (line[0] == '\\') {
      const std::string marker = "\\ objective-scale:";
      if (line.rfind(marker, 0) == 0)
        obj_scale = rational::parse(trimmed(line.substr(marker.size()))).num();
      else if (label.empty())
        label = trimmed(line.substr(1));
      continue;
    }
    if (line == "Minimize") {
      where = section::objective;
      continue;
    }
    if (line == "Subject To") {
      where = section::rows;
      continue;
    }
    if (line == "Bounds") {
      where = section::bounds;
      continue;
    }
    if (line == "Binaries") {
      where = section::binaries;
      continue;
    }
    if (line == "End") break;
    switch (where) {
      case section::none:
        throw std::invalid_argument("unexpected text before Minimize: " + line);
      case section::objective: {
        std::string body = line;
        const std::size_t colon = body.find(':');
        if (colon != std::string::npos) body = body.substr(colon + 1);
        obj_body += " " + body;
        break;
      }
      case section::rows: {
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("constraint line without a name: " + line);
        row_lines.emplace_back(trimmed(line.substr(0, colon)), line.substr(colon + 1));
        break;
      }
      case section::bounds:
        bound_lines.push_back(line);
        break;
      case section::binaries:
        for (const std::string& t : tokenize(line)) binary_names.push_back(t);
        break;
    }
  }

  std::size_t pos = 0;
  std::vector<std::string> obj_toks = tokenize(obj_body);
  const linear_expr objective = parse_linear(obj_toks, pos);
  if (pos != obj_toks.size()) throw std::invalid_argument("trailing tokens in the objective");

  struct parsed_row {
    std::string name;
    linear_expr lhs;
    row_sense sense = row_sense::le;
    rational rhs;
  };
  std::vector<parsed_row> rows;
  rows.reserve(row_lines.size());
  for (const auto& [name, body] : row_lines) {
    std::vector<std::string> toks = tokenize(body);
    std::size_t i = 0;
    parsed_row row;
    row.name = name;
    row.lhs = parse_linear(toks, i);
    if (i >= toks.size()) throw std::invalid_argument("constraint " + name + " has no sense");
    row.sense = toks[i] == "<=" ? row_sense::le : toks[i] == ">=" ? row_sense::ge : row_sense::eq;
    ++i;
    if (i + 1 != toks.size())
      throw std::invalid_argument("constraint " + name + " needs a single right-hand side");
    row.rhs = rational::parse(toks[i]) - row.lhs.constant;
    rows.push_back(std::move(row));
  }

  struct bound { std::optional<rational> lo, hi; };
  std::map<std::string, bound> bounds;
  std::vector<std::string> bound_order;
  for (const std::string& line : bound_lines) {
    const std::vector<std::string> toks = tokenize(line);
    if (toks.size() == 3 && toks[1] == "=") {
      const rational v = rational::parse(toks[2]);
      bounds[toks[0]] = {v, v};
      bound_order.push_back(toks[0]);
    } else if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
      bounds[toks[2]] = {rational::parse(toks[0]), rational::parse(toks[4])};
      bound_order.push_back(toks[2]);
    } else {
      throw std::invalid_argument("unsupported bound line: " + line);
    }
  }

  std::vector<std::string> order;
  std::set<std::string> seen;
  auto note = [&](const std::string& name) {
    if (seen.insert(name).second) order.push_back(name);
  };
  for (const auto& [name, coeff] : objective.terms) note(name);
  for (const parsed_row& row : rows)
    for (const auto& [name, coeff] : row.lhs.terms) note(name);
  for (const std::string& name : bound_order) note(name);
  for (const std::string& name : binary_names) note(name);

  const std::set<std::string> binary_set(binary_names.begin(), binary_names.end());
  ilp_model m;
  for (const std::string& name : order) {
    const auto it = bounds.find(name);
    if (binary_set.count(name)) {
      const int id = m.add_binary(name);
      if (it != bounds.end()) {
        // fixed binaries keep their kind; bounds narrow after the fact
        m.var(id).lb = it->second.lo.value_or(rational(0));
        m.var(id).ub = it->second.hi.value_or(rational(1));
      }
    } else {
      const rational lo = it != bounds.end() ? *it->second.lo : rational(0);
      const rational hi = it != bounds.end() ? *it->second.hi : rational(1);
      m.add_variable(name, var_kind::continuous, lo, hi);
    }
  }

  const rational scale(obj_scale);
  if (scale <= rational(0)) throw std::invalid_argument("objective scale must be positive");
  std::vector<lp_term> obj_terms;
  for (const auto& [name, coeff] : objective.terms)
    obj_terms.push_back({m.variable_index(name), coeff / scale});
  m.set_objective(std::move(obj_terms), objective.constant / scale);

  for (const parsed_row& row : rows) {
    std::vector<lp_term> terms;
    for (const auto& [name, coeff] : row.lhs.terms)
      terms.push_back({m.variable_index(name), coeff});
    m.add_constraint(row.name, std::move(terms), row.sense, row.rhs);
  }

  m.info.n = 0;
  m.info.label = label.empty() ? "imported" : label;
  return m;
}

}  // namespace bucketorder
