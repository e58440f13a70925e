#include "bucketorder/profile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bucketorder {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::int64_t parse_count(const std::string& token, int line, const char* what) {
  std::size_t pos = 0;
  long long v;
  try {
    v = std::stoll(token, &pos);
  } catch (const std::exception&) {
    fail(line, std::string("bad ") + what + " '" + token + "'");
  }
  if (pos != token.size()) fail(line, std::string("bad ") + what + " '" + token + "'");
  return v;
}

}  // namespace

parse_result parse_profile(const std::string& text) {
  parse_result out;
  preference_profile& p = out.profile;
  std::int64_t declared_voters = -1;
  bool have_n = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty()) continue;
    if (s[0] == '#') {
      std::string header = trim(s.substr(1));
      std::size_t colon = header.find(':');
      if (colon == std::string::npos) {
        out.warnings.push_back("line " + std::to_string(line) + ": header without ':' ignored");
        continue;
      }
      std::string key = trim(header.substr(0, colon));
      std::string value = trim(header.substr(colon + 1));
      std::transform(key.begin(), key.end(), key.begin(),
                     [](unsigned char c) { return std::toupper(c); });
      if (key == "NUMBER ALTERNATIVES") {
        std::int64_t n = parse_count(value, line, "alternative count");
        if (n < 1 || n > 100000) fail(line, "alternative count " + value + " out of range");
        if (have_n && n != p.n) fail(line, "NUMBER ALTERNATIVES declared twice with different values");
        p.n = static_cast<int>(n);
        have_n = true;
        if (p.labels.size() < static_cast<std::size_t>(p.n)) p.labels.resize(p.n);
      } else if (key == "NUMBER VOTERS") {
        declared_voters = parse_count(value, line, "voter count");
        if (declared_voters < 0) fail(line, "negative voter count");
      } else if (key.rfind("ALTERNATIVE NAME ", 0) == 0) {
        std::int64_t idx = parse_count(key.substr(17), line, "alternative index");
        if (idx < 1) fail(line, "alternative index must be positive");
        if (p.labels.size() < static_cast<std::size_t>(idx)) p.labels.resize(idx);
        p.labels[idx - 1] = value;
      } else if (key == "DATA TYPE") {
        std::string t = value;
        std::transform(t.begin(), t.end(), t.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (t == "toc" || t == "toi") {
          fail(line, "ballots with ties (" + t + ") are not supported; only strict orders");
        }
        if (t != "soc" && t != "soi") {
          out.warnings.push_back("line " + std::to_string(line) + ": unknown data type '" +
                                 value + "'");
        }
      } else {
        // FILE NAME, TITLE, MODIFICATION DATE and friends carry no content we
        // use; anything unrecognized is surfaced once.
        static const char* known[] = {"FILE NAME",         "TITLE",
                                      "DESCRIPTION",       "DATA TYPE",
                                      "MODIFICATION TYPE", "MODIFICATION DATE",
                                      "PUBLICATION DATE",  "RELATES TO",
                                      "RELATED FILES",     "NUMBER UNIQUE ORDERS"};
        bool is_known = false;
        for (const char* k : known) {
          if (key == k) is_known = true;
        }
        if (!is_known) {
          out.warnings.push_back("line " + std::to_string(line) + ": unknown header key '" +
                                 key + "' ignored");
        }
      }
      continue;
    }
    // Ballot line: "multiplicity: i1,i2,..."
    if (s.find('{') != std::string::npos || s.find('}') != std::string::npos) {
      fail(line, "tied ballot groups '{...}' are not supported; only strict orders");
    }
    std::size_t colon = s.find(':');
    if (colon == std::string::npos) fail(line, "ballot line without ':'");
    if (!have_n) fail(line, "ballot before the NUMBER ALTERNATIVES header");
    std::int64_t mult = parse_count(trim(s.substr(0, colon)), line, "ballot multiplicity");
    if (mult < 1) fail(line, "ballot multiplicity must be positive");
    preference_profile::ballot b;
    b.multiplicity = mult;
    std::string items = s.substr(colon + 1);
    std::vector<char> seen(p.n, 0);
    std::string token;
    std::istringstream ts(items);
    while (std::getline(ts, token, ',')) {
      token = trim(token);
      if (token.empty()) fail(line, "empty item in ballot");
      std::int64_t item = parse_count(token, line, "item");
      if (item < 1 || item > p.n) {
        fail(line, "item " + token + " outside 1.." + std::to_string(p.n));
      }
      if (seen[item - 1]) fail(line, "item " + token + " appears twice in one ballot");
      seen[item - 1] = 1;
      b.items.push_back(static_cast<int>(item - 1));
    }
    if (b.items.empty()) fail(line, "ballot ranks no items");
    p.voters += mult;
    p.ballots.push_back(std::move(b));
  }
  if (!have_n) throw std::invalid_argument("missing NUMBER ALTERNATIVES header");
  if (p.labels.size() > static_cast<std::size_t>(p.n)) {
    throw std::invalid_argument("alternative name beyond NUMBER ALTERNATIVES");
  }
  if (declared_voters >= 0 && declared_voters != p.voters) {
    out.warnings.push_back("NUMBER VOTERS says " + std::to_string(declared_voters) +
                           " but multiplicities sum to " + std::to_string(p.voters));
  }
  bool any_label = false;
  for (const auto& l : p.labels) {
    if (!l.empty()) any_label = true;
  }
  if (!any_label) p.labels.clear();
  return out;
}

parse_result load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open profile '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_profile(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

preference_counts preference_counts_of(const preference_profile& profile) {
  if (profile.n < 1) throw std::invalid_argument("profile has no items");
  preference_counts out;
  out.n = profile.n;
  out.voters = profile.voters;
  out.labels = profile.labels;
  out.wins.assign(static_cast<std::size_t>(profile.n) * profile.n, 0);
  for (const auto& b : profile.ballots) {
    for (std::size_t i = 0; i < b.items.size(); ++i) {
      for (std::size_t j = i + 1; j < b.items.size(); ++j) {
        out.wins[static_cast<std::size_t>(b.items[i]) * profile.n + b.items[j]] +=
            b.multiplicity;
      }
    }
  }
  return out;
}

pair_order_matrix matrix_from_counts(const preference_counts& counts) {
  pair_order_matrix m(counts.n);
  m.labels = counts.labels;
  for (int r = 0; r < counts.n; ++r) {
    for (int s = r + 1; s < counts.n; ++s) {
      std::int64_t a = counts.at(r, s);
      std::int64_t b = counts.at(s, r);
      rational c = (a + b) == 0 ? rational(1, 2) : rational(a, a + b);
      m.at(r, s) = c;
      m.at(s, r) = rational(1) - c;
    }
  }
  return m;
}

}  // namespace bucketorder
