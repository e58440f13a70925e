#include "bucketorder/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bucketorder {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream ts(line);
  while (std::getline(ts, token, ',')) out.push_back(trim(token));
  return out;
}

bool parses_as_rational(const std::string& s) {
  try {
    rational::parse(s);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

pair_order_matrix parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_row(line));
  }
  if (rows.empty()) throw std::invalid_argument("matrix file has no rows");
  std::vector<std::string> labels;
  bool header = false;
  for (const std::string& tok : rows[0]) {
    if (!parses_as_rational(tok)) header = true;
  }
  if (header) {
    labels = rows[0];
    rows.erase(rows.begin());
    if (rows.empty()) throw std::invalid_argument("matrix file has a header but no rows");
  }
  int n = static_cast<int>(rows.size());
  pair_order_matrix m(n);
  m.labels = labels;
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw std::invalid_argument("header has " + std::to_string(labels.size()) +
                                " labels but there are " + std::to_string(n) + " rows");
  }
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n) {
      throw std::invalid_argument("row " + std::to_string(r + 1) + " has " +
                                  std::to_string(rows[r].size()) + " entries, expected " +
                                  std::to_string(n));
    }
    for (int s = 0; s < n; ++s) {
      try {
        m.at(r, s) = rational::parse(rows[r][s]);
      } catch (const std::exception& e) {
        throw std::invalid_argument("entry (" + std::to_string(r + 1) + "," +
                                    std::to_string(s + 1) + "): " + e.what());
      }
    }
  }
  m.validate();
  return m;
}

pair_order_matrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open matrix '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix_csv(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string matrix_csv(const pair_order_matrix& m) {
  m.validate();
  std::ostringstream os;
  if (!m.labels.empty()) {
    for (int s = 0; s < m.n; ++s) {
      if (s > 0) os << ',';
      os << m.labels[s];
    }
    os << '\n';
  }
  for (int r = 0; r < m.n; ++r) {
    for (int s = 0; s < m.n; ++s) {
      if (s > 0) os << ',';
      os << m.at(r, s).str();
    }
    os << '\n';
  }
  return os.str();
}

void save_matrix_csv(const pair_order_matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write matrix '" + path + "'");
  out << matrix_csv(m);
}

}  // namespace bucketorder
