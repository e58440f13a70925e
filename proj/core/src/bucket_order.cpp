#include "bucketorder/bucket_order.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bucketorder {

int bucket_order::item_count() const {
  int n = 0;
  for (const auto& b : buckets) n += static_cast<int>(b.size());
  return n;
}

std::vector<int> bucket_order::sizes() const {
  std::vector<int> s;
  s.reserve(buckets.size());
  for (const auto& b : buckets) s.push_back(static_cast<int>(b.size()));
  return s;
}

std::vector<int> bucket_order::assignment() const {
  std::vector<int> a(item_count(), -1);
  for (int u = 0; u < bucket_count(); ++u) {
    for (int r : buckets[u]) {
      if (r < 0 || r >= static_cast<int>(a.size()) || a[r] != -1) {
        throw std::invalid_argument("bucket order is not a partition");
      }
      a[r] = u;
    }
  }
  return a;
}

void bucket_order::validate(int n) const {
  std::vector<char> seen(n, 0);
  for (const auto& b : buckets) {
    if (b.empty()) throw std::invalid_argument("empty bucket");
    if (!std::is_sorted(b.begin(), b.end())) throw std::invalid_argument("bucket not sorted");
    for (int r : b) {
      if (r < 0 || r >= n) {
        throw std::invalid_argument("item " + std::to_string(r + 1) + " out of range 1.." +
                                    std::to_string(n));
      }
      if (seen[r]) {
        throw std::invalid_argument("item " + std::to_string(r + 1) + " appears twice");
      }
      seen[r] = 1;
    }
  }
  for (int r = 0; r < n; ++r) {
    if (!seen[r]) throw std::invalid_argument("item " + std::to_string(r + 1) + " missing");
  }
}

void bucket_order::normalize() {
  for (auto& b : buckets) std::sort(b.begin(), b.end());
}

std::string bucket_order::str() const {
  std::ostringstream os;
  for (std::size_t u = 0; u < buckets.size(); ++u) {
    if (u > 0) os << " | ";
    for (std::size_t i = 0; i < buckets[u].size(); ++i) {
      if (i > 0) os << ' ';
      os << buckets[u][i] + 1;
    }
  }
  return os.str();
}

std::string bucket_order::str_tail_separated() const {
  if (buckets.size() < 2) throw std::invalid_argument("tail display needs at least two buckets");
  std::ostringstream os;
  for (std::size_t u = 0; u < buckets.size(); ++u) {
    if (u > 0) os << (u + 1 == buckets.size() ? " || " : " | ");
    for (std::size_t i = 0; i < buckets[u].size(); ++i) {
      if (i > 0) os << ' ';
      os << buckets[u][i] + 1;
    }
  }
  return os.str();
}

bucket_order bucket_order::parse(const std::string& text, int n) {
  bucket_order out;
  std::vector<int> current;
  int max_item = 0;
  std::size_t i = 0;
  auto flush = [&](bool separator_seen) {
    if (current.empty()) {
      throw std::invalid_argument(separator_seen ? "empty bucket in '" + text + "'"
                                                 : "no items in '" + text + "'");
    }
    std::sort(current.begin(), current.end());
    out.buckets.push_back(current);
    current.clear();
  };
  bool any_token = false;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '|') {
      while (i < text.size() && text[i] == '|') ++i;
      flush(true);
    } else if (c >= '0' && c <= '9') {
      int v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1) throw std::invalid_argument("items are numbered from 1 in '" + text + "'");
      current.push_back(v - 1);
      max_item = std::max(max_item, v);
      any_token = true;
    } else {
      throw std::invalid_argument("unexpected character '" + std::string(1, c) + "' in '" +
                                  text + "'");
    }
  }
  if (!any_token) throw std::invalid_argument("no items in '" + text + "'");
  flush(false);
  int count = n >= 0 ? n : max_item;
  out.validate(count);
  return out;
}

bool operator<(const bucket_order& a, const bucket_order& b) {
  if (a.bucket_count() != b.bucket_count()) return a.bucket_count() < b.bucket_count();
  return a.assignment() < b.assignment();
}

}  // namespace bucketorder
