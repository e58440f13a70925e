#include "bucketorder/rational.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace bucketorder {

namespace {

constexpr std::int64_t kMax = INT64_MAX;
constexpr std::int64_t kMin = INT64_MIN;

std::int64_t narrow(__int128 v, const char* what) {
  if (v > static_cast<__int128>(kMax) || v < static_cast<__int128>(kMin)) {
    throw std::overflow_error(std::string("rational overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

__int128 iabs(__int128 v) { return v < 0 ? -v : v; }

}  // namespace

rational::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (num == kMin || den == kMin) throw std::overflow_error("rational overflow in construction");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

rational rational::operator-() const {
  rational r;
  r.num_ = narrow(-static_cast<__int128>(num_), "negation");
  r.den_ = den_;
  return r;
}

rational& rational::operator+=(const rational& o) {
  // num/den + onum/oden over gcd-reduced cross terms keeps intermediates small.
  std::int64_t g = std::gcd(den_, o.den_);
  __int128 lhs = static_cast<__int128>(num_) * (o.den_ / g);
  __int128 rhs = static_cast<__int128>(o.num_) * (den_ / g);
  __int128 n = lhs + rhs;
  __int128 d = static_cast<__int128>(den_) * (o.den_ / g);
  // Reduce in 128 bits before narrowing.
  __int128 gg = iabs(n);
  __int128 dd = d;
  while (dd != 0) {
    __int128 t = gg % dd;
    gg = dd;
    dd = t;
  }
  if (gg == 0) gg = 1;
  num_ = narrow(n / gg, "addition");
  den_ = narrow(d / gg, "addition");
  return *this;
}

rational& rational::operator-=(const rational& o) { return *this += -o; }

rational& rational::operator*=(const rational& o) {
  std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
  std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
  __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
  __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
  num_ = narrow(n, "multiplication");
  den_ = narrow(d, "multiplication");
  return *this;
}

rational& rational::operator/=(const rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  rational inv;
  if (o.num_ < 0) {
    if (o.num_ == kMin) throw std::overflow_error("rational overflow in division");
    inv.num_ = -o.den_;
    inv.den_ = -o.num_;
  } else {
    inv.num_ = o.den_;
    inv.den_ = o.num_;
  }
  return *this *= inv;
}

bool operator<(const rational& a, const rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string rational::str_2dp() const {
  // Round |num|/den to hundredths, halves away from zero.
  __int128 scaled = static_cast<__int128>(num_ < 0 ? -num_ : num_) * 100;
  __int128 whole = scaled / den_;
  __int128 rem = scaled % den_;
  if (2 * rem >= den_) whole += 1;
  long long cents = static_cast<long long>(whole);
  std::string out = num_ < 0 && cents != 0 ? "-" : "";
  out += std::to_string(cents / 100);
  out += '.';
  long long frac = cents % 100;
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

double rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

rational rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t slash = text.find('/');
  auto parse_int = [](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t pos = 0;
    long long v;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer literal '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("bad integer literal '" + s + "'");
    return v;
  };
  if (slash != std::string::npos) {
    return rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  std::size_t dot = text.find('.');
  if (dot == std::string::npos) return rational(parse_int(text));
  std::string head = text.substr(0, dot);
  std::string tail = text.substr(dot + 1);
  bool negative = !head.empty() && head[0] == '-';
  if (head == "-" || head == "+" || head.empty()) head += '0';
  if (tail.empty()) tail = "0";
  if (tail.size() > 18) throw std::invalid_argument("decimal literal too long '" + text + "'");
  for (char c : tail) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal '" + text + "'");
  }
  std::int64_t den = 1;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (den > kMax / 10) throw std::overflow_error("rational overflow in parse");
    den *= 10;
  }
  rational whole(parse_int(head));
  rational frac(parse_int(tail), den);
  if (negative) frac = -frac;
  return whole + frac;
}

std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.str(); }

rational abs(const rational& r) { return r.is_negative() ? -r : r; }

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

}  // namespace bucketorder
