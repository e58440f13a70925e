#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace bucketorder {

// Exact rational on int64 with canonical form: den > 0, gcd(|num|, den) = 1,
// and 0 represented as 0/1.  Every operation checks for int64 overflow and
// throws std::overflow_error instead of wrapping; there is no silent loss of
// exactness anywhere.
class rational {
 public:
  constexpr rational() : num_(0), den_(1) {}
  rational(std::int64_t value) : num_(value), den_(1) {}
  rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  rational operator-() const;
  rational& operator+=(const rational& o);
  rational& operator-=(const rational& o);
  rational& operator*=(const rational& o);
  rational& operator/=(const rational& o);

  friend rational operator+(rational a, const rational& b) { return a += b; }
  friend rational operator-(rational a, const rational& b) { return a -= b; }
  friend rational operator*(rational a, const rational& b) { return a *= b; }
  friend rational operator/(rational a, const rational& b) { return a /= b; }

  friend bool operator==(const rational& a, const rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const rational& a, const rational& b) { return !(a == b); }
  friend bool operator<(const rational& a, const rational& b);
  friend bool operator>(const rational& a, const rational& b) { return b < a; }
  friend bool operator<=(const rational& a, const rational& b) { return !(b < a); }
  friend bool operator>=(const rational& a, const rational& b) { return !(a < b); }

  // "p/q", or just "p" when the value is an integer.
  std::string str() const;
  // Decimal with exactly two places, rounding halves away from zero.
  std::string str_2dp() const;
  double to_double() const;

  // Accepts "p/q", "p", and terminating decimals such as "0.52" or "-.5".
  static rational parse(const std::string& text);

  friend std::ostream& operator<<(std::ostream& os, const rational& r);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

rational abs(const rational& r);
std::int64_t floor_div(std::int64_t num, std::int64_t den);

}  // namespace bucketorder
