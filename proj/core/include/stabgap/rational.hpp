#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "stabgap/errors.hpp"

namespace stabgap {

/// Exact rational arithmetic for couplings, energies and Bohr frequencies.
/// Every frequency-equality decision in the generator assembly goes through
/// exact comparison of these values, never through a float tolerance.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  Rational abs() const { return Rational(num_ < 0 ? -num_ : num_, den_); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_i128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw input_error("rational division by zero");
    return from_i128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Parses "[+-]digits[.digits]". This is the coupling syntax in model files.
  static Rational parse_decimal(const std::string& text);

  /// Exact echo, e.g. "3/2", "-1", "0".
  std::string to_string() const;

 private:
  static Rational from_i128(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw input_error("rational overflow");
    Rational r;
    r.num_ = (std::int64_t)n;
    r.den_ = (std::int64_t)d;
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
  void normalize() {
    if (den_ == 0) throw input_error("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational Rational::parse_decimal(const std::string& text) {
  if (text.empty()) throw input_error("empty coupling value");
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') { neg = text[i] == '-'; ++i; }
  if (i >= text.size()) throw input_error("malformed coupling '" + text + "'");
  __int128 num = 0;
  __int128 den = 1;
  bool saw_digit = false, saw_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (saw_dot) throw input_error("malformed coupling '" + text + "'");
      saw_dot = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (saw_dot) den *= 10;
      saw_digit = true;
      if (num > (__int128)INT64_MAX || den > (__int128)INT64_MAX)
        throw input_error("coupling out of range '" + text + "'");
    } else {
      throw input_error("malformed coupling '" + text + "'");
    }
  }
  if (!saw_digit) throw input_error("malformed coupling '" + text + "'");
  if (neg) num = -num;
  return from_i128(num, den);
}

inline std::string Rational::to_string() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

}  // namespace stabgap
