#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "klncc/error.hpp"

namespace klncc {

// Exact signed rational. This is the only cost representation in the library;
// the feasibility arguments rest on strict comparisons of values like -2m,
// 1/(m+1) and 1/(2m+2), which floating point would not keep exact.
//
// Always normalized: lowest terms, denominator > 0, zero is 0/1.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) : num_(n), den_(d) {
    if (d == 0) raise(Errc::BadRational, "zero denominator");
    normalize();
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_wide(n, d);
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

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

  // Canonical text form "num/den", e.g. "-3/4", "0/1".
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  // Accepts "n/d" or a bare integer "n".
  static Rational parse(std::string_view s) {
    auto bad = [&] { raise(Errc::BadRational, "cannot parse '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    std::string text(s);
    std::size_t slash = text.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        long long n = std::stoll(text, &used);
        if (used != text.size()) bad();
        return Rational(n);
      }
      long long n = std::stoll(text.substr(0, slash), &used);
      if (used != slash) bad();
      long long d = std::stoll(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1) bad();
      return Rational(n, d);
    } catch (const std::logic_error&) {
      bad();
    }
    return Rational();  // unreachable
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd_wide(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      raise(Errc::BadRational, "rational overflow");
    Rational r;
    r.num_ = (long long)n;
    r.den_ = (long long)d;
    return r;
  }

  static __int128 gcd_wide(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace klncc
