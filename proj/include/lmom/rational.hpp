#pragma once

// Exact fractions in lowest terms over a pluggable integer type.
//
// basic_rational<__int128> is the fast kernel used inside hot loops whose
// magnitudes are known to stay bounded; Rational (arbitrary precision) is
// the public value type.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace lmom {

using BigInt = boost::multiprecision::cpp_int;
using i128 = __int128;
using u128 = unsigned __int128;

namespace detail {

template <class Int>
Int abs_value(const Int& x) {
  return x < 0 ? Int(-x) : x;
}

template <class Int>
Int gcd(Int a, Int b) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return boost::multiprecision::gcd(a, b);
  } else {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? u128(0) - u128(v) : u128(v);
  std::string s;
  while (u > 0) {
    s.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline BigInt to_big(i128 v) {
  bool neg = v < 0;
  u128 u = neg ? u128(0) - u128(v) : u128(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-r) : r;
}

inline BigInt to_big(const BigInt& v) { return v; }
inline BigInt to_big(std::int64_t v) { return BigInt(v); }

}  // namespace detail

template <class Int>
class basic_rational {
 public:
  basic_rational() : num_(0), den_(1) {}
  basic_rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design of a number type
  basic_rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::domain_error("rational: zero denominator");
    normalize();
  }

  static basic_rational from_integer(Int n) {
    basic_rational r;
    r.num_ = std::move(n);
    return r;
  }

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  basic_rational operator-() const {
    basic_rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  basic_rational& operator+=(const basic_rational& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      Int g = detail::gcd(den_, o.den_);
      Int a = o.den_ / g;
      num_ = num_ * a + o.num_ * (den_ / g);
      den_ *= a;
    }
    normalize();
    return *this;
  }
  basic_rational& operator-=(const basic_rational& o) { return *this += -o; }
  basic_rational& operator*=(const basic_rational& o) {
    Int g1 = detail::gcd(num_, o.den_);
    Int g2 = detail::gcd(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    num_ = (num_ / g1) * (o.num_ / g2);
    den_ = (den_ / g2) * (o.den_ / g1);
    normalize();
    return *this;
  }
  basic_rational& operator/=(const basic_rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational: division by zero");
    basic_rational inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    inv.normalize();
    return *this *= inv;
  }

  friend basic_rational operator+(basic_rational a, const basic_rational& b) { return a += b; }
  friend basic_rational operator-(basic_rational a, const basic_rational& b) { return a -= b; }
  friend basic_rational operator*(basic_rational a, const basic_rational& b) { return a *= b; }
  friend basic_rational operator/(basic_rational a, const basic_rational& b) { return a /= b; }

  friend bool operator==(const basic_rational& a, const basic_rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const basic_rational& a, const basic_rational& b) {
    Int l = a.num_ * b.den_;
    Int r = b.num_ * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Largest integer <= value.
  Int floor() const {
    Int q = num_ / den_;
    if (num_ < 0 && q * den_ != num_) q -= 1;
    return q;
  }

  double to_double() const {
    if constexpr (std::is_same_v<Int, BigInt>) {
      boost::multiprecision::cpp_rational r(num_, den_);
      return r.template convert_to<double>();
    } else {
      return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
    }
  }

  // "num/den"; integers keep the "/1" so the format is uniform.
  std::string str() const { return detail::to_string(num_) + "/" + detail::to_string(den_); }

  template <class Other>
  basic_rational<Other> convert() const {
    if constexpr (std::is_same_v<Other, BigInt>) {
      return basic_rational<Other>(detail::to_big(num_), detail::to_big(den_));
    } else {
      return basic_rational<Other>(static_cast<Other>(num_), static_cast<Other>(den_));
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const basic_rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    Int g = detail::gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Int num_;
  Int den_;
};

using Rational = basic_rational<BigInt>;
using FastRational = basic_rational<i128>;

inline Rational make_rational(std::int64_t n, std::int64_t d) { return Rational(BigInt(n), BigInt(d)); }
inline Rational make_rational(const BigInt& n, const BigInt& d) { return Rational(n, d); }

inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rational::from_integer(BigInt(std::string(s)));
    return Rational(BigInt(std::string(s.substr(0, slash))), BigInt(std::string(s.substr(slash + 1))));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: " + std::string(s));
  }
}

}  // namespace lmom
