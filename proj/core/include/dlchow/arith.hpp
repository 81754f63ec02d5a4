#ifndef DLCHOW_ARITH_HPP
#define DLCHOW_ARITH_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dlchow {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational number over arbitrary-precision integers.
///
/// Always normalized: gcd(num, den) == 1 and den > 0. Integral values skip
/// the gcd entirely, which keeps the polynomial kernels (whose coefficients
/// are almost always integers) close to plain integer speed.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(int v) : num_(v), den_(1) {}            // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v), den_(1) {}           // NOLINT(google-explicit-constructor)
  Rational(long long v) : num_(v), den_(1) {}      // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : num_(v), den_(1) {} // NOLINT(google-explicit-constructor)
  Rational(Integer num, Integer den);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == 1; }
  bool is_one() const { return den_ == 1 && num_ == 1; }
  int sign() const { return num_.sign(); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "3", "-1/2".
  std::string to_string() const;
  /// Accepts "[-]digits[/digits]"; throws std::invalid_argument otherwise.
  static Rational parse(std::string_view text);

private:
  void normalize();

  Integer num_;
  Integer den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Integer factorial(int n);
Integer parse_integer(std::string_view text);

inline Integer to_integer(const Rational& r) {
  if (!r.is_integer()) throw std::domain_error("rational value is not integral: " + r.to_string());
  return r.num();
}

} // namespace dlchow

#endif // DLCHOW_ARITH_HPP
