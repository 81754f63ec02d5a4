#ifndef DLCHOW_UNIPOLY_HPP
#define DLCHOW_UNIPOLY_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlchow/arith.hpp"

namespace dlchow {

inline std::string coeff_to_string(const Integer& c) { return c.str(); }
inline std::string coeff_to_string(const Rational& c) { return c.to_string(); }
inline int coeff_sign(const Integer& c) { return c.sign(); }
inline int coeff_sign(const Rational& c) { return c.sign(); }
inline bool coeff_is_zero(const Integer& c) { return c.is_zero(); }
inline bool coeff_is_zero(const Rational& c) { return c.is_zero(); }
inline Rational to_rational(const Integer& c) { return Rational(c); }
inline Rational to_rational(const Rational& c) { return c; }

/// Sparse univariate Laurent polynomial with exact coefficients.
///
/// Terms are kept sorted by ascending exponent with no zero coefficients, so
/// structural equality is polynomial equality.
template <class C>
class UniPoly {
public:
  struct Term {
    int exp;
    C coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  struct LeadingData {
    int degree;
    C coeff;
  };

  UniPoly() = default;
  UniPoly(const C& constant) { // NOLINT(google-explicit-constructor)
    if (!coeff_is_zero(constant)) terms_.push_back({0, constant});
  }
  UniPoly(int constant) : UniPoly(C(constant)) {} // NOLINT(google-explicit-constructor)

  static UniPoly monomial(const C& coeff, int exp) {
    UniPoly p;
    if (!coeff_is_zero(coeff)) p.terms_.push_back({exp, coeff});
    return p;
  }
  static UniPoly var() { return monomial(C(1), 1); }

  /// Builds from arbitrary (exp, coeff) pairs, combining duplicates.
  static UniPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    UniPoly p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
        p.terms_.back().coeff += t.coeff;
        if (coeff_is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      } else if (!coeff_is_zero(t.coeff)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0); }

  C coeff(int exp) const {
    for (const auto& t : terms_)
      if (t.exp == exp) return t.coeff;
    return C(0);
  }
  C constant_term() const { return coeff(0); }

  /// Highest exponent; throws std::domain_error for the zero polynomial.
  int degree() const {
    if (is_zero()) throw std::domain_error("degree of zero polynomial");
    return terms_.back().exp;
  }
  int low_degree() const {
    if (is_zero()) throw std::domain_error("low degree of zero polynomial");
    return terms_.front().exp;
  }
  LeadingData leading_data() const {
    if (is_zero()) throw std::domain_error("leading data of zero polynomial");
    return {terms_.back().exp, terms_.back().coeff};
  }
  bool has_negative_exponents() const { return !terms_.empty() && terms_.front().exp < 0; }

  UniPoly& operator+=(const UniPoly& o) { return *this = merge(*this, o, false); }
  UniPoly& operator-=(const UniPoly& o) { return *this = merge(*this, o, true); }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) { return merge(a, b, false); }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return merge(a, b, true); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.exp + t.exp, s.coeff * t.coeff});
    return from_terms(std::move(out));
  }
  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  UniPoly scaled(const C& c) const {
    if (coeff_is_zero(c)) return {};
    UniPoly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }
  /// Multiplies by var^k.
  UniPoly shifted(int k) const {
    UniPoly r = *this;
    for (auto& t : r.terms_) t.exp += k;
    return r;
  }
  UniPoly pow(unsigned k) const {
    UniPoly result(C(1)), base = *this;
    while (k) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k) base *= base;
    }
    return result;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.terms_ == b.terms_; }

  /// Exact evaluation. Throws std::domain_error at zero when negative
  /// exponents are present.
  Rational eval(const Rational& value) const {
    if (value.is_zero() && has_negative_exponents())
      throw std::domain_error("evaluation at 0 of a polynomial with negative exponents");
    Rational acc;
    for (const auto& t : terms_) {
      Rational p = 1;
      Rational base = t.exp >= 0 ? value : Rational(1) / value;
      for (int i = 0, e = t.exp >= 0 ? t.exp : -t.exp; i < e; ++i) p *= base;
      acc += to_rational(t.coeff) * p;
    }
    return acc;
  }

  /// Compact rendering, highest degree first: "q^2+q+1", "x-1", "2*x^-1".
  std::string to_string(std::string_view var) const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      bool neg = coeff_sign(it->coeff) < 0;
      C mag = neg ? C(-it->coeff) : it->coeff;
      if (!out.empty()) out += neg ? "-" : "+";
      else if (neg) out += "-";
      std::string c = coeff_to_string(mag);
      if (it->exp == 0) {
        out += c;
        continue;
      }
      if (c != "1") out += c + "*";
      out += var;
      if (it->exp != 1) out += "^" + std::to_string(it->exp);
    }
    return out;
  }

private:
  static UniPoly merge(const UniPoly& a, const UniPoly& b, bool subtract) {
    UniPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].exp < b.terms_[j].exp)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exp < a.terms_[i].exp) {
        r.terms_.push_back({b.terms_[j].exp, subtract ? C(-b.terms_[j].coeff) : b.terms_[j].coeff});
        ++j;
      } else {
        C c = subtract ? C(a.terms_[i].coeff - b.terms_[j].coeff) : C(a.terms_[i].coeff + b.terms_[j].coeff);
        if (!coeff_is_zero(c)) r.terms_.push_back({a.terms_[i].exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

/// Laurent polynomials in x over the integers (Hecke algebra coefficients).
using LaurentPoly = UniPoly<Integer>;
/// Polynomials in q over the rationals (class coefficients, Poincare polynomials).
using QPoly = UniPoly<Rational>;

inline QPoly to_qpoly(const LaurentPoly& p) {
  std::vector<QPoly::Term> terms;
  for (const auto& t : p.terms()) terms.push_back({t.exp, Rational(t.coeff)});
  return QPoly::from_terms(std::move(terms));
}

/// Quotient and remainder of polynomial division over the rationals.
/// Both operands must be honest polynomials (no negative exponents).
struct QPolyDivision {
  QPoly quotient;
  QPoly remainder;
};
QPolyDivision divide(const QPoly& numerator, const QPoly& denominator);

/// Throws std::domain_error when the division leaves a remainder.
QPoly divide_exact(const QPoly& numerator, const QPoly& denominator);

/// The d-th cyclotomic polynomial in q.
const QPoly& cyclotomic(int d);

} // namespace dlchow

#endif // DLCHOW_UNIPOLY_HPP
