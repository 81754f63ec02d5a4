#ifndef DLCHOW_MULTIPOLY_HPP
#define DLCHOW_MULTIPOLY_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dlchow/arith.hpp"
#include "dlchow/unipoly.hpp"

namespace dlchow {

/// Variable banks: x_1..x_8, y_1..y_8 and the scalar parameter q.
enum class Bank : std::uint8_t { X, Y, Q };

inline constexpr int kBankSize = 8;

struct Var {
  Bank bank;
  int index; // 1-based for X and Y; ignored (0) for Q

  friend auto operator<=>(const Var&, const Var&) = default;
  std::string to_string() const;
};

inline Var xvar(int i) { return {Bank::X, i}; }
inline Var yvar(int i) { return {Bank::Y, i}; }
inline Var qvar() { return {Bank::Q, 0}; }

/// Exponent vector packed into bytes. x_1 sits in the most significant byte
/// of its word, so the defaulted ordering is lexicographic with
/// x_1 > x_2 > ... > x_8, then y_1 > ... > y_8, then q.
class Monomial {
public:
  constexpr Monomial() = default;
  static Monomial of(Var v, int e = 1) {
    Monomial m;
    m.set_exponent(v, e);
    return m;
  }

  int exponent(Var v) const {
    switch (v.bank) {
    case Bank::X: return byte(x_, v.index);
    case Bank::Y: return byte(y_, v.index);
    case Bank::Q: return q_;
    }
    return 0;
  }
  /// Throws std::overflow_error outside [0, 255], std::out_of_range on a bad index.
  void set_exponent(Var v, int e);

  int degree() const { return degree(Bank::X) + degree(Bank::Y) + q_; }
  int degree(Bank b) const;
  bool is_one() const { return x_ == 0 && y_ == 0 && q_ == 0; }
  bool has_bank(Bank b) const {
    return b == Bank::X ? x_ != 0 : b == Bank::Y ? y_ != 0 : q_ != 0;
  }
  std::uint64_t xbits() const { return x_; }
  std::uint64_t ybits() const { return y_; }

  /// Throws std::overflow_error if an exponent would exceed 255.
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.x_ = add_bytes(a.x_, b.x_);
    r.y_ = add_bytes(a.y_, b.y_);
    int qe = a.q_ + b.q_;
    if (qe > 255) throw std::overflow_error("monomial exponent overflow");
    r.q_ = static_cast<std::uint8_t>(qe);
    return r;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// "x1^2*x2*y3*q"; the unit monomial renders as "1".
  std::string to_string() const;

  std::size_t hash() const {
    std::uint64_t h = x_ * 0x9E3779B97F4A7C15ULL ^ (y_ + 0x632BE59BD9B4E019ULL + (h_rot(x_)));
    h ^= static_cast<std::uint64_t>(q_) * 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 31U;
    return static_cast<std::size_t>(h * 0x94D049BB133111EBULL);
  }

private:
  static int shift(int index) { return 8 * (kBankSize - index); }
  static int byte(std::uint64_t word, int index) {
    if (index < 1 || index > kBankSize) return 0;
    return static_cast<int>((word >> shift(index)) & 0xFFU);
  }
  static std::uint64_t h_rot(std::uint64_t v) { return (v << 29U) | (v >> 35U); }
  static std::uint64_t add_bytes(std::uint64_t a, std::uint64_t b) {
    constexpr std::uint64_t kHigh = 0x8080808080808080ULL;
    if (((a | b) & kHigh) == 0) return a + b;
    std::uint64_t r = 0;
    for (int k = 0; k < 8; ++k) {
      unsigned s = ((a >> (8 * k)) & 0xFFU) + ((b >> (8 * k)) & 0xFFU);
      if (s > 255) throw std::overflow_error("monomial exponent overflow");
      r |= static_cast<std::uint64_t>(s) << (8 * k);
    }
    return r;
  }

  std::uint64_t x_ = 0;
  std::uint64_t y_ = 0;
  std::uint8_t q_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Sparse multivariate polynomial over the x, y and q banks.
///
/// Terms are sorted ascending by Monomial with no zero coefficients, so
/// structural equality is polynomial equality.
template <class C>
class SparsePoly {
public:
  using Term = std::pair<Monomial, C>;

  SparsePoly() = default;
  SparsePoly(const C& constant) { // NOLINT(google-explicit-constructor)
    if (!coeff_is_zero(constant)) terms_.emplace_back(Monomial{}, constant);
  }
  SparsePoly(int constant) : SparsePoly(C(constant)) {} // NOLINT(google-explicit-constructor)

  static SparsePoly variable(Var v) { return term(Monomial::of(v), C(1)); }
  static SparsePoly term(const Monomial& m, const C& c) {
    SparsePoly p;
    if (!coeff_is_zero(c)) p.terms_.emplace_back(m, c);
    return p;
  }

  /// Combines duplicates and drops zeros.
  static SparsePoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    SparsePoly p;
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) p.terms_.back().second += t.second;
      else p.terms_.push_back(std::move(t));
    }
    std::erase_if(p.terms_, [](const Term& t) { return coeff_is_zero(t.second); });
    return p;
  }

  /// Accumulates terms in a hash map before sorting; faster when many
  /// duplicates are expected.
  class Accumulator {
  public:
    explicit Accumulator(std::size_t expected = 0) { map_.reserve(expected); }
    void add(const Monomial& m, const C& c) {
      auto [it, inserted] = map_.try_emplace(m, c);
      if (!inserted) it->second += c;
    }
    void add_negated(const Monomial& m, const C& c) {
      auto [it, inserted] = map_.try_emplace(m, -c);
      if (!inserted) it->second -= c;
    }
    SparsePoly finish() {
      SparsePoly p;
      p.terms_.reserve(map_.size());
      for (auto& [m, c] : map_)
        if (!coeff_is_zero(c)) p.terms_.emplace_back(m, std::move(c));
      std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
      map_.clear();
      return p;
    }

  private:
    std::unordered_map<Monomial, C, MonomialHash> map_;
  };

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return t.first < k; });
    return it != terms_.end() && it->first == m ? it->second : C(0);
  }
  C constant_term() const { return coeff(Monomial{}); }

  /// Maximum total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }
  int degree(Bank b) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.first.degree(b));
    return d;
  }
  bool uses(Bank b) const {
    return std::any_of(terms_.begin(), terms_.end(), [b](const Term& t) { return t.first.has_bank(b); });
  }

  SparsePoly& operator+=(const SparsePoly& o) { return *this = merge(*this, o, false); }
  SparsePoly& operator-=(const SparsePoly& o) { return *this = merge(*this, o, true); }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, false); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, true); }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1 || b.size() == 1) {
      // Multiplying by a single term keeps the order; no re-sorting needed.
      const SparsePoly& big = a.size() == 1 ? b : a;
      const Term& t = a.size() == 1 ? a.terms_[0] : b.terms_[0];
      SparsePoly r;
      r.terms_.reserve(big.size());
      for (const auto& s : big.terms_) r.terms_.emplace_back(s.first * t.first, s.second * t.second);
      return r;
    }
    Accumulator acc(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc.add(s.first * t.first, s.second * t.second);
    return acc.finish();
  }
  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  SparsePoly scaled(const C& c) const {
    if (coeff_is_zero(c)) return {};
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }
  SparsePoly pow(unsigned k) const {
    SparsePoly result(C(1)), base = *this;
    while (k) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k) base *= base;
    }
    return result;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

  /// Graded lexicographic order, highest first: "x1^2*x2 - y1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<const Term*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
      int da = a->first.degree(), db = b->first.degree();
      if (da != db) return da > db;
      return a->first > b->first;
    });
    std::string out;
    for (const Term* t : order) {
      bool neg = coeff_sign(t->second) < 0;
      C mag = neg ? C(-t->second) : t->second;
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      std::string c = coeff_to_string(mag);
      if (t->first.is_one()) out += c;
      else out += (c == "1" ? "" : c + "*") + t->first.to_string();
    }
    return out;
  }

private:
  static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool subtract) {
    SparsePoly r;
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a.terms_[i].first < b.terms_[j].first)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || b.terms_[j].first < a.terms_[i].first) {
        r.terms_.emplace_back(b.terms_[j].first, subtract ? C(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        C c = subtract ? C(a.terms_[i].second - b.terms_[j].second) : C(a.terms_[i].second + b.terms_[j].second);
        if (!coeff_is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

/// Multivariate polynomial over the rationals.
using MultiPoly = SparsePoly<Rational>;

/// Per-variable replacement map for substitute().
using Substitution = std::map<Var, MultiPoly>;

enum class MissingVar {
  Error,    ///< every variable of the input must be assigned
  KeepAsIs, ///< unassigned variables map to themselves
};

/// Simultaneous substitution. With MissingVar::Error, throws
/// std::invalid_argument when a variable of p has no assignment.
MultiPoly substitute(const MultiPoly& p, const Substitution& assignment, MissingVar missing = MissingVar::Error);

/// The divided difference (f - s_i f)/(v_i - v_{i+1}) on bank X or Y,
/// computed term by term (the quotient is always exact).
MultiPoly divided_difference(int i, const MultiPoly& f, Bank bank = Bank::X);

/// Extracts the coefficient polynomial of q from a polynomial that only
/// involves the q bank. Throws std::invalid_argument otherwise.
QPoly to_qpoly(const MultiPoly& p);
MultiPoly from_qpoly(const QPoly& p);

/// Parses the grammar produced by to_string (also accepts parentheses, '^',
/// implicit products and rational constants). Variables: x<i>, y<i>, q.
MultiPoly parse_multipoly(std::string_view text);
/// Univariate parse in the given variable name ("q" or "x").
QPoly parse_qpoly(std::string_view text, std::string_view var = "q");
LaurentPoly parse_laurent(std::string_view text, std::string_view var = "x");

} // namespace dlchow

#endif // DLCHOW_MULTIPOLY_HPP
