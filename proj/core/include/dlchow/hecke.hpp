#ifndef DLCHOW_HECKE_HPP
#define DLCHOW_HECKE_HPP

#include <map>
#include <string>
#include <string_view>

#include "dlchow/permutation.hpp"
#include "dlchow/unipoly.hpp"

namespace dlchow {

/// Element of the Iwahori-Hecke algebra of S_n over Z[x, x^-1], stored by
/// its coordinates in the T-basis. Zero coordinates are never stored.
class HeckeElement {
public:
  using Coords = std::map<Permutation, LaurentPoly, WOrder>;

  explicit HeckeElement(int n = 1);
  /// c * T_id.
  HeckeElement(int n, const LaurentPoly& c);
  /// T_w.
  static HeckeElement basis(const Permutation& w);

  int rank() const { return n_; }
  const Coords& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  LaurentPoly coeff(const Permutation& w) const;

  void add(const Permutation& w, const LaurentPoly& c);
  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator-=(const HeckeElement& o);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  HeckeElement operator-() const { return scaled(LaurentPoly(-1)); }
  HeckeElement scaled(const LaurentPoly& c) const;

  /// Right multiplication by T_{s_i}.
  HeckeElement times_simple(int i) const;
  /// Right multiplication by T_{s_i}^-1 = x^-1 T_{s_i} + (x^-1 - 1) T_id.
  HeckeElement times_simple_inverse(int i) const;

  friend bool operator==(const HeckeElement&, const HeckeElement&) = default;

  /// Longest basis elements first: "(x-1)*T[s1] + x*T[id]".
  std::string to_string(std::string_view var = "x") const;

private:
  int n_;
  Coords coords_;
};

/// Bilinear product. Throws std::invalid_argument on rank mismatch.
HeckeElement t_mul(const HeckeElement& a, const HeckeElement& b);
inline HeckeElement operator*(const HeckeElement& a, const HeckeElement& b) { return t_mul(a, b); }

/// T_w^-1.
HeckeElement t_inverse(const Permutation& w);

/// R_{1,w} = (-x)^{l(w)} * (coefficient of T_id in T_{w^-1}^-1).
LaurentPoly r_polynomial(const Permutation& w);

/// Coefficient of T_{w'^-1} in T_w T_{w'^-1}.
LaurentPoly f_coefficient(const Permutation& w, const Permutation& w_prime);

/// Sum of f_coefficient(w, w') over all w' in S_n.
LaurentPoly f_w(const Permutation& w);

/// Parses expressions such as "T[s1]*T[s1]", "(x-1)*T[s2 s1] + x^-1*T[id]"
/// or "T[s1]^-1" in the Hecke algebra of S_n.
HeckeElement parse_hecke(std::string_view text, int n);

} // namespace dlchow

#endif // DLCHOW_HECKE_HPP
