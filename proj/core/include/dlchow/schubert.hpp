#ifndef DLCHOW_SCHUBERT_HPP
#define DLCHOW_SCHUBERT_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "dlchow/multipoly.hpp"
#include "dlchow/permutation.hpp"

namespace dlchow {

/// What the permutation keys of a SchubertVector stand for.
enum class SchubertLabel {
  Polynomial, ///< key w is the Schubert polynomial S_w (a class of codimension l(w))
  Cycle,      ///< key v is the Schubert cycle [C_v] (dimension l(v)), i.e. S_{w0 v}
};

/// A class in Z[x_1..x_n]/J written in the Schubert basis, with
/// coefficients in Q[q].
class SchubertVector {
public:
  using Entries = std::map<Permutation, QPoly, WOrder>;

  explicit SchubertVector(int n = 1, SchubertLabel labels = SchubertLabel::Polynomial);

  int rank() const { return n_; }
  SchubertLabel labels() const { return labels_; }
  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  QPoly coeff(const Permutation& w) const;

  /// Adds c to the entry of w; zero entries are removed. Throws
  /// std::invalid_argument on rank mismatch.
  void add(const Permutation& w, const QPoly& c);

  SchubertVector& operator+=(const SchubertVector& o);
  friend SchubertVector operator+(SchubertVector a, const SchubertVector& b) { return a += b; }
  SchubertVector scaled(const QPoly& c) const;
  /// Replaces q by a constant in every coefficient.
  SchubertVector evaluated(const Rational& q) const;

  /// Same class with keys converted between the two labelings (w <-> w0 w).
  SchubertVector relabeled(SchubertLabel target) const;

  /// Length shared by every key, if there is one (nullopt when empty or mixed).
  std::optional<int> homogeneous_length() const;
  bool has_integer_coefficients() const;
  bool has_nonnegative_coefficients() const;

  friend bool operator==(const SchubertVector&, const SchubertVector&) = default;

  /// "q*[s1 s2] + [s2 s1]" for cycle labels, "S[s2 s1]" for polynomial labels.
  std::string to_string(std::string_view var = "q") const;

private:
  int n_;
  SchubertLabel labels_;
  Entries entries_;
};

/// x_1^{n-1} x_2^{n-2} ... x_{n-1}.
MultiPoly staircase(int n);

/// del_w = del_{a_1} o ... o del_{a_r} for the lex-min reduced word
/// (a_1..a_r) of w, so that del_w S_v = S_{v w^-1} when lengths subtract.
MultiPoly divided_difference_word(const Permutation& w, const MultiPoly& f, Bank bank = Bank::X);

/// S_w(x), memoized; the reference stays valid for the program lifetime.
const MultiPoly& schubert_poly(const Permutation& w);

/// Moves every variable of bank `from` to bank `to` (same index).
MultiPoly rename_bank(const MultiPoly& f, Bank from, Bank to);

/// prod_{i+j<=n} (x_i - s*y_j) for a scale s (a rational or a polynomial in q).
MultiPoly double_schubert_w0(int n, const MultiPoly& y_scale);

/// y_i -> -y_{n-i+1}.
MultiPoly omega_y(const MultiPoly& f, int n);

enum class ExpandCheck {
  None,
  /// Verify that f minus its expansion reduces to zero modulo J.
  Remainder,
};

/// Coefficients c_w (w in S_n) with f = sum c_w S_w mod J, where c_w is the
/// constant term of del_w f. Only the given bank and q may appear in f.
SchubertVector expand_in_schubert_basis(const MultiPoly& f, int n, Bank bank = Bank::X,
                                        ExpandCheck check = ExpandCheck::None);

/// Normal form modulo the ideal generated by the positive-degree symmetric
/// polynomials in v_1..v_n (v = the chosen bank). Uses the reduction rules
/// v_k^{n-k+1} -> v_k^{n-k+1} - h_{n-k+1}(v_1..v_k). Independent of the
/// divided-difference expansion; used as a soundness check.
MultiPoly reduce_mod_coinvariant_ideal(const MultiPoly& f, int n, Bank bank = Bank::X);
bool in_coinvariant_ideal(const MultiPoly& f, int n, Bank bank = Bank::X);

/// S_u * S_v in the Schubert basis (polynomial labels), memoized through
/// the structure-constant cache for rank n.
SchubertVector schubert_product(const Permutation& u, const Permutation& v);

/// Uncached product, exposed for the cache and for tests.
SchubertVector compute_schubert_product(const Permutation& u, const Permutation& v);

} // namespace dlchow

#endif // DLCHOW_SCHUBERT_HPP
