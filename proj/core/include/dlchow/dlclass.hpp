#ifndef DLCHOW_DLCLASS_HPP
#define DLCHOW_DLCLASS_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dlchow/permutation.hpp"
#include "dlchow/schubert.hpp"

namespace dlchow {

enum class ClassKind {
  DLFrobenius,   ///< closure of X(w)
  RegSemisimple, ///< closure of Y_{w,s}, s regular semisimple
  RegUnipotent,  ///< closure of Y_{w,u}, u regular unipotent
};

enum class ClassPath {
  PairEnumeration,
  DividedDifference,
};

struct AdmissiblePair {
  Permutation u;
  Permutation v;
  friend bool operator==(const AdmissiblePair&, const AdmissiblePair&) = default;
};

/// Pairs (u, v) with u w d(v)^-1 = w0 and l(u) + l(v) = l(w0) - l(w), where
/// d is the twist. Ordered by v in WOrder.
std::vector<AdmissiblePair> admissible_pairs(const Permutation& w, Twist twist);

/// [X(w)] in the cycle basis, coefficients in Z[q]: the sum over admissible
/// pairs of S_u S_v q^{l(v)}.
SchubertVector class_X(const Permutation& w, Twist twist);

/// class_X(w, Trivial) at q = 1.
SchubertVector class_Y_ss(const Permutation& w);

/// class_Y_ss(w) scaled by |W_supp(w)| / |W|.
SchubertVector class_Y_unip(const Permutation& w);

/// [X(w)] from the double Schubert polynomial of w0: del_w^x S_w0(x; -qy),
/// then y_i -> -y_{n+1-i} for the trivial twist, then y_i -> x_i.
SchubertVector class_via_divided_diff(const Permutation& w, Twist twist,
                                      ExpandCheck check = ExpandCheck::Remainder);

/// Number of F-rational points of G/P_I, I the twist-stable closure of
/// supp(w): the sum of q^l(v) over minimal coset representatives v of W/W_I
/// fixed by the twist (all of them for the trivial twist).
QPoly components_X(const Permutation& w, Twist twist);

/// |W| / |W_supp(w)|.
Integer components_Y_ss(const Permutation& w);

struct ClassReport {
  Permutation w;
  Twist twist = Twist::Trivial;
  ClassKind kind = ClassKind::DLFrobenius;
  SchubertVector vector;
  ClassPath path = ClassPath::PairEnumeration;
  /// components_X for DL classes, components_Y_ss for semisimple ones, and 1
  /// for unipotent ones (those varieties are irreducible).
  QPoly components;

  friend bool operator==(const ClassReport&, const ClassReport&) = default;
};

/// Throws std::invalid_argument for a non-trivial twist with a Y kind.
ClassReport make_class_report(const Permutation& w, Twist twist, ClassKind kind,
                              ClassPath path = ClassPath::PairEnumeration);

/// Replaces q by a number in the vector and the component count.
ClassReport evaluated(const ClassReport& r, const Rational& q);

std::string to_string(ClassKind k); ///< "dl", "ss", "unip"
ClassKind parse_class_kind(std::string_view text);
std::string to_string(ClassPath p); ///< "pairs", "divided-difference"
ClassPath parse_class_path(std::string_view text);

/// {"n":3,"w":"s1 s2","twist":"trivial","kind":"dl","class":[{"v":..,"coeff":..}],
///  "components":"1","path":"pairs"}
std::string to_json(const ClassReport& r);
/// Inverse of to_json; throws std::invalid_argument on malformed input.
ClassReport class_report_from_json(std::string_view text);

/// Columns are the classes [X(w)] for w in WOrder, rows the cycles [C_v] in
/// the same order. The matrix is block diagonal by length.
struct TransitionMatrix {
  int n = 1;
  Twist twist = Twist::Trivial;
  std::vector<Permutation> index;
  std::vector<std::vector<QPoly>> entries; ///< entries[row][col]
  QPoly det;
};

TransitionMatrix transition_matrix(int n, Twist twist, int jobs = 1);

/// Exact determinant by fraction-free elimination.
QPoly determinant(std::vector<std::vector<QPoly>> m);

/// p = unit * q^q_power * prod Phi_d^mult * rest, found by trial division.
struct CyclotomicFactorization {
  Rational unit;
  int q_power = 0;
  std::vector<std::pair<int, int>> factors; ///< (d, multiplicity), d ascending
  QPoly rest;                               ///< monic, no factor Phi_d for d <= max_d
};

/// Throws std::domain_error for the zero polynomial.
CyclotomicFactorization factor_cyclotomic(const QPoly& p, int max_d);

/// "(q+1)^2*(q^2+q+1)"; the unit's sign is dropped and rendered by callers.
std::string to_string(const CyclotomicFactorization& f);

enum class EqualityReason { Inverse, DisjointSupport, Mixed, Exceptional };

std::string to_string(EqualityReason r); ///< "inverse", "disjoint-support", "mixed", "exceptional"

struct EqualityGroup {
  std::vector<Permutation> members; ///< WOrder
  EqualityReason reason = EqualityReason::Exceptional;
  SchubertVector cls;
};

/// Tags a set of elements sharing a class by connecting them with the edges
/// w ~ w^-1 and ab ~ ba (supp(a) and supp(b) disjoint).
EqualityReason classify_group(const std::vector<Permutation>& members);

/// Groups of size >= 2 of elements of S_n with equal class_Y_ss. Classes of
/// different lengths never coincide, so groups are produced one length at a
/// time and passed to on_group as soon as a length is finished. Ordered by
/// length, then by first member.
std::vector<EqualityGroup> equality_classes(int n, const std::function<void(const EqualityGroup&)>& on_group = {},
                                            int jobs = 1);

/// Runs f(k) for k in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& f);

} // namespace dlchow

#endif // DLCHOW_DLCLASS_HPP
