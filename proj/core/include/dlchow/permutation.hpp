#ifndef DLCHOW_PERMUTATION_HPP
#define DLCHOW_PERMUTATION_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dlchow/unipoly.hpp"

namespace dlchow {

/// Largest rank supported anywhere in the library (S_8).
inline constexpr int kMaxRank = 8;

/// A set of simple reflections s_i, stored as a bitmask over i = 1..kMaxRank-1.
class SimpleSet {
public:
  SimpleSet() = default;
  explicit SimpleSet(std::uint32_t mask) : mask_(mask) {}
  SimpleSet(std::initializer_list<int> indices) {
    for (int i : indices) insert(i);
  }
  /// {1, ..., n-1}: every simple reflection of S_n.
  static SimpleSet all(int n) { return SimpleSet(n <= 1 ? 0U : ((1U << (n - 1)) - 1U) << 1U); }

  bool contains(int i) const { return i >= 1 && i < 32 && ((mask_ >> i) & 1U); }
  void insert(int i) { mask_ |= 1U << i; }
  bool empty() const { return mask_ == 0; }
  int size() const { return __builtin_popcount(mask_); }
  std::uint32_t mask() const { return mask_; }
  std::vector<int> elements() const;
  bool disjoint_from(SimpleSet o) const { return (mask_ & o.mask_) == 0; }
  bool subset_of(SimpleSet o) const { return (mask_ & ~o.mask_) == 0; }

  friend SimpleSet operator|(SimpleSet a, SimpleSet b) { return SimpleSet(a.mask_ | b.mask_); }
  friend SimpleSet operator&(SimpleSet a, SimpleSet b) { return SimpleSet(a.mask_ & b.mask_); }
  friend bool operator==(SimpleSet, SimpleSet) = default;

  /// "{1,3}"; the empty set renders as "{}".
  std::string to_string() const;

private:
  std::uint32_t mask_ = 0;
};

/// An element of S_n in one-line notation, w(k) = window[k-1].
///
/// Products compose right to left: (u*v)(k) = u(v(k)). With this convention
/// w*s_i swaps the entries in positions i and i+1 of w, and s_i*w swaps the
/// values i and i+1.
class Permutation {
public:
  /// Identity of S_1.
  Permutation() : Permutation(1) {}
  /// Identity of S_n. Throws std::invalid_argument unless 1 <= n <= kMaxRank.
  explicit Permutation(int n);

  /// Throws std::invalid_argument unless window is a bijection of {1..n}.
  static Permutation from_window(std::span<const int> window);
  static Permutation from_window(std::initializer_list<int> window) {
    return from_window(std::span<const int>(window.begin(), window.size()));
  }
  /// Product s_{word[0]} * s_{word[1]} * ... in S_n.
  static Permutation from_word(int n, std::span<const int> word);
  static Permutation from_word(int n, std::initializer_list<int> word) {
    return from_word(n, std::span<const int>(word.begin(), word.size()));
  }
  static Permutation simple(int n, int i);
  static Permutation longest(int n);

  int rank() const { return n_; }
  /// w(k) for 1 <= k <= n.
  int operator()(int k) const { return w_[k - 1]; }
  std::vector<int> window() const;

  Permutation inverse() const;
  int length() const;
  bool is_identity() const;
  /// l(w s_i) < l(w).
  bool right_descent(int i) const { return w_[i - 1] > w_[i]; }
  /// l(s_i w) < l(w).
  bool left_descent(int i) const;

  /// Lehmer-code rank in [0, n!).
  std::uint32_t lehmer_rank() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::uint8_t n_ = 1;
  std::array<std::uint8_t, kMaxRank> w_{};
};

/// The fixed total order on W: by length, then lexicographic one-line.
struct WOrder {
  bool operator()(const Permutation& a, const Permutation& b) const;
};

/// Group product (u*v)(k) = u(v(k)). Throws std::invalid_argument on rank mismatch.
Permutation compose(const Permutation& u, const Permutation& v);
inline Permutation operator*(const Permutation& u, const Permutation& v) { return compose(u, v); }

inline int length(const Permutation& w) { return w.length(); }

/// Lexicographically smallest reduced word (indices of simple reflections).
std::vector<int> reduced_word(const Permutation& w);

SimpleSet support(const Permutation& w);

/// Strong Bruhat order via the rank-matrix criterion.
bool bruhat_leq(const Permutation& u, const Permutation& v);

enum class Twist { Trivial, ConjByW0 };

/// delta(w): w itself, or w0 * w * w0.
Permutation apply_twist(Twist t, const Permutation& w);

/// Union of supp(delta^k(w)) over all k >= 0.
SimpleSet twisted_support_closure(Twist t, const Permutation& w);

/// |W_I| for the standard parabolic subgroup generated by I.
Integer parabolic_order(SimpleSet I, int n);

struct CosetData {
  SimpleSet subsetI;
  /// Minimal-length representatives of the left cosets wW_I, in W order.
  std::vector<Permutation> minRepresentatives;
  /// Sum of q^l(rep) over the representatives.
  QPoly poincare;
};

/// Throws std::invalid_argument if I contains an index outside 1..n-1.
CosetData coset_data(SimpleSet I, int n);

/// Poincare polynomial of S_n, sum of q^l(w).
QPoly poincare_polynomial(int n);

/// All n! elements sorted by WOrder. The reference stays valid for the
/// lifetime of the program.
const std::vector<Permutation>& all_elements(int n);

/// Position of w in all_elements(w.rank()).
std::size_t w_order_index(const Permutation& w);

/// Canonical text form: lex-min reduced word "s1 s2", or "id".
std::string to_string(const Permutation& w);
/// One-line form "2,3,1".
std::string to_one_line(const Permutation& w);

/// Accepts one-line ("2,3,1", optional brackets) or word form ("s1 s2",
/// "s1*s2", "s1s2", "id"). Throws std::invalid_argument on malformed input
/// or when the text does not describe an element of S_n.
Permutation parse_permutation(std::string_view text, int n);

std::string to_string(Twist t);
/// "trivial" or "w0" (also "conj-w0").
Twist parse_twist(std::string_view text);

} // namespace dlchow

template <>
struct std::hash<dlchow::Permutation> {
  std::size_t operator()(const dlchow::Permutation& w) const noexcept {
    return (static_cast<std::size_t>(w.rank()) << 32U) ^ w.lehmer_rank();
  }
};

#endif // DLCHOW_PERMUTATION_HPP
