#include "dlchow/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace dlchow {

std::vector<int> SimpleSet::elements() const {
  std::vector<int> out;
  for (int i = 1; i < 32; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string SimpleSet::to_string() const {
  std::string out = "{";
  for (int i : elements()) {
    if (out.size() > 1) out += ",";
    out += std::to_string(i);
  }
  return out + "}";
}

namespace {

void check_rank(int n) {
  if (n < 1 || n > kMaxRank)
    throw std::invalid_argument("rank n=" + std::to_string(n) + " outside supported range 1.." +
                                std::to_string(kMaxRank));
}

void check_same_rank(const Permutation& u, const Permutation& v) {
  if (u.rank() != v.rank())
    throw std::invalid_argument("rank mismatch: S_" + std::to_string(u.rank()) + " vs S_" +
                                std::to_string(v.rank()));
}

struct GroupTable {
  std::vector<Permutation> elements;
  std::vector<std::uint32_t> lehmer_to_index;
};

GroupTable build_table(int n) {
  GroupTable t;
  std::vector<int> window(n);
  for (int i = 0; i < n; ++i) window[i] = i + 1;
  do {
    t.elements.push_back(Permutation::from_window(window));
  } while (std::next_permutation(window.begin(), window.end()));
  std::stable_sort(t.elements.begin(), t.elements.end(), WOrder{});
  t.lehmer_to_index.resize(t.elements.size());
  for (std::size_t i = 0; i < t.elements.size(); ++i) t.lehmer_to_index[t.elements[i].lehmer_rank()] = i;
  return t;
}

const GroupTable& group_table(int n) {
  check_rank(n);
  static std::array<std::once_flag, kMaxRank + 1> flags;
  // Never destroyed: caches compacting from static destructors still need them.
  static auto* tables = new std::array<std::unique_ptr<GroupTable>, kMaxRank + 1>;
  std::call_once(flags[n], [n] { (*tables)[n] = std::make_unique<GroupTable>(build_table(n)); });
  return *(*tables)[n];
}

} // namespace

Permutation::Permutation(int n) {
  check_rank(n);
  n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) w_[i] = static_cast<std::uint8_t>(i + 1);
}

Permutation Permutation::from_window(std::span<const int> window) {
  const int n = static_cast<int>(window.size());
  check_rank(n);
  Permutation w(n);
  std::array<bool, kMaxRank + 1> seen{};
  for (int i = 0; i < n; ++i) {
    int v = window[i];
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("window is not a permutation of 1.." + std::to_string(n));
    seen[v] = true;
    w.w_[i] = static_cast<std::uint8_t>(v);
  }
  return w;
}

Permutation Permutation::simple(int n, int i) {
  Permutation w(n);
  if (i < 1 || i >= n)
    throw std::invalid_argument("simple reflection s" + std::to_string(i) + " not in S_" + std::to_string(n));
  std::swap(w.w_[i - 1], w.w_[i]);
  return w;
}

Permutation Permutation::from_word(int n, std::span<const int> word) {
  Permutation w(n);
  for (int i : word) {
    if (i < 1 || i >= n)
      throw std::invalid_argument("simple reflection s" + std::to_string(i) + " not in S_" + std::to_string(n));
    std::swap(w.w_[i - 1], w.w_[i]);
  }
  return w;
}

Permutation Permutation::longest(int n) {
  Permutation w(n);
  for (int i = 0; i < n; ++i) w.w_[i] = static_cast<std::uint8_t>(n - i);
  return w;
}

std::vector<int> Permutation::window() const { return {w_.begin(), w_.begin() + n_}; }

Permutation Permutation::inverse() const {
  Permutation r(n_);
  for (int i = 0; i < n_; ++i) r.w_[w_[i] - 1] = static_cast<std::uint8_t>(i + 1);
  return r;
}

int Permutation::length() const {
  int inv = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) inv += w_[i] > w_[j];
  return inv;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < n_; ++i)
    if (w_[i] != i + 1) return false;
  return true;
}

bool Permutation::left_descent(int i) const {
  int pos_i = 0, pos_next = 0;
  for (int k = 0; k < n_; ++k) {
    if (w_[k] == i) pos_i = k;
    if (w_[k] == i + 1) pos_next = k;
  }
  return pos_next < pos_i;
}

std::uint32_t Permutation::lehmer_rank() const {
  std::uint32_t rank = 0;
  for (int i = 0; i < n_; ++i) {
    std::uint32_t smaller = 0;
    for (int j = i + 1; j < n_; ++j) smaller += w_[j] < w_[i];
    rank = rank * static_cast<std::uint32_t>(n_ - i) + smaller;
  }
  return rank;
}

bool WOrder::operator()(const Permutation& a, const Permutation& b) const {
  int la = a.length(), lb = b.length();
  if (la != lb) return la < lb;
  return a < b;
}

Permutation compose(const Permutation& u, const Permutation& v) {
  check_same_rank(u, v);
  std::vector<int> out(u.rank());
  for (int k = 1; k <= u.rank(); ++k) out[k - 1] = u(v(k));
  return Permutation::from_window(out);
}

std::vector<int> reduced_word(const Permutation& w) {
  std::vector<int> word;
  Permutation cur = w;
  const int n = w.rank();
  // Any left descent can begin a reduced word, so greedily taking the
  // smallest one yields the lexicographically smallest word.
  while (!cur.is_identity()) {
    for (int i = 1; i < n; ++i) {
      if (cur.left_descent(i)) {
        word.push_back(i);
        cur = Permutation::simple(n, i) * cur;
        break;
      }
    }
  }
  return word;
}

SimpleSet support(const Permutation& w) {
  // s_i is in the support iff w does not preserve {1..i}.
  SimpleSet s;
  int running_max = 0;
  for (int i = 1; i < w.rank(); ++i) {
    running_max = std::max(running_max, w(i));
    if (running_max > i) s.insert(i);
  }
  return s;
}

bool bruhat_leq(const Permutation& u, const Permutation& v) {
  check_same_rank(u, v);
  const int n = u.rank();
  std::array<int, kMaxRank + 2> cu{}, cv{};
  for (int i = 1; i <= n; ++i) {
    // c[j] = #{a <= i : w(a) >= j}
    for (int j = 1; j <= u(i); ++j) ++cu[j];
    for (int j = 1; j <= v(i); ++j) ++cv[j];
    for (int j = 1; j <= n; ++j)
      if (cu[j] > cv[j]) return false;
  }
  return true;
}

Permutation apply_twist(Twist t, const Permutation& w) {
  if (t == Twist::Trivial) return w;
  const Permutation w0 = Permutation::longest(w.rank());
  return w0 * w * w0;
}

SimpleSet twisted_support_closure(Twist t, const Permutation& w) {
  SimpleSet acc;
  Permutation cur = w;
  // delta has order at most 2.
  for (int k = 0; k < 2; ++k) {
    acc = acc | support(cur);
    cur = apply_twist(t, cur);
  }
  return acc;
}

Integer parabolic_order(SimpleSet I, int n) {
  check_rank(n);
  Integer order = 1;
  int run = 0;
  for (int i = 1; i <= n; ++i) {
    if (i < n && I.contains(i)) {
      ++run;
    } else {
      order *= factorial(run + 1);
      run = 0;
    }
  }
  return order;
}

CosetData coset_data(SimpleSet I, int n) {
  check_rank(n);
  if (!I.subset_of(SimpleSet::all(n)))
    throw std::invalid_argument("subset " + I.to_string() + " is not a set of simple indices of S_" + std::to_string(n));
  CosetData data{I, {}, {}};
  std::vector<QPoly::Term> terms;
  for (const auto& w : all_elements(n)) {
    bool reduced = true;
    for (int i : I.elements()) reduced = reduced && !w.right_descent(i);
    if (!reduced) continue;
    data.minRepresentatives.push_back(w);
    terms.push_back({w.length(), Rational(1)});
  }
  data.poincare = QPoly::from_terms(std::move(terms));
  return data;
}

QPoly poincare_polynomial(int n) { return coset_data(SimpleSet{}, n).poincare; }

const std::vector<Permutation>& all_elements(int n) { return group_table(n).elements; }

std::size_t w_order_index(const Permutation& w) { return group_table(w.rank()).lehmer_to_index[w.lehmer_rank()]; }

std::string to_string(const Permutation& w) {
  auto word = reduced_word(w);
  if (word.empty()) return "id";
  std::string out;
  for (int i : word) {
    if (!out.empty()) out += ' ';
    out += 's' + std::to_string(i);
  }
  return out;
}

std::string to_one_line(const Permutation& w) {
  std::string out;
  for (int k = 1; k <= w.rank(); ++k) {
    if (k > 1) out += ',';
    out += std::to_string(w(k));
  }
  return out;
}

Permutation parse_permutation(std::string_view text, int n) {
  check_rank(n);
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("cannot parse permutation '" + std::string(text) + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "id" || s == "e" || s == "1") return Permutation(n);

  if (s.find('s') != std::string::npos) {
    // word form: s<int> tokens, optionally separated by '*' or blanks
    std::vector<int> word;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] == '*') {
        ++i;
        continue;
      }
      if (s[i] != 's') throw fail("expected 's' at offset " + std::to_string(i));
      ++i;
      std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i) throw fail("missing index after 's'");
      // s1s2 is ambiguous only past s9, which exceeds kMaxRank anyway.
      word.push_back(std::stoi(s.substr(start, i - start)));
    }
    for (int k : word)
      if (k < 1 || k >= n) throw fail("s" + std::to_string(k) + " is not a simple reflection of S_" + std::to_string(n));
    return Permutation::from_word(n, word);
  }

  if (s.front() == '[' || s.front() == '(') s.erase(s.begin());
  if (!s.empty() && (s.back() == ']' || s.back() == ')')) s.pop_back();
  std::vector<int> window;
  if (s.find(',') == std::string::npos && static_cast<int>(s.size()) == n && n > 1 &&
      std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    // compact one-line form "231"
    for (char c : s) window.push_back(c - '0');
    s.clear();
  }
  std::size_t i = 0;
  while (!s.empty() && i <= s.size()) {
    std::size_t comma = s.find(',', i);
    if (comma == std::string::npos) comma = s.size();
    std::string tok = s.substr(i, comma - i);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw fail("malformed one-line entry '" + tok + "'");
    window.push_back(std::stoi(tok));
    i = comma + 1;
  }
  if (static_cast<int>(window.size()) != n)
    throw fail("one-line form has " + std::to_string(window.size()) + " entries, expected " + std::to_string(n));
  try {
    return Permutation::from_window(window);
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
}

std::string to_string(Twist t) { return t == Twist::Trivial ? "trivial" : "w0"; }

Twist parse_twist(std::string_view text) {
  if (text == "trivial" || text == "id") return Twist::Trivial;
  if (text == "w0" || text == "conj-w0") return Twist::ConjByW0;
  throw std::invalid_argument("unknown twist '" + std::string(text) + "' (expected trivial or w0)");
}

} // namespace dlchow
