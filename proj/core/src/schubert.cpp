#include "dlchow/schubert.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "dlchow/structure_cache.hpp"

namespace dlchow {

SchubertVector::SchubertVector(int n, SchubertLabel labels) : n_(n), labels_(labels) {
  if (n < 1 || n > kMaxRank) throw std::invalid_argument("rank out of range for SchubertVector");
}

QPoly SchubertVector::coeff(const Permutation& w) const {
  auto it = entries_.find(w);
  return it == entries_.end() ? QPoly() : it->second;
}

void SchubertVector::add(const Permutation& w, const QPoly& c) {
  if (w.rank() != n_) throw std::invalid_argument("rank mismatch in SchubertVector::add");
  if (c.is_zero()) return;
  auto [it, inserted] = entries_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) entries_.erase(it);
}

SchubertVector& SchubertVector::operator+=(const SchubertVector& o) {
  if (o.n_ != n_ || o.labels_ != labels_) throw std::invalid_argument("incompatible SchubertVector addition");
  for (const auto& [w, c] : o.entries_) add(w, c);
  return *this;
}

SchubertVector SchubertVector::scaled(const QPoly& c) const {
  SchubertVector r(n_, labels_);
  for (const auto& [w, e] : entries_) r.add(w, e * c);
  return r;
}

SchubertVector SchubertVector::evaluated(const Rational& q) const {
  SchubertVector r(n_, labels_);
  for (const auto& [w, e] : entries_) r.add(w, QPoly(e.eval(q)));
  return r;
}

SchubertVector SchubertVector::relabeled(SchubertLabel target) const {
  if (target == labels_) return *this;
  const Permutation w0 = Permutation::longest(n_);
  SchubertVector r(n_, target);
  for (const auto& [w, e] : entries_) r.add(w0 * w, e);
  return r;
}

std::optional<int> SchubertVector::homogeneous_length() const {
  if (entries_.empty()) return std::nullopt;
  int len = entries_.begin()->first.length();
  for (const auto& [w, e] : entries_)
    if (w.length() != len) return std::nullopt;
  return len;
}

bool SchubertVector::has_integer_coefficients() const {
  for (const auto& [w, e] : entries_)
    for (const auto& t : e.terms())
      if (!t.coeff.is_integer()) return false;
  return true;
}

bool SchubertVector::has_nonnegative_coefficients() const {
  for (const auto& [w, e] : entries_)
    for (const auto& t : e.terms())
      if (t.coeff.sign() < 0) return false;
  return true;
}

std::string SchubertVector::to_string(std::string_view var) const {
  if (entries_.empty()) return "0";
  const std::string open = labels_ == SchubertLabel::Cycle ? "[" : "S[";
  std::string out;
  for (const auto& [w, c] : entries_) {
    std::string basis = open + dlchow::to_string(w) + "]";
    bool single = c.terms().size() == 1;
    bool neg = single && c.terms()[0].coeff.sign() < 0;
    std::string mag = (neg ? -c : c).to_string(var);
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (mag == "1") out += basis;
    else if (single) out += mag + "*" + basis;
    else out += "(" + mag + ")*" + basis;
  }
  return out;
}

MultiPoly staircase(int n) {
  if (n < 1 || n > kMaxRank) throw std::invalid_argument("rank out of range for staircase");
  Monomial m;
  for (int i = 1; i < n; ++i) m.set_exponent(xvar(i), n - i);
  return MultiPoly::term(m, Rational(1));
}

MultiPoly divided_difference_word(const Permutation& w, const MultiPoly& f, Bank bank) {
  auto word = reduced_word(w);
  MultiPoly g = f;
  for (auto it = word.rbegin(); it != word.rend() && !g.is_zero(); ++it) g = divided_difference(*it, g, bank);
  return g;
}

namespace {

struct SchubertTable {
  std::mutex mu;
  std::vector<std::unique_ptr<const MultiPoly>> polys;
};

SchubertTable& schubert_table(int n) {
  static std::array<SchubertTable, kMaxRank + 1> tables;
  static std::array<std::once_flag, kMaxRank + 1> flags;
  std::call_once(flags[n], [n] { tables[n].polys.resize(all_elements(n).size()); });
  return tables[n];
}

} // namespace

const MultiPoly& schubert_poly(const Permutation& w) {
  const int n = w.rank();
  SchubertTable& table = schubert_table(n);
  const std::size_t idx = w_order_index(w);
  {
    std::lock_guard lock(table.mu);
    if (table.polys[idx]) return *table.polys[idx];
  }
  // S_w = del_i S_{w s_i} for an ascent i of w; recursion ends at w0.
  MultiPoly p;
  int ascent = 0;
  for (int i = 1; i < n && ascent == 0; ++i)
    if (!w.right_descent(i)) ascent = i;
  if (ascent == 0) p = staircase(n);
  else p = divided_difference(ascent, schubert_poly(w * Permutation::simple(n, ascent)), Bank::X);
  std::lock_guard lock(table.mu);
  if (!table.polys[idx]) table.polys[idx] = std::make_unique<const MultiPoly>(std::move(p));
  return *table.polys[idx];
}

MultiPoly rename_bank(const MultiPoly& f, Bank from, Bank to) {
  if (from == to) return f;
  if (from == Bank::Q || to == Bank::Q) throw std::invalid_argument("rename_bank works on x and y banks");
  if (f.uses(to)) throw std::invalid_argument("rename_bank target bank is not empty");
  std::vector<MultiPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Monomial r;
    for (int i = 1; i <= kBankSize; ++i) {
      Var src{from, i}, dst{to, i};
      if (int e = m.exponent(src)) r.set_exponent(dst, e);
    }
    r.set_exponent(qvar(), m.exponent(qvar()));
    terms.emplace_back(r, c);
  }
  return MultiPoly::from_terms(std::move(terms));
}

MultiPoly double_schubert_w0(int n, const MultiPoly& y_scale) {
  if (n < 1 || n > kMaxRank) throw std::invalid_argument("rank out of range for double_schubert_w0");
  MultiPoly prod(1);
  for (int i = 1; i < n; ++i)
    for (int j = 1; i + j <= n; ++j)
      prod *= MultiPoly::variable(xvar(i)) - y_scale * MultiPoly::variable(yvar(j));
  return prod;
}

MultiPoly omega_y(const MultiPoly& f, int n) {
  Substitution sub;
  for (int i = 1; i <= n; ++i) sub[yvar(i)] = -MultiPoly::variable(yvar(n - i + 1));
  return substitute(f, sub, MissingVar::KeepAsIs);
}

SchubertVector expand_in_schubert_basis(const MultiPoly& f, int n, Bank bank, ExpandCheck check) {
  if (bank == Bank::Q) throw std::invalid_argument("cannot expand in the q bank");
  const Bank other = bank == Bank::X ? Bank::Y : Bank::X;
  if (f.uses(other)) throw std::invalid_argument("expansion input uses the wrong variable bank: " + f.to_string());
  for (const auto& [m, c] : f.terms())
    for (int i = n + 1; i <= kBankSize; ++i)
      if (m.exponent(Var{bank, i}))
        throw std::invalid_argument("expansion input involves variables beyond rank " + std::to_string(n));

  const auto& elems = all_elements(n);
  SchubertVector result(n, SchubertLabel::Polynomial);
  auto record = [&](std::size_t k, const MultiPoly& g) {
    std::vector<QPoly::Term> terms;
    for (const auto& [m, c] : g.terms())
      if (!m.has_bank(bank)) terms.push_back({m.exponent(qvar()), c});
    if (!terms.empty()) result.add(elems[k], QPoly::from_terms(std::move(terms)));
  };

  // derived[k] = del_w f for w = elems[k], filled one length at a time using
  // del_w = del_i o del_{s_i w} for the smallest left descent i of w. A level
  // is released once the next one is done; a level of zeros ends the sweep.
  std::vector<std::size_t> level_begin{0};
  for (std::size_t k = 1; k < elems.size(); ++k)
    if (elems[k].length() != elems[k - 1].length()) level_begin.push_back(k);
  level_begin.push_back(elems.size());

  std::vector<MultiPoly> derived(elems.size());
  derived[0] = f;
  record(0, f);
  bool any_live = !f.is_zero();
  for (std::size_t lvl = 1; lvl + 1 < level_begin.size() && any_live; ++lvl) {
    any_live = false;
    for (std::size_t k = level_begin[lvl]; k < level_begin[lvl + 1]; ++k) {
      const Permutation& w = elems[k];
      int i = 1;
      while (!w.left_descent(i)) ++i;
      const MultiPoly& src = derived[w_order_index(Permutation::simple(n, i) * w)];
      if (src.is_zero()) continue;
      derived[k] = divided_difference(i, src, bank);
      if (derived[k].is_zero()) continue;
      any_live = true;
      record(k, derived[k]);
    }
    for (std::size_t k = level_begin[lvl - 1]; k < level_begin[lvl]; ++k) derived[k] = MultiPoly();
  }

  if (check == ExpandCheck::Remainder) {
    MultiPoly remainder = f;
    for (const auto& [w, c] : result.entries()) {
      MultiPoly s = bank == Bank::X ? schubert_poly(w) : rename_bank(schubert_poly(w), Bank::X, Bank::Y);
      remainder -= s * from_qpoly(c);
    }
    if (!in_coinvariant_ideal(remainder, n, bank))
      throw std::logic_error("Schubert expansion remainder is not in the coinvariant ideal");
  }
  return result;
}

namespace {

/// Lex order with v_n > v_{n-1} > ... > v_1 on the chosen bank, ties broken
/// by the full monomial order.
struct ReverseBankLex {
  Bank bank;
  bool operator()(const Monomial& a, const Monomial& b) const {
    for (int i = kBankSize; i >= 1; --i) {
      int ea = a.exponent(Var{bank, i}), eb = b.exponent(Var{bank, i});
      if (ea != eb) return ea < eb;
    }
    return a < b;
  }
};

/// h_d(v_1..v_k) as a polynomial in bank b.
MultiPoly complete_homogeneous(int d, int k, Bank b) {
  // h_d(v_1..v_k) = sum_{j=0}^{d} v_k^j h_{d-j}(v_1..v_{k-1})
  std::vector<MultiPoly> prev(d + 1);
  for (int e = 0; e <= d; ++e) prev[e] = e == 0 ? MultiPoly(1) : MultiPoly();
  for (int var = 1; var <= k; ++var) {
    std::vector<MultiPoly> cur(d + 1);
    MultiPoly v = MultiPoly::variable(Var{b, var});
    for (int e = 0; e <= d; ++e) {
      cur[e] = prev[e];
      if (e > 0) cur[e] += v * cur[e - 1];
    }
    prev = std::move(cur);
  }
  return prev[d];
}

} // namespace

MultiPoly reduce_mod_coinvariant_ideal(const MultiPoly& f, int n, Bank bank) {
  if (bank == Bank::Q) throw std::invalid_argument("cannot reduce in the q bank");
  for (const auto& [m, c] : f.terms())
    for (int i = n + 1; i <= kBankSize; ++i)
      if (m.exponent(Var{bank, i})) throw std::invalid_argument("reduction input involves variables beyond rank n");

  // g_k = h_{n-k+1}(v_1..v_k) has leading monomial v_k^{n-k+1}; tails sorted
  // without the leading term.
  std::vector<MultiPoly> tails(n + 1);
  for (int k = 1; k <= n; ++k)
    tails[k] = complete_homogeneous(n - k + 1, k, bank) - MultiPoly::variable(Var{bank, k}).pow(n - k + 1);

  std::map<Monomial, Rational, ReverseBankLex> work(ReverseBankLex{bank});
  for (const auto& [m, c] : f.terms()) work.emplace(m, c);
  std::vector<MultiPoly::Term> normal;
  while (!work.empty()) {
    auto it = std::prev(work.end());
    Monomial m = it->first;
    Rational c = it->second;
    work.erase(it);
    int k = 0;
    for (int i = n; i >= 1 && k == 0; --i)
      if (m.exponent(Var{bank, i}) >= n - i + 1) k = i;
    if (k == 0) {
      normal.emplace_back(m, c);
      continue;
    }
    Monomial rest = m;
    rest.set_exponent(Var{bank, k}, m.exponent(Var{bank, k}) - (n - k + 1));
    // v_k^{n-k+1} = -tail_k modulo the ideal
    for (const auto& [tm, tc] : tails[k].terms()) {
      Monomial nm = rest * tm;
      Rational nc = -(c * tc);
      auto [slot, inserted] = work.try_emplace(nm, nc);
      if (!inserted) {
        slot->second += nc;
        if (slot->second.is_zero()) work.erase(slot);
      }
    }
  }
  return MultiPoly::from_terms(std::move(normal));
}

bool in_coinvariant_ideal(const MultiPoly& f, int n, Bank bank) {
  return reduce_mod_coinvariant_ideal(f, n, bank).is_zero();
}

SchubertVector compute_schubert_product(const Permutation& u, const Permutation& v) {
  if (u.rank() != v.rank()) throw std::invalid_argument("rank mismatch in schubert_product");
  SchubertVector r = expand_in_schubert_basis(schubert_poly(u) * schubert_poly(v), u.rank());
  if (!r.has_integer_coefficients() || !r.has_nonnegative_coefficients())
    throw std::logic_error("structure constants must be nonnegative integers");
  return r;
}

SchubertVector schubert_product(const Permutation& u, const Permutation& v) {
  if (u.rank() != v.rank()) throw std::invalid_argument("rank mismatch in schubert_product");
  const int n = u.rank();
  SchubertVector r(n, SchubertLabel::Polynomial);
  if (u.is_identity() || v.is_identity()) {
    r.add(u.is_identity() ? v : u, QPoly(1));
    return r;
  }
  if (u.length() + v.length() > Permutation::longest(n).length()) return r;
  StructureCache& cache = CacheRegistry::instance().cache(u.rank());
  if (auto hit = cache.lookup(u, v)) return *std::move(hit);
  r = compute_schubert_product(u, v);
  cache.insert(u, v, r);
  return r;
}

} // namespace dlchow
