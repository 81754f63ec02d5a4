#include "dlchow/multipoly.hpp"

#include "dlchow/expr_parser.hpp"

namespace dlchow {

std::string Var::to_string() const {
  switch (bank) {
  case Bank::X: return "x" + std::to_string(index);
  case Bank::Y: return "y" + std::to_string(index);
  case Bank::Q: return "q";
  }
  return "?";
}

void Monomial::set_exponent(Var v, int e) {
  if (e < 0 || e > 255) throw std::overflow_error("exponent " + std::to_string(e) + " out of range for " + v.to_string());
  if (v.bank == Bank::Q) {
    q_ = static_cast<std::uint8_t>(e);
    return;
  }
  if (v.index < 1 || v.index > kBankSize) throw std::out_of_range("variable index out of range: " + v.to_string());
  std::uint64_t& word = v.bank == Bank::X ? x_ : y_;
  const int s = shift(v.index);
  word = (word & ~(std::uint64_t{0xFF} << s)) | (static_cast<std::uint64_t>(e) << s);
}

int Monomial::degree(Bank b) const {
  if (b == Bank::Q) return q_;
  std::uint64_t word = b == Bank::X ? x_ : y_;
  int d = 0;
  for (; word; word >>= 8U) d += static_cast<int>(word & 0xFFU);
  return d;
}

std::string Monomial::to_string() const {
  std::string out;
  auto emit = [&](Var v) {
    int e = exponent(v);
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += v.to_string();
    if (e != 1) out += '^' + std::to_string(e);
  };
  for (int i = 1; i <= kBankSize; ++i) emit(xvar(i));
  for (int i = 1; i <= kBankSize; ++i) emit(yvar(i));
  emit(qvar());
  return out.empty() ? "1" : out;
}

namespace {

std::vector<Var> variables_of(const Monomial& m) {
  std::vector<Var> vars;
  for (int i = 1; i <= kBankSize; ++i) {
    if (m.exponent(xvar(i))) vars.push_back(xvar(i));
    if (m.exponent(yvar(i))) vars.push_back(yvar(i));
  }
  if (m.exponent(qvar())) vars.push_back(qvar());
  return vars;
}

} // namespace

MultiPoly substitute(const MultiPoly& p, const Substitution& assignment, MissingVar missing) {
  // Monomial images (a single term) are the common case and compose by
  // exponent arithmetic; anything else goes through cached powers.
  std::map<std::pair<Var, int>, MultiPoly> power_cache;
  auto image_power = [&](Var v, int e) -> const MultiPoly& {
    auto key = std::make_pair(v, e);
    if (auto it = power_cache.find(key); it != power_cache.end()) return it->second;
    auto img = assignment.find(v);
    MultiPoly base;
    if (img != assignment.end()) {
      base = img->second;
    } else if (missing == MissingVar::KeepAsIs) {
      base = MultiPoly::variable(v);
    } else {
      throw std::invalid_argument("substitution has no assignment for " + v.to_string());
    }
    return power_cache.emplace(key, base.pow(static_cast<unsigned>(e))).first->second;
  };

  MultiPoly::Accumulator acc(p.size());
  for (const auto& [m, c] : p.terms()) {
    MultiPoly term(c);
    for (Var v : variables_of(m)) term *= image_power(v, m.exponent(v));
    for (const auto& [tm, tc] : term.terms()) acc.add(tm, tc);
  }
  return acc.finish();
}

MultiPoly divided_difference(int i, const MultiPoly& f, Bank bank) {
  if (bank == Bank::Q) throw std::invalid_argument("divided differences act on the x or y bank");
  if (i < 1 || i >= kBankSize) throw std::invalid_argument("divided difference index out of range: " + std::to_string(i));
  const Var vi{bank, i}, vj{bank, i + 1};
  MultiPoly::Accumulator acc(f.size() * 2);
  for (const auto& [m, c] : f.terms()) {
    const int a = m.exponent(vi), b = m.exponent(vj);
    if (a == b) continue;
    // (v_i^a v_j^b - v_i^b v_j^a)/(v_i - v_j), expanded as a geometric sum.
    const int hi = std::max(a, b), lo = std::min(a, b);
    Monomial base = m;
    for (int k = 0; k < hi - lo; ++k) {
      base.set_exponent(vi, hi - 1 - k);
      base.set_exponent(vj, lo + k);
      if (a > b) acc.add(base, c);
      else acc.add_negated(base, c);
    }
  }
  return acc.finish();
}

QPoly to_qpoly(const MultiPoly& p) {
  std::vector<QPoly::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    if (m.has_bank(Bank::X) || m.has_bank(Bank::Y))
      throw std::invalid_argument("polynomial is not univariate in q: " + p.to_string());
    terms.push_back({m.exponent(qvar()), c});
  }
  return QPoly::from_terms(std::move(terms));
}

MultiPoly from_qpoly(const QPoly& p) {
  std::vector<MultiPoly::Term> terms;
  for (const auto& t : p.terms()) {
    if (t.exp < 0) throw std::invalid_argument("negative exponent in q-polynomial");
    terms.emplace_back(Monomial::of(qvar(), t.exp), t.coeff);
  }
  return MultiPoly::from_terms(std::move(terms));
}

namespace {

int parse_index(const std::string& name, std::size_t from) {
  if (from >= name.size()) throw std::invalid_argument("missing variable index in '" + name + "'");
  for (std::size_t k = from; k < name.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(name[k]))) throw std::invalid_argument("unknown identifier '" + name + "'");
  int idx = std::stoi(name.substr(from));
  if (idx < 1 || idx > kBankSize) throw std::invalid_argument("variable index out of range in '" + name + "'");
  return idx;
}

struct MultiPolyOps {
  MultiPoly constant(const Integer& v) { return MultiPoly(Rational(v)); }
  MultiPoly identifier(const std::string& name) {
    if (name == "q") return MultiPoly::variable(qvar());
    if (name.size() > 1 && name[0] == 'x') return MultiPoly::variable(xvar(parse_index(name, 1)));
    if (name.size() > 1 && name[0] == 'y') return MultiPoly::variable(yvar(parse_index(name, 1)));
    throw std::invalid_argument("unknown identifier '" + name + "'");
  }
  MultiPoly bracket(const std::string& name, const std::string&) {
    throw std::invalid_argument("unexpected bracket after '" + name + "'");
  }
  MultiPoly power(const MultiPoly& v, int e) {
    if (e < 0) throw std::invalid_argument("negative exponent in polynomial");
    return v.pow(static_cast<unsigned>(e));
  }
  MultiPoly divide(const MultiPoly& v, const Integer& d) { return v.scaled(Rational(1, d)); }
};

template <class C>
struct UniOps {
  using P = UniPoly<C>;
  std::string_view var;
  bool allow_negative;
  P constant(const Integer& v) { return P(C(v)); }
  P identifier(const std::string& name) {
    if (name == var) return P::var();
    throw std::invalid_argument("unknown identifier '" + name + "'");
  }
  P bracket(const std::string& name, const std::string&) {
    throw std::invalid_argument("unexpected bracket after '" + name + "'");
  }
  P power(const P& v, int e) {
    if (e >= 0) return v.pow(static_cast<unsigned>(e));
    // only monomials are invertible
    if (!allow_negative || v.terms().size() != 1 || (v.terms()[0].coeff != C(1) && v.terms()[0].coeff != C(-1)))
      throw std::invalid_argument("negative power of a non-unit");
    const auto& t = v.terms()[0];
    // (c x^k)^-m = c^m x^(-k m) for c = +-1
    return P::monomial(((-e) % 2 == 0) ? C(1) : t.coeff, t.exp * e);
  }
  P divide(const P& v, const Integer& d) {
    if constexpr (std::is_same_v<C, Rational>) {
      return v.scaled(Rational(1, d));
    } else {
      for (const auto& t : v.terms())
        if (t.coeff % d != 0) throw std::invalid_argument("non-integral division in integer polynomial");
      std::vector<typename P::Term> terms;
      for (const auto& t : v.terms()) terms.push_back({t.exp, C(t.coeff / d)});
      return P::from_terms(std::move(terms));
    }
  }
};

} // namespace

MultiPoly parse_multipoly(std::string_view text) {
  MultiPolyOps ops;
  return ExprParser<MultiPoly, MultiPolyOps>(text, ops).parse();
}

QPoly parse_qpoly(std::string_view text, std::string_view var) {
  UniOps<Rational> ops{var, false};
  return ExprParser<QPoly, UniOps<Rational>>(text, ops).parse();
}

LaurentPoly parse_laurent(std::string_view text, std::string_view var) {
  UniOps<Integer> ops{var, true};
  return ExprParser<LaurentPoly, UniOps<Integer>>(text, ops).parse();
}

} // namespace dlchow
