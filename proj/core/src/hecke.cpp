#include "dlchow/hecke.hpp"

#include <stdexcept>

#include "dlchow/expr_parser.hpp"

namespace dlchow {

namespace {

const LaurentPoly& x_poly() {
  static const LaurentPoly x = LaurentPoly::var();
  return x;
}

const LaurentPoly& x_inv() {
  static const LaurentPoly xi = LaurentPoly::monomial(Integer(1), -1);
  return xi;
}

} // namespace

HeckeElement::HeckeElement(int n) : n_(n) {
  if (n < 1 || n > kMaxRank) throw std::invalid_argument("rank out of range for HeckeElement");
}

HeckeElement::HeckeElement(int n, const LaurentPoly& c) : HeckeElement(n) { add(Permutation(n), c); }

HeckeElement HeckeElement::basis(const Permutation& w) {
  HeckeElement h(w.rank());
  h.coords_.emplace(w, LaurentPoly(1));
  return h;
}

LaurentPoly HeckeElement::coeff(const Permutation& w) const {
  auto it = coords_.find(w);
  return it == coords_.end() ? LaurentPoly() : it->second;
}

void HeckeElement::add(const Permutation& w, const LaurentPoly& c) {
  if (w.rank() != n_) throw std::invalid_argument("rank mismatch in HeckeElement::add");
  if (c.is_zero()) return;
  auto [it, inserted] = coords_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) coords_.erase(it);
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  if (o.n_ != n_) throw std::invalid_argument("rank mismatch in Hecke addition");
  for (const auto& [w, c] : o.coords_) add(w, c);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
  if (o.n_ != n_) throw std::invalid_argument("rank mismatch in Hecke subtraction");
  for (const auto& [w, c] : o.coords_) add(w, -c);
  return *this;
}

HeckeElement HeckeElement::scaled(const LaurentPoly& c) const {
  HeckeElement r(n_);
  if (c.is_zero()) return r;
  for (const auto& [w, e] : coords_) r.coords_.emplace(w, e * c);
  return r;
}

HeckeElement HeckeElement::times_simple(int i) const {
  if (i < 1 || i >= n_) throw std::invalid_argument("simple reflection index out of range");
  const Permutation s = Permutation::simple(n_, i);
  HeckeElement r(n_);
  for (const auto& [w, c] : coords_) {
    Permutation ws = w * s;
    if (!w.right_descent(i)) {
      r.add(ws, c);
    } else {
      r.add(ws, c * x_poly());
      r.add(w, c * (x_poly() - LaurentPoly(1)));
    }
  }
  return r;
}

HeckeElement HeckeElement::times_simple_inverse(int i) const {
  HeckeElement r = times_simple(i).scaled(x_inv());
  r += scaled(x_inv() - LaurentPoly(1));
  return r;
}

std::string HeckeElement::to_string(std::string_view var) const {
  if (coords_.empty()) return "0";
  std::string out;
  for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) {
    const LaurentPoly& c = it->second;
    std::string basis = "T[" + dlchow::to_string(it->first) + "]";
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

HeckeElement t_mul(const HeckeElement& a, const HeckeElement& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("rank mismatch in Hecke product");
  HeckeElement r(a.rank());
  for (const auto& [w, c] : b.coords()) {
    HeckeElement part = a;
    for (int i : reduced_word(w)) part = part.times_simple(i);
    r += part.scaled(c);
  }
  return r;
}

HeckeElement t_inverse(const Permutation& w) {
  // (T_{a1} ... T_{ar})^-1 = T_{ar}^-1 ... T_{a1}^-1
  auto word = reduced_word(w);
  HeckeElement r = HeckeElement::basis(Permutation(w.rank()));
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = r.times_simple_inverse(*it);
  return r;
}

LaurentPoly r_polynomial(const Permutation& w) {
  LaurentPoly c = t_inverse(w.inverse()).coeff(Permutation(w.rank()));
  LaurentPoly r = c * LaurentPoly::monomial(Integer(w.length() % 2 == 0 ? 1 : -1), w.length());
  if (r.has_negative_exponents()) throw std::logic_error("R-polynomial has negative exponents");
  return r;
}

LaurentPoly f_coefficient(const Permutation& w, const Permutation& w_prime) {
  if (w.rank() != w_prime.rank()) throw std::invalid_argument("rank mismatch in f_coefficient");
  const Permutation target = w_prime.inverse();
  return t_mul(HeckeElement::basis(w), HeckeElement::basis(target)).coeff(target);
}

LaurentPoly f_w(const Permutation& w) {
  LaurentPoly sum;
  for (const auto& wp : all_elements(w.rank())) sum += f_coefficient(w, wp);
  return sum;
}

namespace {

struct HeckeOps {
  int n;
  HeckeElement constant(const Integer& v) { return HeckeElement(n, LaurentPoly(v)); }
  HeckeElement identifier(const std::string& name) {
    if (name == "x") return HeckeElement(n, LaurentPoly::var());
    throw std::invalid_argument("unknown identifier '" + name + "'");
  }
  HeckeElement bracket(const std::string& name, const std::string& raw) {
    if (name != "T") throw std::invalid_argument("unknown basis symbol '" + name + "'");
    return HeckeElement::basis(parse_permutation(raw, n));
  }
  HeckeElement power(const HeckeElement& v, int e) {
    HeckeElement base = v;
    if (e < 0) {
      // units of the form c * x^k * T_w with c = +-1
      if (v.coords().size() != 1) throw std::invalid_argument("negative power of a non-unit");
      const auto& [w, c] = *v.coords().begin();
      if (c.terms().size() != 1 || (c.terms()[0].coeff != 1 && c.terms()[0].coeff != -1))
        throw std::invalid_argument("negative power of a non-unit");
      LaurentPoly cinv = LaurentPoly::monomial(c.terms()[0].coeff, -c.terms()[0].exp);
      base = t_inverse(w).scaled(cinv);
      e = -e;
    }
    HeckeElement r(n, LaurentPoly(1));
    for (int k = 0; k < e; ++k) r = t_mul(r, base);
    return r;
  }
  HeckeElement divide(const HeckeElement& v, const Integer& d) {
    HeckeElement r(n);
    for (const auto& [w, c] : v.coords()) {
      std::vector<LaurentPoly::Term> terms;
      for (const auto& t : c.terms()) {
        if (t.coeff % d != 0) throw std::invalid_argument("non-integral division in Hecke algebra");
        terms.push_back({t.exp, Integer(t.coeff / d)});
      }
      r.add(w, LaurentPoly::from_terms(std::move(terms)));
    }
    return r;
  }
};

} // namespace

HeckeElement parse_hecke(std::string_view text, int n) {
  HeckeOps ops{n};
  return ExprParser<HeckeElement, HeckeOps>(text, ops).parse();
}

} // namespace dlchow
