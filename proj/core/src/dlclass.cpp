#include "dlchow/dlclass.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace dlchow {

std::vector<AdmissiblePair> admissible_pairs(const Permutation& w, Twist twist) {
  const int n = w.rank();
  const Permutation w0 = Permutation::longest(n);
  const Permutation w_inv = w.inverse();
  const int budget = w0.length() - w.length();
  std::vector<AdmissiblePair> pairs;
  for (const auto& v : all_elements(n)) {
    if (v.length() > budget) break;
    Permutation u = w0 * apply_twist(twist, v) * w_inv;
    if (u.length() + v.length() == budget) pairs.push_back({u, v});
  }
  return pairs;
}

SchubertVector class_X(const Permutation& w, Twist twist) {
  const int n = w.rank();
  SchubertVector sum(n, SchubertLabel::Polynomial);
  for (const auto& [u, v] : admissible_pairs(w, twist))
    sum += schubert_product(u, v).scaled(QPoly::monomial(Rational(1), v.length()));
  SchubertVector cls = sum.relabeled(SchubertLabel::Cycle);
  if (cls.homogeneous_length() != w.length() || !cls.has_integer_coefficients() || !cls.has_nonnegative_coefficients())
    throw std::logic_error("class of X(" + to_string(w) + ") violates homogeneity or positivity");
  return cls;
}

SchubertVector class_Y_ss(const Permutation& w) { return class_X(w, Twist::Trivial).evaluated(Rational(1)); }

SchubertVector class_Y_unip(const Permutation& w) {
  const int n = w.rank();
  Rational scale(parabolic_order(support(w), n), factorial(n));
  return class_Y_ss(w).scaled(QPoly(scale));
}

SchubertVector class_via_divided_diff(const Permutation& w, Twist twist, ExpandCheck check) {
  const int n = w.rank();
  MultiPoly g = divided_difference_word(w, double_schubert_w0(n, -MultiPoly::variable(qvar())), Bank::X);
  if (twist == Twist::Trivial) g = omega_y(g, n);
  Substitution to_x;
  for (int i = 1; i <= n; ++i) to_x[yvar(i)] = MultiPoly::variable(xvar(i));
  g = substitute(g, to_x, MissingVar::KeepAsIs);
  return expand_in_schubert_basis(g, n, Bank::X, check).relabeled(SchubertLabel::Cycle);
}

QPoly components_X(const Permutation& w, Twist twist) {
  const int n = w.rank();
  CosetData data = coset_data(twisted_support_closure(twist, w), n);
  if (twist == Twist::Trivial) return data.poincare;
  // F-stable parabolics of type I: cells B v P_I with v fixed by the twist
  std::vector<QPoly::Term> terms;
  for (const auto& v : data.minRepresentatives)
    if (apply_twist(twist, v) == v) terms.push_back({v.length(), Rational(1)});
  return QPoly::from_terms(std::move(terms));
}

Integer components_Y_ss(const Permutation& w) {
  const int n = w.rank();
  return factorial(n) / parabolic_order(support(w), n);
}

ClassReport make_class_report(const Permutation& w, Twist twist, ClassKind kind, ClassPath path) {
  if (kind != ClassKind::DLFrobenius && twist != Twist::Trivial)
    throw std::invalid_argument("the twist only applies to Deligne-Lusztig classes");
  if (kind != ClassKind::DLFrobenius && path != ClassPath::PairEnumeration)
    throw std::invalid_argument("the divided-difference path only applies to Deligne-Lusztig classes");
  ClassReport r{w, twist, kind, SchubertVector(w.rank(), SchubertLabel::Cycle), path, QPoly()};
  switch (kind) {
  case ClassKind::DLFrobenius:
    r.vector = path == ClassPath::PairEnumeration ? class_X(w, twist) : class_via_divided_diff(w, twist);
    r.components = components_X(w, twist);
    break;
  case ClassKind::RegSemisimple:
    r.vector = class_Y_ss(w);
    r.components = QPoly(Rational(components_Y_ss(w)));
    break;
  case ClassKind::RegUnipotent:
    r.vector = class_Y_unip(w);
    r.components = QPoly(1);
    break;
  }
  return r;
}

ClassReport evaluated(const ClassReport& r, const Rational& q) {
  ClassReport e = r;
  e.vector = r.vector.evaluated(q);
  e.components = QPoly(r.components.eval(q));
  return e;
}

std::string to_string(ClassKind k) {
  switch (k) {
  case ClassKind::DLFrobenius: return "dl";
  case ClassKind::RegSemisimple: return "ss";
  case ClassKind::RegUnipotent: return "unip";
  }
  return "?";
}

ClassKind parse_class_kind(std::string_view text) {
  if (text == "dl") return ClassKind::DLFrobenius;
  if (text == "ss") return ClassKind::RegSemisimple;
  if (text == "unip") return ClassKind::RegUnipotent;
  throw std::invalid_argument("unknown class kind '" + std::string(text) + "'");
}

std::string to_string(ClassPath p) { return p == ClassPath::PairEnumeration ? "pairs" : "divided-difference"; }

ClassPath parse_class_path(std::string_view text) {
  if (text == "pairs") return ClassPath::PairEnumeration;
  if (text == "divided-difference") return ClassPath::DividedDifference;
  throw std::invalid_argument("unknown class path '" + std::string(text) + "'");
}

std::string to_json(const ClassReport& r) {
  using nlohmann::ordered_json;
  ordered_json cls = ordered_json::array();
  for (const auto& [v, c] : r.vector.entries()) cls.push_back({{"v", to_string(v)}, {"coeff", c.to_string("q")}});
  ordered_json j;
  j["n"] = r.w.rank();
  j["w"] = to_string(r.w);
  j["twist"] = to_string(r.twist);
  j["kind"] = to_string(r.kind);
  j["class"] = std::move(cls);
  j["components"] = r.components.to_string("q");
  j["path"] = to_string(r.path);
  return j.dump();
}

ClassReport class_report_from_json(std::string_view text) {
  using nlohmann::json;
  try {
    json j = json::parse(text);
    const int n = j.at("n").get<int>();
    ClassReport r;
    r.w = parse_permutation(j.at("w").get<std::string>(), n);
    r.twist = parse_twist(j.at("twist").get<std::string>());
    r.kind = parse_class_kind(j.at("kind").get<std::string>());
    r.path = j.contains("path") ? parse_class_path(j.at("path").get<std::string>()) : ClassPath::PairEnumeration;
    r.vector = SchubertVector(n, SchubertLabel::Cycle);
    for (const auto& e : j.at("class"))
      r.vector.add(parse_permutation(e.at("v").get<std::string>(), n), parse_qpoly(e.at("coeff").get<std::string>()));
    r.components = parse_qpoly(j.at("components").get<std::string>());
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed class record: ") + e.what());
  }
}

TransitionMatrix transition_matrix(int n, Twist twist, int jobs) {
  const auto& elems = all_elements(n);
  TransitionMatrix t;
  t.n = n;
  t.twist = twist;
  t.index = elems;
  t.entries.assign(elems.size(), std::vector<QPoly>(elems.size()));
  std::vector<SchubertVector> columns(elems.size());
  parallel_for(elems.size(), jobs, [&](std::size_t col) { columns[col] = class_X(elems[col], twist); });
  for (std::size_t col = 0; col < elems.size(); ++col)
    for (const auto& [v, c] : columns[col].entries()) t.entries[w_order_index(v)][col] = c;

  // classes of length l only involve cycles of length l, so the determinant
  // is the product of the diagonal blocks
  t.det = QPoly(1);
  std::size_t begin = 0;
  while (begin < elems.size()) {
    std::size_t end = begin;
    while (end < elems.size() && elems[end].length() == elems[begin].length()) ++end;
    std::vector<std::vector<QPoly>> block(end - begin, std::vector<QPoly>(end - begin));
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = begin; j < end; ++j) block[i - begin][j - begin] = t.entries[i][j];
    t.det *= determinant(std::move(block));
    begin = end;
  }
  return t;
}

QPoly determinant(std::vector<std::vector<QPoly>> m) {
  const std::size_t size = m.size();
  if (size == 0) return QPoly(1);
  QPoly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < size && m[p][k].is_zero()) ++p;
      if (p == size) return QPoly();
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j)
        m[i][j] = divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = QPoly();
    }
    prev = m[k][k];
  }
  QPoly det = m[size - 1][size - 1];
  return negate ? -det : det;
}

CyclotomicFactorization factor_cyclotomic(const QPoly& p, int max_d) {
  if (p.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
  if (p.has_negative_exponents()) throw std::domain_error("cannot factor a Laurent polynomial");
  CyclotomicFactorization f;
  f.q_power = p.low_degree();
  QPoly rest = p.shifted(-f.q_power);
  for (int d = 1; d <= max_d; ++d) {
    int mult = 0;
    for (;;) {
      auto [quot, rem] = divide(rest, cyclotomic(d));
      if (!rem.is_zero()) break;
      rest = quot;
      ++mult;
    }
    if (mult > 0) f.factors.emplace_back(d, mult);
  }
  f.unit = rest.leading_data().coeff;
  f.rest = rest.scaled(Rational(1) / f.unit);
  return f;
}

std::string to_string(const CyclotomicFactorization& f) {
  std::vector<std::string> parts;
  Rational mag = f.unit.sign() < 0 ? -f.unit : f.unit;
  if (!mag.is_one()) parts.push_back(mag.to_string());
  if (f.q_power == 1) parts.emplace_back("q");
  else if (f.q_power > 1) parts.push_back("q^" + std::to_string(f.q_power));
  for (const auto& [d, mult] : f.factors) {
    std::string s = "(" + cyclotomic(d).to_string("q") + ")";
    if (mult > 1) s += "^" + std::to_string(mult);
    parts.push_back(s);
  }
  if (!f.rest.is_constant()) parts.push_back("(" + f.rest.to_string("q") + ")");
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) out += "*" + parts[k];
  return out;
}

std::string to_string(EqualityReason r) {
  switch (r) {
  case EqualityReason::Inverse: return "inverse";
  case EqualityReason::DisjointSupport: return "disjoint-support";
  case EqualityReason::Mixed: return "mixed";
  case EqualityReason::Exceptional: return "exceptional";
  }
  return "?";
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t components;
  explicit UnionFind(std::size_t size) : parent(size), components(size) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent[a] = b;
    --components;
  }
};

} // namespace

EqualityReason classify_group(const std::vector<Permutation>& members) {
  if (members.size() < 2) throw std::invalid_argument("a group needs at least two members");
  const int n = members[0].rank();
  std::map<Permutation, std::size_t, WOrder> position;
  for (std::size_t k = 0; k < members.size(); ++k) position.emplace(members[k], k);

  UnionFind by_inverse(members.size()), by_exchange(members.size()), by_both(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Permutation& w = members[k];
    if (auto it = position.find(w.inverse()); it != position.end()) {
      by_inverse.unite(k, it->second);
      by_both.unite(k, it->second);
    }
    const SimpleSet supp = support(w);
    for (const auto& a : all_elements(n)) {
      if (a.is_identity() || !support(a).subset_of(supp)) continue;
      Permutation b = a.inverse() * w;
      if (b.is_identity() || !support(a).disjoint_from(support(b))) continue;
      if (auto it = position.find(b * a); it != position.end()) {
        by_exchange.unite(k, it->second);
        by_both.unite(k, it->second);
      }
    }
  }
  if (by_inverse.components == 1) return EqualityReason::Inverse;
  if (by_exchange.components == 1) return EqualityReason::DisjointSupport;
  if (by_both.components == 1) return EqualityReason::Mixed;
  return EqualityReason::Exceptional;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& f) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) f(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < count;) {
      try {
        f(k);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> threads;
  const auto workers = static_cast<std::size_t>(jobs) < count ? static_cast<std::size_t>(jobs) : count;
  for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<EqualityGroup> equality_classes(int n, const std::function<void(const EqualityGroup&)>& on_group,
                                            int jobs) {
  const auto& elems = all_elements(n);
  std::vector<EqualityGroup> groups;
  std::size_t begin = 0;
  while (begin < elems.size()) {
    std::size_t end = begin;
    while (end < elems.size() && elems[end].length() == elems[begin].length()) ++end;

    std::vector<SchubertVector> classes(end - begin);
    parallel_for(end - begin, jobs, [&](std::size_t k) { classes[k] = class_Y_ss(elems[begin + k]); });

    // buckets keyed by the canonical rendering, first member order preserved
    std::map<std::string, std::size_t> bucket_of;
    std::vector<std::vector<std::size_t>> buckets;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      auto [it, inserted] = bucket_of.try_emplace(classes[k].to_string(), buckets.size());
      if (inserted) buckets.emplace_back();
      buckets[it->second].push_back(k);
    }
    for (const auto& bucket : buckets) {
      if (bucket.size() < 2) continue;
      EqualityGroup g;
      for (std::size_t k : bucket) g.members.push_back(elems[begin + k]);
      g.reason = classify_group(g.members);
      g.cls = classes[bucket[0]];
      if (on_group) on_group(g);
      groups.push_back(std::move(g));
    }
    begin = end;
  }
  return groups;
}

} // namespace dlchow
