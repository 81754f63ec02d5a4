#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "dlchow/schubert.hpp"
#include "dlchow/structure_cache.hpp"

using namespace dlchow;

namespace {

MultiPoly X(int i) { return MultiPoly::variable(xvar(i)); }
MultiPoly Y(int i) { return MultiPoly::variable(yvar(i)); }
MultiPoly Q() { return MultiPoly::variable(qvar()); }
Permutation P(int n, std::string_view s) { return parse_permutation(s, n); }

class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("dlchow-test-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

void write_lines(const std::filesystem::path& p, const std::vector<std::string>& lines) {
  std::ofstream out(p, std::ios::trunc);
  for (const auto& l : lines) out << l << '\n';
}

SchubertVector single(const Permutation& w) {
  SchubertVector v(w.rank());
  v.add(w, QPoly(1));
  return v;
}

} // namespace

TEST(SchubertPoly, TableForS3) {
  EXPECT_EQ(schubert_poly(Permutation(3)), MultiPoly(1));
  EXPECT_EQ(schubert_poly(P(3, "s1")), X(1));
  EXPECT_EQ(schubert_poly(P(3, "s2")), X(1) + X(2));
  EXPECT_EQ(schubert_poly(P(3, "s1 s2")), X(1) * X(2));
  EXPECT_EQ(schubert_poly(P(3, "s2 s1")), X(1) * X(1));
  EXPECT_EQ(schubert_poly(P(3, "s1 s2 s1")), X(1) * X(1) * X(2));
  EXPECT_EQ(staircase(3), X(1) * X(1) * X(2));
}

TEST(SchubertPoly, DividedDifferencesLowerTheIndex) {
  for (const auto& w : all_elements(4))
    for (int i = 1; i < 4; ++i) {
      MultiPoly d = divided_difference(i, schubert_poly(w));
      if (w.right_descent(i)) {
        EXPECT_EQ(d, schubert_poly(w * Permutation::simple(4, i)));
      } else {
        EXPECT_TRUE(d.is_zero());
      }
    }
}

TEST(SchubertPoly, HomogeneousOfDegreeLength) {
  for (const auto& w : all_elements(5)) {
    const MultiPoly& s = schubert_poly(w);
    for (const auto& [m, c] : s.terms()) {
      EXPECT_EQ(m.degree(), w.length());
      EXPECT_GT(c, Rational(0)); // positive coefficients
    }
  }
}

TEST(SchubertPoly, DividedDifferenceWordReachesIdentity) {
  for (const auto& w : all_elements(4)) EXPECT_EQ(divided_difference_word(w, schubert_poly(w)), MultiPoly(1));
}

TEST(SchubertPoly, DoubleSchubertOfLongestIsStaircaseProduct) {
  EXPECT_EQ(double_schubert_w0(2, MultiPoly(1)), X(1) - Y(1));
  MultiPoly expected = (X(1) - Y(1)) * (X(1) - Y(2)) * (X(2) - Y(1));
  EXPECT_EQ(double_schubert_w0(3, MultiPoly(1)), expected);
  EXPECT_EQ(omega_y(Y(1) + Y(2) * Y(2), 3), -Y(3) + Y(2) * Y(2));
  EXPECT_EQ(rename_bank(X(1) * X(2), Bank::X, Bank::Y), Y(1) * Y(2));
}

TEST(SchubertExpand, InvertsSchubertPolyOnS4) {
  for (const auto& w : all_elements(4)) EXPECT_EQ(expand_in_schubert_basis(schubert_poly(w), 4), single(w));
}

TEST(SchubertExpand, RandomCombinationsAndIdealElements) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coeff(-3, 3);
  const auto& els = all_elements(4);
  for (int trial = 0; trial < 20; ++trial) {
    SchubertVector expected(4);
    MultiPoly f;
    for (const auto& w : els) {
      int c = coeff(rng);
      if (c == 0) continue;
      expected.add(w, QPoly(c));
      f += schubert_poly(w).scaled(Rational(c));
    }
    // Adding an element of the ideal must not change the expansion.
    MultiPoly e1 = X(1) + X(2) + X(3) + X(4);
    MultiPoly g = f + e1 * X(2) * X(3);
    EXPECT_EQ(expand_in_schubert_basis(g, 4), expected);
    EXPECT_EQ(reduce_mod_coinvariant_ideal(g - f, 4), MultiPoly());
  }
}

TEST(SchubertExpand, CoinvariantIdealMembership) {
  MultiPoly e2 = X(1) * X(2) + X(1) * X(3) + X(2) * X(3);
  EXPECT_TRUE(in_coinvariant_ideal(e2, 3));
  EXPECT_TRUE(in_coinvariant_ideal(X(1) * X(1) * X(1), 3));
  EXPECT_FALSE(in_coinvariant_ideal(X(1), 3));
  EXPECT_FALSE(in_coinvariant_ideal(X(1) * X(1) * X(2), 3));
  // Top degree of the coinvariant ring is l(w0); everything above vanishes.
  EXPECT_TRUE(in_coinvariant_ideal(X(1) * X(1) * X(2) * X(2), 3));
}

TEST(SchubertExpand, RejectsForeignVariables) {
  EXPECT_THROW(expand_in_schubert_basis(X(1) * Y(1), 3), std::invalid_argument);
  EXPECT_THROW(expand_in_schubert_basis(X(4), 3), std::invalid_argument);
}

TEST(SchubertProduct, MatchesDirectExpansionAndCommutes) {
  const int n = 4;
  for (const auto& u : all_elements(n))
    for (const auto& v : all_elements(n)) {
      SchubertVector p = schubert_product(u, v);
      EXPECT_EQ(p, schubert_product(v, u));
      EXPECT_EQ(p, expand_in_schubert_basis(schubert_poly(u) * schubert_poly(v), n));
      EXPECT_TRUE(p.has_nonnegative_coefficients());
      if (!p.is_zero()) {
        EXPECT_EQ(p.homogeneous_length(), u.length() + v.length());
      }
    }
  EXPECT_EQ(schubert_product(Permutation(3), P(3, "s1")), single(P(3, "s1")));
}

TEST(SchubertProduct, PoincareDuality) {
  // S_u S_v has [w0]-coefficient 1 exactly when v = w0 u.
  const int n = 4;
  Permutation w0 = Permutation::longest(n);
  for (const auto& u : all_elements(n))
    for (const auto& v : all_elements(n)) {
      if (u.length() + v.length() != w0.length()) continue;
      QPoly c = schubert_product(u, v).coeff(w0);
      EXPECT_EQ(c, v == w0 * u ? QPoly(1) : QPoly());
    }
}

TEST(SchubertVector, TextAndRelabeling) {
  SchubertVector v(3, SchubertLabel::Cycle);
  v.add(P(3, "s1 s2"), parse_qpoly("q"));
  v.add(P(3, "s2 s1"), QPoly(1));
  EXPECT_EQ(v.to_string(), "q*[s1 s2] + [s2 s1]");
  EXPECT_EQ(v.relabeled(SchubertLabel::Polynomial).relabeled(SchubertLabel::Cycle), v);
  EXPECT_EQ(v.relabeled(SchubertLabel::Polynomial).coeff(P(3, "s1")), parse_qpoly("q"));
  EXPECT_EQ(v.evaluated(Rational(2)).coeff(P(3, "s1 s2")), QPoly(2));
  EXPECT_EQ(v.homogeneous_length(), 2);
  v.add(P(3, "s1 s2"), parse_qpoly("-q"));
  EXPECT_EQ(v.entries().size(), 1U);
  EXPECT_THROW(v.add(Permutation(2), QPoly(1)), std::invalid_argument);
  EXPECT_EQ(single(P(3, "s2")).to_string(), "S[s2]");
}

TEST(StructureCache, FreshFileGetsHeaderAndRecords) {
  TempDir dir;
  auto file = StructureCache::file_for(dir.path(), 3);
  EXPECT_EQ(file.filename(), "schubert-n3.jsonl");
  {
    StructureCache c(3, file);
    EXPECT_FALSE(c.load_report().corruption_detected);
    c.insert(P(3, "s1"), P(3, "s2"), compute_schubert_product(P(3, "s1"), P(3, "s2")));
    c.insert(P(3, "s2"), P(3, "s1"), compute_schubert_product(P(3, "s1"), P(3, "s2"))); // same key
    EXPECT_EQ(c.size(), 1U);
  }
  auto lines = read_lines(file);
  ASSERT_EQ(lines.size(), 2U);
  EXPECT_NE(lines[0].find("dlchow-cache"), std::string::npos);

  StructureCache reloaded(3, file);
  EXPECT_EQ(reloaded.load_report().records, 1U);
  EXPECT_EQ(reloaded.lookup(P(3, "s2"), P(3, "s1")), compute_schubert_product(P(3, "s1"), P(3, "s2")));
  EXPECT_FALSE(reloaded.lookup(P(3, "s1"), P(3, "s1")).has_value());
}

TEST(StructureCache, CorruptLineDiscardsTheRest) {
  TempDir dir;
  auto file = StructureCache::file_for(dir.path(), 3);
  {
    StructureCache c(3, file);
    c.insert(P(3, "s1"), P(3, "s1"), compute_schubert_product(P(3, "s1"), P(3, "s1")));
    c.insert(P(3, "s1"), P(3, "s2"), compute_schubert_product(P(3, "s1"), P(3, "s2")));
  }
  auto lines = read_lines(file);
  ASSERT_EQ(lines.size(), 3U);
  write_lines(file, {lines[0], lines[1], "{\"u\":\"s1\",", lines[2]});

  StructureCache c(3, file);
  EXPECT_TRUE(c.load_report().corruption_detected);
  EXPECT_EQ(c.load_report().records, 1U);
  EXPECT_EQ(c.load_report().discarded_lines, 2U);
  EXPECT_EQ(read_lines(file).size(), 2U); // rewritten without the bad tail

  StructureCache again(3, file);
  EXPECT_FALSE(again.load_report().corruption_detected);
}

TEST(StructureCache, RejectsNonPositiveCoefficients) {
  TempDir dir;
  auto file = StructureCache::file_for(dir.path(), 3);
  { StructureCache c(3, file); }
  auto header = read_lines(file).at(0);
  write_lines(file, {header, R"({"u":"s1","v":"s1","expansion":[["s2 s1","-1"]]})"});
  StructureCache c(3, file);
  EXPECT_TRUE(c.load_report().corruption_detected);
  EXPECT_EQ(c.size(), 0U);
}

TEST(StructureCache, BadHeaderRebuildsFile) {
  TempDir dir;
  auto file = StructureCache::file_for(dir.path(), 3);
  write_lines(file, {R"({"format":"dlchow-cache","version":1,"n":4})", R"({"u":"s1","v":"s1","expansion":[]})"});
  StructureCache c(3, file);
  EXPECT_TRUE(c.load_report().header_rebuilt);
  EXPECT_EQ(c.load_report().discarded_lines, 2U);
  EXPECT_EQ(c.size(), 0U);
  EXPECT_EQ(read_lines(file).size(), 1U);
}

TEST(StructureCache, CompactionDeduplicatesAppendedRecords) {
  TempDir dir;
  auto file = StructureCache::file_for(dir.path(), 3);
  { StructureCache c(3, file); }
  auto header = read_lines(file).at(0);
  std::string rec = R"({"u":"s1","v":"s1","expansion":[["s2 s1","1"]]})";
  write_lines(file, {header, rec, rec});
  {
    StructureCache c(3, file);
    EXPECT_FALSE(c.load_report().corruption_detected);
    EXPECT_EQ(c.size(), 1U);
    c.compact();
    EXPECT_EQ(read_lines(file).size(), 2U);
  }
}

TEST(StructureCache, ConcurrentInsertsAreAllPersisted) {
  TempDir dir;
  auto file = StructureCache::file_for(dir.path(), 4);
  const auto& els = all_elements(4);
  {
    StructureCache c(4, file);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
      threads.emplace_back([&, t] {
        for (std::size_t k = t; k < els.size(); k += 4) c.insert(els[k], els[1], compute_schubert_product(els[k], els[1]));
      });
    for (auto& th : threads) th.join();
    EXPECT_EQ(c.size(), els.size());
  }
  StructureCache reloaded(4, file);
  EXPECT_FALSE(reloaded.load_report().corruption_detected);
  EXPECT_EQ(reloaded.size(), els.size());
}

TEST(StructureCache, RegistryServesProductsFromDisk) {
  TempDir dir;
  CacheRegistry& reg = CacheRegistry::instance();
  reg.reset();
  reg.set_directory(dir.path());
  SchubertVector p = schubert_product(P(3, "s1"), P(3, "s2"));
  EXPECT_EQ(reg.cache(3).size(), 1U);
  ASSERT_EQ(reg.reports().size(), 1U);
  reg.reset();
  EXPECT_EQ(read_lines(StructureCache::file_for(dir.path(), 3)).size(), 2U);
  EXPECT_EQ(schubert_product(P(3, "s2"), P(3, "s1")), p);
  reg.reset();
  reg.clear_directory();
}

TEST(SchubertPoly, StaircaseAndScaledDoubleSchubert) {
  EXPECT_EQ(staircase(2), X(1));
  EXPECT_EQ(staircase(4), X(1).pow(3) * X(2).pow(2) * X(3));
  EXPECT_EQ(double_schubert_w0(4, MultiPoly()), staircase(4));
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(schubert_poly(Permutation::simple(std::max(n, 2), 1)), X(1));
}

TEST(SchubertPoly, DividedDifferenceExamples) {
  EXPECT_EQ(divided_difference(1, X(1) * X(2)), MultiPoly());
  EXPECT_EQ(divided_difference(1, X(1) * X(1) * X(2)), X(1) * X(2));
  // S[s2 s1] = x1^2 and S[s1 s2] = x1 x2
  EXPECT_EQ(divided_difference_word(P(3, "s1"), schubert_poly(P(3, "s2 s1"))), schubert_poly(P(3, "s2")));
  EXPECT_EQ(divided_difference_word(P(3, "s1"), schubert_poly(P(3, "s1 s2"))), MultiPoly());
  EXPECT_EQ(divided_difference_word(P(3, "s2"), schubert_poly(P(3, "s1 s2"))), schubert_poly(P(3, "s1")));
  EXPECT_EQ(divided_difference_word(Permutation::longest(4), staircase(4)), MultiPoly(1));
  // Degree drops by l(w), so lower-degree inputs vanish.
  EXPECT_EQ(divided_difference_word(P(4, "s1 s2 s3"), X(1) * X(2) + X(3) * X(3)), MultiPoly());
}

TEST(SchubertPoly, DividedDifferenceCommutation) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
  for (int trial = 0; trial < 10; ++trial) {
    MultiPoly f;
    for (int t = 0; t < 5; ++t) {
      Monomial m;
      for (int i = 1; i <= 4; ++i) m.set_exponent(xvar(i), e(rng));
      f += MultiPoly::term(m, Rational(c(rng)));
    }
    EXPECT_EQ(divided_difference(1, divided_difference(3, f)), divided_difference(3, divided_difference(1, f)));
  }
}

TEST(SchubertPoly, DividedDifferenceWordIsWordIndependent) {
  // Apply the operators along every reduced word, last letter first.
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 3);
  for (const auto& w : all_elements(4)) {
    MultiPoly f;
    for (int t = 0; t < 6; ++t) {
      Monomial m;
      for (int i = 1; i <= 4; ++i) m.set_exponent(xvar(i), e(rng));
      f += MultiPoly::term(m, Rational(c(rng)));
    }
    MultiPoly expected = divided_difference_word(w, f);
    std::vector<std::pair<Permutation, std::vector<int>>> stack{{w, {}}};
    while (!stack.empty()) {
      auto [cur, word] = stack.back();
      stack.pop_back();
      if (cur.is_identity()) {
        MultiPoly g = f;
        for (auto it = word.rbegin(); it != word.rend(); ++it) g = divided_difference(*it, g);
        EXPECT_EQ(g, expected) << to_string(w);
        continue;
      }
      for (int i = 1; i < 4; ++i)
        if (cur.left_descent(i)) {
          auto next = word;
          next.push_back(i);
          stack.push_back({Permutation::simple(4, i) * cur, next});
        }
    }
  }
}

TEST(SchubertPoly, DividedDifferenceWordLowersSchubertIndex) {
  const int n = 4;
  for (const auto& w : all_elements(n))
    for (const auto& v : all_elements(n)) {
      Permutation r = v * w.inverse();
      MultiPoly expected = r.length() == v.length() - w.length() ? schubert_poly(r) : MultiPoly();
      EXPECT_EQ(divided_difference_word(w, schubert_poly(v)), expected);
    }
}

TEST(SchubertPoly, OmegaYIsAnInvolution) {
  MultiPoly f = Y(1) * Y(1) * Y(2) - Y(3) * X(2) + Q() * Y(1);
  EXPECT_EQ(omega_y(omega_y(f, 3), 3), f);
  EXPECT_EQ(omega_y(Y(1), 2), -Y(2));
  // omega_y(S_s1(y)) and S_s2(y) agree modulo the ideal.
  MultiPoly a = rename_bank(omega_y(Y(1), 3), Bank::Y, Bank::X);
  MultiPoly b = rename_bank(Y(1) + Y(2), Bank::Y, Bank::X);
  EXPECT_EQ(expand_in_schubert_basis(a, 3), expand_in_schubert_basis(b, 3));
}

TEST(SchubertExpand, SmallExamples) {
  EXPECT_EQ(expand_in_schubert_basis(MultiPoly(1), 3), single(Permutation(3)));
  EXPECT_EQ(expand_in_schubert_basis(X(1) * X(1), 3), single(Permutation::from_window({3, 1, 2})));
  SchubertVector both = single(Permutation::from_window({3, 1, 2}));
  both.add(Permutation::from_window({2, 3, 1}), QPoly(1));
  EXPECT_EQ(expand_in_schubert_basis(X(1) * (X(1) + X(2)), 3), both);
  EXPECT_EQ(schubert_product(P(3, "s1"), P(3, "s1")), single(Permutation::from_window({3, 1, 2})));
}

TEST(SchubertExpand, InvertsSchubertPolyOnS5) {
  for (const auto& w : all_elements(5)) EXPECT_EQ(expand_in_schubert_basis(schubert_poly(w), 5), single(w));
}

TEST(SchubertProduct, NonnegativeOverS5) {
  const auto& els = all_elements(5);
  for (std::size_t a = 0; a < els.size(); ++a)
    for (std::size_t b = a; b < els.size(); ++b) {
      SchubertVector p = schubert_product(els[a], els[b]);
      EXPECT_TRUE(p.has_nonnegative_coefficients());
      EXPECT_TRUE(p.has_integer_coefficients());
    }
}

TEST(SchubertPoly, CauchyIdentity) {
  for (int n = 2; n <= 4; ++n) {
    // S_w0(x; -y) = sum_w S_w(x) S_{w w0}(y)
    MultiPoly lhs = double_schubert_w0(n, MultiPoly(-1));
    MultiPoly rhs;
    Permutation w0 = Permutation::longest(n);
    for (const auto& w : all_elements(n))
      rhs += schubert_poly(w) * rename_bank(schubert_poly(w * w0), Bank::X, Bank::Y);
    EXPECT_EQ(lhs, rhs) << n;
  }
}
